#include "netpass/random_graph.hpp"

namespace netpass {

Digraph RandomDigraphGen::sample() {
  std::uniform_int_distribution<int> n_dist(2, n_max_);
  std::uniform_int_distribution<int> p_dist(0, 2);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  static constexpr double kProbs[] = {0.3, 0.5, 0.7};

  const int n = n_dist(rng_);
  const double p = kProbs[p_dist(rng_)];
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i != j && coin(rng_) < p) {
        edges.emplace_back(i, j);
      }
    }
  }
  return Digraph(n, std::move(edges));
}

Digraph RandomDigraphGen::next_unconstrained() { return sample(); }

Digraph RandomDigraphGen::next_reachable() {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Digraph g = sample();
    if (!globally_reachable_nodes(g).empty()) {
      return g;
    }
  }
  throw std::runtime_error(
      "RandomDigraphGen: failed to draw a graph with a globally reachable "
      "node");
}

}  // namespace netpass
