#include "netpass/graph.hpp"

#include <algorithm>
#include <queue>

namespace netpass {

Digraph::Digraph(int n_vertices, std::vector<std::pair<int, int>> edges)
    : n_(n_vertices), edges_(std::move(edges)) {
  if (n_ < 1) {
    throw std::invalid_argument("Digraph: n_vertices must be positive");
  }
  std::set<std::pair<int, int>> seen;
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const auto& [s, t] = edges_[k];
    if (s < 1 || s > n_ || t < 1 || t > n_) {
      throw std::invalid_argument("Digraph: edge " + std::to_string(k + 1) +
                                  " has an out-of-range endpoint");
    }
    if (s == t) {
      throw std::invalid_argument("Digraph: edge " + std::to_string(k + 1) +
                                  " is a self-loop");
    }
    if (!seen.insert({s, t}).second) {
      throw std::invalid_argument("Digraph: edge " + std::to_string(k + 1) +
                                  " duplicates an earlier edge");
    }
  }
}

IncidenceSet build_incidence(const Digraph& g) {
  const int n = g.n_vertices();
  const int m = g.n_edges();
  IncidenceSet inc;
  inc.E = Eigen::MatrixXi::Zero(n, m);
  inc.B_o = Eigen::MatrixXi::Zero(n, m);
  inc.B_i = Eigen::MatrixXi::Zero(n, m);
  for (int k = 0; k < m; ++k) {
    const auto& [s, t] = g.edges()[k];
    inc.E(s - 1, k) = 1;
    inc.E(t - 1, k) = -1;
    inc.B_o(s - 1, k) = 1;
    inc.B_i(t - 1, k) = -1;
  }
  inc.L_o = inc.B_o * inc.E.transpose();
  inc.L_i = -inc.B_i * inc.E.transpose();
  inc.L = inc.E * inc.E.transpose();
  return inc;
}

bool is_balanced(const IncidenceSet& inc) {
  const Eigen::VectorXi col = inc.E.colwise().sum();  // E^T 1
  const Eigen::VectorXi row = inc.E.rowwise().sum();  // E 1
  return col.isZero(0) && row.isZero(0);
}

namespace {

// Visits every vertex reachable from `start` along the given adjacency.
std::vector<bool> bfs(const std::vector<std::vector<int>>& adj, int start) {
  std::vector<bool> visited(adj.size(), false);
  std::queue<int> q;
  visited[start] = true;
  q.push(start);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int u : adj[v]) {
      if (!visited[u]) {
        visited[u] = true;
        q.push(u);
      }
    }
  }
  return visited;
}

}  // namespace

std::set<int> globally_reachable_nodes(const Digraph& g) {
  const int n = g.n_vertices();
  std::vector<std::vector<int>> rev(n);
  for (const auto& [s, t] : g.edges()) {
    rev[t - 1].push_back(s - 1);
  }
  std::set<int> result;
  for (int v = 0; v < n; ++v) {
    const auto visited = bfs(rev, v);
    if (std::all_of(visited.begin(), visited.end(), [](bool b) { return b; })) {
      result.insert(v + 1);
    }
  }
  return result;
}

GraphReport graph_report(const Digraph& g) {
  GraphReport rep;
  const IncidenceSet inc = build_incidence(g);
  rep.balanced = is_balanced(inc);
  rep.globally_reachable_nodes = globally_reachable_nodes(g);

  const int n = g.n_vertices();
  std::vector<int> out_deg(n, 0), in_deg(n, 0);
  for (const auto& [s, t] : g.edges()) {
    ++out_deg[s - 1];
    ++in_deg[t - 1];
  }
  rep.max_out_degree = *std::max_element(out_deg.begin(), out_deg.end());
  rep.max_in_degree = *std::max_element(in_deg.begin(), in_deg.end());

  // Strongly connected iff every vertex is globally reachable.
  rep.strongly_connected =
      static_cast<int>(rep.globally_reachable_nodes.size()) == n;
  return rep;
}

}  // namespace netpass
