#pragma once

#include <cstdint>
#include <random>

#include "netpass/graph.hpp"

namespace netpass {

/// Seeded Erdos-Renyi directed graph generator used by the proposition
/// property suites. Edge probability is drawn from {0.3, 0.5, 0.7} per
/// graph; samples are rejected until a globally reachable node exists.
class RandomDigraphGen {
 public:
  explicit RandomDigraphGen(std::uint64_t seed, int n_max = 8)
      : rng_(seed), n_max_(n_max) {
    if (n_max < 2) {
      throw std::invalid_argument("RandomDigraphGen: n_max must be >= 2");
    }
  }

  /// Next digraph with at least one globally reachable node.
  Digraph next_reachable();

  /// Next digraph with no reachability constraint.
  Digraph next_unconstrained();

 private:
  Digraph sample();

  std::mt19937_64 rng_;
  int n_max_;
};

}  // namespace netpass
