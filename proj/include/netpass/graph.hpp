#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace netpass {

/// Simple directed graph. Vertices are 1-based in the public interface;
/// self-loops and duplicate edges are rejected. Edge order is stable and
/// defines the column order of every incidence matrix built from it.
class Digraph {
 public:
  Digraph(int n_vertices, std::vector<std::pair<int, int>> edges);

  int n_vertices() const { return n_; }
  int n_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

 private:
  int n_;
  std::vector<std::pair<int, int>> edges_;
};

/// Incidence decomposition E = B_o + B_i and the derived Laplacians.
/// All matrices are kept in integer arithmetic; promotion to double
/// happens at the spectral/simulation boundary.
struct IncidenceSet {
  Eigen::MatrixXi E;    // +1 at source row, -1 at target row
  Eigen::MatrixXi B_o;  // entries in {0, +1}
  Eigen::MatrixXi B_i;  // entries in {0, -1}
  Eigen::MatrixXi L_o;  // B_o * E^T
  Eigen::MatrixXi L_i;  // -B_i * E^T
  Eigen::MatrixXi L;    // E * E^T

  Eigen::MatrixXd E_d() const { return E.cast<double>(); }
  Eigen::MatrixXd B_o_d() const { return B_o.cast<double>(); }
  Eigen::MatrixXd B_i_d() const { return B_i.cast<double>(); }
  Eigen::MatrixXd L_o_d() const { return L_o.cast<double>(); }
};

struct GraphReport {
  bool balanced = false;
  std::set<int> globally_reachable_nodes;  // 1-based
  bool strongly_connected = false;
  int max_out_degree = 0;
  int max_in_degree = 0;
};

IncidenceSet build_incidence(const Digraph& g);

/// Exact integer check of E^T 1 = 0 and E 1 = 0.
bool is_balanced(const IncidenceSet& inc);

/// Vertices v such that a directed walk exists from every u != v to v.
/// Computed by breadth-first search on the reverse graph from each candidate.
std::set<int> globally_reachable_nodes(const Digraph& g);

GraphReport graph_report(const Digraph& g);

}  // namespace netpass
