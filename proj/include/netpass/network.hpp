#pragma once

#include <vector>

#include <Eigen/Dense>

#include "netpass/graph.hpp"
#include "netpass/models.hpp"

namespace netpass {

/// Interconnection variants.
///   Undirected:         u = -E mu,   zeta = E^T y (diffusive coupling)
///   DirectedOut:        u = -B_o mu, zeta = E^T y
///   DecomposedDirected: same u, additionally exposing w = B_i mu and
///                       z = E mu with u = w - z.
enum class CouplingMode { Undirected, DirectedOut, DecomposedDirected };

struct Signals {
  Eigen::VectorXd u;     // agent inputs (n)
  Eigen::VectorXd y;     // agent outputs (n)
  Eigen::VectorXd zeta;  // controller inputs (m)
  Eigen::VectorXd mu;    // controller outputs (m)
  Eigen::VectorXd w;     // B_i mu (n), DecomposedDirected only
  Eigen::VectorXd z;     // E mu (n), DecomposedDirected only
};

/// Agents on vertices, controllers on edges, combined state laid out as
/// agent states in vertex order followed by controller states in edge order.
class NetworkSystem {
 public:
  NetworkSystem(Digraph graph, std::vector<AgentModel> agents,
                std::vector<ControllerModel> controllers, CouplingMode mode);

  const Digraph& graph() const { return graph_; }
  const IncidenceSet& incidence() const { return inc_; }
  const std::vector<AgentModel>& agents() const { return agents_; }
  const std::vector<ControllerModel>& controllers() const {
    return controllers_;
  }
  CouplingMode mode() const { return mode_; }

  int n_agents() const { return static_cast<int>(agents_.size()); }
  int n_controllers() const { return static_cast<int>(controllers_.size()); }
  int state_dim() const { return state_dim_; }

  Eigen::VectorXd agent_state(const Eigen::VectorXd& combined, int i) const;
  Eigen::VectorXd controller_state(const Eigen::VectorXd& combined,
                                   int k) const;

  Signals signal_map(const Eigen::VectorXd& combined_state) const;
  Eigen::VectorXd vector_field(const Eigen::VectorXd& combined_state) const;

 private:
  Digraph graph_;
  IncidenceSet inc_;
  std::vector<AgentModel> agents_;
  std::vector<ControllerModel> controllers_;
  CouplingMode mode_;
  int state_dim_ = 0;
  std::vector<int> agent_offset_;
  std::vector<int> controller_offset_;
};

NetworkSystem assemble(const Digraph& g, std::vector<AgentModel> agents,
                       std::vector<ControllerModel> controllers,
                       CouplingMode mode);

}  // namespace netpass
