#include "netpass/network.hpp"

#include <cmath>
#include <stdexcept>

namespace netpass {

NetworkSystem::NetworkSystem(Digraph graph, std::vector<AgentModel> agents,
                             std::vector<ControllerModel> controllers,
                             CouplingMode mode)
    : graph_(std::move(graph)),
      inc_(build_incidence(graph_)),
      agents_(std::move(agents)),
      controllers_(std::move(controllers)),
      mode_(mode) {
  if (static_cast<int>(agents_.size()) != graph_.n_vertices()) {
    throw std::invalid_argument(
        "NetworkSystem: need one agent per vertex, got " +
        std::to_string(agents_.size()) + " for " +
        std::to_string(graph_.n_vertices()) + " vertices");
  }
  if (static_cast<int>(controllers_.size()) != graph_.n_edges()) {
    throw std::invalid_argument(
        "NetworkSystem: need one controller per edge, got " +
        std::to_string(controllers_.size()) + " for " +
        std::to_string(graph_.n_edges()) + " edges");
  }
  for (const auto& a : agents_) {
    if (!a.f || !a.h || a.state_dim < 0) {
      throw std::invalid_argument("NetworkSystem: malformed agent model");
    }
  }
  for (const auto& c : controllers_) {
    if (!c.psi || c.state_dim < 0) {
      throw std::invalid_argument("NetworkSystem: malformed controller model");
    }
  }
  for (const auto& a : agents_) {
    agent_offset_.push_back(state_dim_);
    state_dim_ += a.state_dim;
  }
  for (const auto& c : controllers_) {
    controller_offset_.push_back(state_dim_);
    state_dim_ += c.state_dim;
  }
}

NetworkSystem assemble(const Digraph& g, std::vector<AgentModel> agents,
                       std::vector<ControllerModel> controllers,
                       CouplingMode mode) {
  return NetworkSystem(g, std::move(agents), std::move(controllers), mode);
}

Eigen::VectorXd NetworkSystem::agent_state(const Eigen::VectorXd& combined,
                                           int i) const {
  return combined.segment(agent_offset_[i], agents_[i].state_dim);
}

Eigen::VectorXd NetworkSystem::controller_state(const Eigen::VectorXd& combined,
                                                int k) const {
  return combined.segment(controller_offset_[k], controllers_[k].state_dim);
}

Signals NetworkSystem::signal_map(const Eigen::VectorXd& combined) const {
  if (combined.size() != state_dim_) {
    throw std::invalid_argument("signal_map: state dimension mismatch");
  }
  const int n = n_agents();
  const int m = n_controllers();
  Signals s;

  // Evaluation order y -> zeta -> mu -> u; well-defined because agent
  // outputs carry no feedthrough.
  s.y.resize(n);
  for (int i = 0; i < n; ++i) {
    s.y(i) = agents_[i].h(agent_state(combined, i));
    if (!std::isfinite(s.y(i))) {
      throw std::runtime_error("signal_map: non-finite output from agent " +
                               std::to_string(i + 1));
    }
  }
  s.zeta = inc_.E_d().transpose() * s.y;
  s.mu.resize(m);
  for (int k = 0; k < m; ++k) {
    s.mu(k) = controllers_[k].psi(controller_state(combined, k), s.zeta(k));
    if (!std::isfinite(s.mu(k))) {
      throw std::runtime_error(
          "signal_map: non-finite output from controller " +
          std::to_string(k + 1));
    }
  }
  switch (mode_) {
    case CouplingMode::Undirected:
      s.u = -(inc_.E_d() * s.mu);
      break;
    case CouplingMode::DirectedOut:
      s.u = -(inc_.B_o_d() * s.mu);
      break;
    case CouplingMode::DecomposedDirected:
      s.w = inc_.B_i_d() * s.mu;
      s.z = inc_.E_d() * s.mu;
      s.u = -(inc_.B_o_d() * s.mu);
      break;
  }
  return s;
}

Eigen::VectorXd NetworkSystem::vector_field(
    const Eigen::VectorXd& combined) const {
  const Signals s = signal_map(combined);
  Eigen::VectorXd dxdt(state_dim_);
  for (int i = 0; i < n_agents(); ++i) {
    const Eigen::VectorXd d = agents_[i].f(agent_state(combined, i), s.u(i));
    if (!d.allFinite()) {
      throw std::runtime_error("vector_field: non-finite derivative at agent " +
                               std::to_string(i + 1));
    }
    dxdt.segment(agent_offset_[i], agents_[i].state_dim) = d;
  }
  for (int k = 0; k < n_controllers(); ++k) {
    if (controllers_[k].state_dim == 0) continue;
    const Eigen::VectorXd d =
        controllers_[k].phi(controller_state(combined, k), s.zeta(k));
    if (!d.allFinite()) {
      throw std::runtime_error(
          "vector_field: non-finite derivative at controller " +
          std::to_string(k + 1));
    }
    dxdt.segment(controller_offset_[k], controllers_[k].state_dim) = d;
  }
  return dxdt;
}

}  // namespace netpass
