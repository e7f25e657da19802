#pragma once

#include <functional>
#include <optional>
#include <string>

#include <Eigen/Dense>

namespace netpass {

/// Storage function V with its gradient, so V-dot along a trajectory can be
/// evaluated analytically as grad(V(x)) . xdot.
struct StorageFn {
  std::function<double(const Eigen::VectorXd&)> value;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> grad;
};

/// SISO agent of the no-feedthrough class: xdot = f(x, u), y = h(x).
/// The output map takes state only; feedthrough is unrepresentable here,
/// which rules out algebraic loops with feedthrough controllers.
struct AgentModel {
  std::string name;
  int state_dim = 0;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&, double)> f;
  std::function<double(const Eigen::VectorXd&)> h;
  std::optional<StorageFn> storage;
  std::optional<double> declared_op_index;  // epsilon
};

/// SISO edge controller: etadot = phi(eta, zeta), mu = psi(eta, zeta).
/// Feedthrough is allowed.
struct ControllerModel {
  std::string name;
  int state_dim = 0;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&, double)> phi;
  std::function<double(const Eigen::VectorXd&, double)> psi;
  std::optional<StorageFn> storage;
  std::optional<double> declared_op_index;  // alpha
};

/// xdot = u, y = x; storage x^2/2; passive but not strictly (epsilon 0).
AgentModel make_integrator();

/// xdot = -a x + u, y = tanh(x); storage ln(cosh(x)); OP-a.
AgentModel make_leaky_tanh_neuron(double a);

/// Static map mu = b zeta; storage 0; OP index 1/b per the dissipation
/// definition (zeta mu = (1/b) mu^2 identically).
ControllerModel make_static_gain(double b);

/// Static map mu = b max(zeta, 0); storage 0; OP index 1/b on the active
/// half-line and zero supply otherwise.
ControllerModel make_rectified_gain(double b);

/// Wrap user-supplied agent dynamics. The output map must be state-only.
AgentModel make_custom_agent(
    int state_dim,
    std::function<Eigen::VectorXd(const Eigen::VectorXd&, double)> f,
    std::function<double(const Eigen::VectorXd&)> h,
    std::optional<StorageFn> storage = std::nullopt,
    std::optional<double> declared_op_index = std::nullopt);

/// Overload for an output map with a feedthrough argument: always rejected.
AgentModel make_custom_agent(
    int state_dim,
    std::function<Eigen::VectorXd(const Eigen::VectorXd&, double)> f,
    std::function<double(const Eigen::VectorXd&, double)> h_with_feedthrough,
    std::optional<StorageFn> storage = std::nullopt,
    std::optional<double> declared_op_index = std::nullopt);

ControllerModel make_custom_controller(
    int state_dim,
    std::function<Eigen::VectorXd(const Eigen::VectorXd&, double)> phi,
    std::function<double(const Eigen::VectorXd&, double)> psi,
    std::optional<StorageFn> storage = std::nullopt,
    std::optional<double> declared_op_index = std::nullopt);

}  // namespace netpass
