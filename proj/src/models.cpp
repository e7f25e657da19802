#include "netpass/models.hpp"

#include <cmath>
#include <stdexcept>

namespace netpass {

namespace {

// Overflow-safe ln(cosh(x)) = |x| + log1p(exp(-2|x|)) - ln 2.
double log_cosh(double x) {
  const double ax = std::abs(x);
  return ax + std::log1p(std::exp(-2.0 * ax)) - std::log(2.0);
}

Eigen::VectorXd scalar_vec(double v) {
  Eigen::VectorXd out(1);
  out(0) = v;
  return out;
}

}  // namespace

AgentModel make_integrator() {
  AgentModel m;
  m.name = "integrator";
  m.state_dim = 1;
  m.f = [](const Eigen::VectorXd&, double u) { return scalar_vec(u); };
  m.h = [](const Eigen::VectorXd& x) { return x(0); };
  m.storage = StorageFn{
      [](const Eigen::VectorXd& x) { return 0.5 * x(0) * x(0); },
      [](const Eigen::VectorXd& x) { return scalar_vec(x(0)); }};
  m.declared_op_index = 0.0;
  return m;
}

AgentModel make_leaky_tanh_neuron(double a) {
  if (a <= 0) {
    throw std::invalid_argument("make_leaky_tanh_neuron: a must be positive");
  }
  AgentModel m;
  m.name = "leaky_tanh";
  m.state_dim = 1;
  m.f = [a](const Eigen::VectorXd& x, double u) {
    return scalar_vec(-a * x(0) + u);
  };
  m.h = [](const Eigen::VectorXd& x) { return std::tanh(x(0)); };
  m.storage = StorageFn{
      [](const Eigen::VectorXd& x) { return log_cosh(x(0)); },
      [](const Eigen::VectorXd& x) { return scalar_vec(std::tanh(x(0))); }};
  m.declared_op_index = a;
  return m;
}

namespace {

ControllerModel make_static(const std::string& name, double b,
                            std::function<double(double)> map) {
  if (b <= 0) {
    throw std::invalid_argument(name + ": b must be positive");
  }
  ControllerModel c;
  c.name = name;
  c.state_dim = 0;
  c.phi = [](const Eigen::VectorXd&, double) { return Eigen::VectorXd(0); };
  c.psi = [map = std::move(map)](const Eigen::VectorXd&, double zeta) {
    return map(zeta);
  };
  c.storage = StorageFn{[](const Eigen::VectorXd&) { return 0.0; },
                        [](const Eigen::VectorXd&) {
                          return Eigen::VectorXd(0);
                        }};
  c.declared_op_index = 1.0 / b;
  return c;
}

}  // namespace

ControllerModel make_static_gain(double b) {
  return make_static("static_gain", b, [b](double z) { return b * z; });
}

ControllerModel make_rectified_gain(double b) {
  return make_static("rectified_gain", b,
                     [b](double z) { return b * std::max(z, 0.0); });
}

AgentModel make_custom_agent(
    int state_dim,
    std::function<Eigen::VectorXd(const Eigen::VectorXd&, double)> f,
    std::function<double(const Eigen::VectorXd&)> h,
    std::optional<StorageFn> storage, std::optional<double> declared_op_index) {
  if (state_dim < 0) {
    throw std::invalid_argument("make_custom_agent: negative state_dim");
  }
  if (!f || !h) {
    throw std::invalid_argument("make_custom_agent: f and h are required");
  }
  if (declared_op_index && *declared_op_index < 0) {
    throw std::invalid_argument("make_custom_agent: negative passivity index");
  }
  AgentModel m;
  m.name = "custom";
  m.state_dim = state_dim;
  m.f = std::move(f);
  m.h = std::move(h);
  m.storage = std::move(storage);
  m.declared_op_index = declared_op_index;
  return m;
}

AgentModel make_custom_agent(
    int, std::function<Eigen::VectorXd(const Eigen::VectorXd&, double)>,
    std::function<double(const Eigen::VectorXd&, double)>,
    std::optional<StorageFn>, std::optional<double>) {
  throw std::invalid_argument(
      "make_custom_agent: agent output maps may not depend on the input "
      "(feedthrough creates an algebraic loop with feedthrough controllers)");
}

ControllerModel make_custom_controller(
    int state_dim,
    std::function<Eigen::VectorXd(const Eigen::VectorXd&, double)> phi,
    std::function<double(const Eigen::VectorXd&, double)> psi,
    std::optional<StorageFn> storage, std::optional<double> declared_op_index) {
  if (state_dim < 0) {
    throw std::invalid_argument("make_custom_controller: negative state_dim");
  }
  if (!psi) {
    throw std::invalid_argument("make_custom_controller: psi is required");
  }
  if (state_dim > 0 && !phi) {
    throw std::invalid_argument(
        "make_custom_controller: phi is required when state_dim > 0");
  }
  ControllerModel c;
  c.name = "custom";
  c.state_dim = state_dim;
  c.phi = phi ? std::move(phi)
              : [](const Eigen::VectorXd&, double) { return Eigen::VectorXd(0); };
  c.psi = std::move(psi);
  c.storage = std::move(storage);
  c.declared_op_index = declared_op_index;
  return c;
}

}  // namespace netpass
