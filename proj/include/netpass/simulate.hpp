#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "netpass/network.hpp"

namespace netpass {

struct SimConfig {
  double dt = 1e-3;
  double t_end = 30.0;
  int record_stride = 10;
  double convergence_tol = 1e-3;
  double dwell_time = 1.0;

  void validate() const;
};

/// Recorded run of a NetworkSystem. All arrays share length; times are
/// uniformly spaced by dt * record_stride. w and z are present only for
/// DecomposedDirected runs.
struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> state;
  std::vector<Eigen::VectorXd> u, y, zeta, mu, w, z;
  std::vector<double> disagreement;  // ||proj_{S_perp}(y)||
  SimConfig config;
  std::string scenario_hash;  // empty when run outside a scenario

  bool decomposed() const { return !w.empty(); }
  std::size_t size() const { return times.size(); }
};

/// Raised when the state leaves the finite range mid-run.
struct DivergenceError : std::runtime_error {
  DivergenceError(double t, std::string what)
      : std::runtime_error(std::move(what)), last_finite_time(t) {}
  double last_finite_time;
};

/// Classical fixed-step 4th-order Runge-Kutta over the system vector field,
/// recording signals every record_stride steps (the initial sample included).
Trajectory simulate(const NetworkSystem& sys, const Eigen::VectorXd& x0,
                    const SimConfig& cfg);

/// Earliest recorded t* such that the disagreement norm stays <= tol on
/// [t*, t* + dwell]; the dwell window must fit inside the recorded horizon.
std::optional<double> detect_convergence(const Trajectory& traj, double tol,
                                         double dwell);

}  // namespace netpass
