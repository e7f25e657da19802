#include "netpass/simulate.hpp"

#include <cmath>
#include <stdexcept>

#include "netpass/analysis.hpp"

namespace netpass {

void SimConfig::validate() const {
  if (dt <= 0) throw std::invalid_argument("SimConfig: dt must be positive");
  if (t_end <= 0) {
    throw std::invalid_argument("SimConfig: t_end must be positive");
  }
  if (dt >= t_end) throw std::invalid_argument("SimConfig: dt must be < t_end");
  if (record_stride < 1) {
    throw std::invalid_argument("SimConfig: record_stride must be >= 1");
  }
  if (convergence_tol <= 0 || dwell_time <= 0) {
    throw std::invalid_argument("SimConfig: tolerances must be positive");
  }
}

namespace {

void record_sample(const NetworkSystem& sys, Trajectory& traj, double t,
                   const Eigen::VectorXd& x) {
  const Signals s = sys.signal_map(x);
  traj.times.push_back(t);
  traj.state.push_back(x);
  traj.u.push_back(s.u);
  traj.y.push_back(s.y);
  traj.zeta.push_back(s.zeta);
  traj.mu.push_back(s.mu);
  if (sys.mode() == CouplingMode::DecomposedDirected) {
    traj.w.push_back(s.w);
    traj.z.push_back(s.z);
  }
  traj.disagreement.push_back(project_disagreement(s.y).norm());
}

}  // namespace

Trajectory simulate(const NetworkSystem& sys, const Eigen::VectorXd& x0,
                    const SimConfig& cfg) {
  cfg.validate();
  if (x0.size() != sys.state_dim()) {
    throw std::invalid_argument("simulate: x0 dimension " +
                                std::to_string(x0.size()) + " != state dim " +
                                std::to_string(sys.state_dim()));
  }
  if (!x0.allFinite()) {
    throw std::invalid_argument("simulate: x0 contains non-finite entries");
  }

  Trajectory traj;
  traj.config = cfg;
  const long steps = std::lround(cfg.t_end / cfg.dt);
  const double dt = cfg.dt;

  Eigen::VectorXd x = x0;
  record_sample(sys, traj, 0.0, x);
  for (long s = 0; s < steps; ++s) {
    const double t = s * dt;
    Eigen::VectorXd k1, k2, k3, k4;
    try {
      k1 = sys.vector_field(x);
      k2 = sys.vector_field(x + (dt / 2) * k1);
      k3 = sys.vector_field(x + (dt / 2) * k2);
      k4 = sys.vector_field(x + dt * k3);
    } catch (const std::runtime_error& e) {
      throw DivergenceError(t, std::string("simulate: blow-up near t=") +
                                   std::to_string(t) + ": " + e.what());
    }
    x += (dt / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
    if (!x.allFinite()) {
      throw DivergenceError(t, "simulate: non-finite state at t=" +
                                   std::to_string(t + dt));
    }
    if ((s + 1) % cfg.record_stride == 0 || s + 1 == steps) {
      record_sample(sys, traj, (s + 1) * dt, x);
    }
  }
  return traj;
}

std::optional<double> detect_convergence(const Trajectory& traj, double tol,
                                         double dwell) {
  const auto& d = traj.disagreement;
  const auto& t = traj.times;
  const std::size_t n = d.size();
  if (n == 0) return std::nullopt;

  for (std::size_t i = 0; i < n; ++i) {
    if (t[i] + dwell > t.back() + 1e-12) break;  // window no longer fits
    if (d[i] > tol) continue;
    bool ok = true;
    for (std::size_t j = i; j < n && t[j] <= t[i] + dwell + 1e-12; ++j) {
      if (d[j] > tol) {
        ok = false;
        break;
      }
    }
    if (ok) return t[i];
  }
  return std::nullopt;
}

}  // namespace netpass
