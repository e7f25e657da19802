#include "netpass/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace netpass {

ProjectionOps::ProjectionOps(int n_) : n(n_) {
  if (n < 1) throw std::invalid_argument("ProjectionOps: n must be >= 1");
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  P_S = (ones * ones.transpose()) / n;
  P_Sperp = Eigen::MatrixXd::Identity(n, n) - P_S;
}

Eigen::VectorXd project_disagreement(const Eigen::VectorXd& y) {
  return y.array() - y.mean();
}

namespace {

double agent_storage_rate(const NetworkSystem& sys,
                          const Eigen::VectorXd& combined, int i, double u) {
  const auto& a = sys.agents()[i];
  const Eigen::VectorXd xi = sys.agent_state(combined, i);
  return a.storage->grad(xi).dot(a.f(xi, u));
}

double controller_storage_rate(const NetworkSystem& sys,
                               const Eigen::VectorXd& combined, int k,
                               double zeta) {
  const auto& c = sys.controllers()[k];
  if (c.state_dim == 0) return 0.0;
  const Eigen::VectorXd eta = sys.controller_state(combined, k);
  return c.storage->grad(eta).dot(c.phi(eta, zeta));
}

void require_agent_storage(const NetworkSystem& sys) {
  for (const auto& a : sys.agents()) {
    if (!a.storage) {
      throw std::invalid_argument("audit: agent '" + a.name +
                                  "' has no storage function");
    }
    if (!a.declared_op_index) {
      throw std::invalid_argument("audit: agent '" + a.name +
                                  "' has no declared passivity index");
    }
  }
}

void require_controller_storage(const NetworkSystem& sys) {
  for (const auto& c : sys.controllers()) {
    if (!c.storage) {
      throw std::invalid_argument("audit: controller '" + c.name +
                                  "' has no storage function");
    }
    if (!c.declared_op_index) {
      throw std::invalid_argument("audit: controller '" + c.name +
                                  "' has no declared passivity index");
    }
  }
}

void require_balanced(const NetworkSystem& sys) {
  if (!is_balanced(sys.incidence())) {
    throw std::invalid_argument(
        "audit: the graph must be balanced (the identity E^T y = "
        "E^T proj(y) fails otherwise)");
  }
}

double min_declared_agent_index(const NetworkSystem& sys) {
  double eps = std::numeric_limits<double>::infinity();
  for (const auto& a : sys.agents()) eps = std::min(eps, *a.declared_op_index);
  return eps;
}

double min_declared_controller_index(const NetworkSystem& sys) {
  double al = std::numeric_limits<double>::infinity();
  for (const auto& c : sys.controllers()) {
    al = std::min(al, *c.declared_op_index);
  }
  return al;
}

// Trapezoidal integral of per-sample values over the first `upto` samples.
double trapz(const std::vector<double>& t, const std::vector<double>& v,
             std::size_t upto) {
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < upto; ++i) {
    acc += 0.5 * (v[i] + v[i + 1]) * (t[i + 1] - t[i]);
  }
  return acc;
}

std::size_t index_at_or_before(const std::vector<double>& t, double tau) {
  std::size_t i = 0;
  while (i + 1 < t.size() && t[i + 1] <= tau + 1e-12) ++i;
  return i + 1;  // count of samples in [0, tau]
}

struct PointwiseAudit {
  std::vector<double> margin;       // lhs - rhs per sample
  std::vector<double> scale;        // magnitude of the terms per sample
  std::vector<double> lhs;          // inner product per sample
  std::vector<double> norm_term;    // index-weighted norm per sample
};

MarginRecord finish(const Trajectory& traj, const PointwiseAudit& pw,
                    double initial_storage,
                    const std::vector<double>& extra_rhs_integrand,
                    double extra_rhs_coeff) {
  MarginRecord rec;
  rec.min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < pw.margin.size(); ++s) {
    if (pw.margin[s] < rec.min_margin) {
      rec.min_margin = pw.margin[s];
      rec.min_margin_time = traj.times[s];
    }
    rec.signal_scale = std::max(rec.signal_scale, pw.scale[s]);
  }
  const double t_end = traj.times.back();
  for (double frac : {0.25, 0.5, 1.0}) {
    QuadratureRecord q;
    q.tau = frac * t_end;
    const std::size_t upto = index_at_or_before(traj.times, q.tau);
    q.lhs = trapz(traj.times, pw.lhs, upto);
    q.rhs = trapz(traj.times, pw.norm_term, upto) +
            extra_rhs_coeff * trapz(traj.times, extra_rhs_integrand, upto);
    q.initial_storage = initial_storage;
    q.margin = q.lhs - q.rhs + q.initial_storage;
    rec.quadratures.push_back(q);
  }
  return rec;
}

}  // namespace

MarginRecord audit_agent_inequality(const NetworkSystem& sys,
                                    const Trajectory& traj) {
  require_agent_storage(sys);
  require_balanced(sys);
  const double eps = min_declared_agent_index(sys);
  const int max_do = graph_report(sys.graph()).max_out_degree;

  PointwiseAudit pw;
  std::vector<double> mu_sq(traj.size());
  for (std::size_t s = 0; s < traj.size(); ++s) {
    const Eigen::VectorXd proj_y = project_disagreement(traj.y[s]);
    double qdot_sum = 0.0;
    for (int i = 0; i < sys.n_agents(); ++i) {
      qdot_sum += agent_storage_rate(sys, traj.state[s], i, traj.u[s](i));
    }
    const double lhs = traj.u[s].dot(proj_y);
    const double cs = traj.u[s].norm() * traj.y[s].norm();
    const double strict = eps * proj_y.squaredNorm();
    pw.lhs.push_back(lhs);
    pw.norm_term.push_back(strict);
    pw.margin.push_back(lhs - (qdot_sum - cs + strict));
    pw.scale.push_back(std::abs(lhs) + std::abs(qdot_sum) + cs + strict);
    mu_sq[s] = traj.mu[s].squaredNorm();
  }
  double q0 = 0.0;
  for (int i = 0; i < sys.n_agents(); ++i) {
    q0 += sys.agents()[i].storage->value(sys.agent_state(traj.state[0], i));
  }
  // Integral relation: <u, proj(y)> >= -max(D_o)/eps ||mu||^2
  //                                    + eps ||proj(y)||^2  (up to storage).
  // The mu term degenerates for merely passive agents (eps = 0).
  const double coeff = eps > 0 ? -static_cast<double>(max_do) / eps : 0.0;
  return finish(traj, pw, q0, mu_sq, coeff);
}

MarginRecord audit_controller_inequality(const NetworkSystem& sys,
                                         const Trajectory& traj) {
  require_controller_storage(sys);
  require_balanced(sys);
  const double alpha = min_declared_controller_index(sys);
  const Eigen::MatrixXd E = sys.incidence().E_d();

  PointwiseAudit pw;
  std::vector<double> zero(traj.size(), 0.0);
  for (std::size_t s = 0; s < traj.size(); ++s) {
    const Eigen::VectorXd proj_y = project_disagreement(traj.y[s]);
    const Eigen::VectorXd z = E * traj.mu[s];
    double wdot_sum = 0.0;
    for (int k = 0; k < sys.n_controllers(); ++k) {
      wdot_sum +=
          controller_storage_rate(sys, traj.state[s], k, traj.zeta[s](k));
    }
    const double lhs = z.dot(proj_y);
    const double strict = alpha * traj.mu[s].squaredNorm();
    pw.lhs.push_back(lhs);
    pw.norm_term.push_back(strict);
    pw.margin.push_back(lhs - (wdot_sum + strict));
    pw.scale.push_back(std::abs(lhs) + std::abs(wdot_sum) + strict);
  }
  double w0 = 0.0;
  for (int k = 0; k < sys.n_controllers(); ++k) {
    w0 += sys.controllers()[k].storage->value(
        sys.controller_state(traj.state[0], k));
  }
  return finish(traj, pw, w0, zero, 0.0);
}

MarginRecord audit_theorem_dissipation(const NetworkSystem& sys,
                                       const Trajectory& traj) {
  if (!traj.decomposed()) {
    throw std::invalid_argument(
        "audit_theorem_dissipation: requires a DecomposedDirected run (w "
        "not recorded)");
  }
  require_agent_storage(sys);
  require_controller_storage(sys);
  require_balanced(sys);
  const double eps = min_declared_agent_index(sys);

  PointwiseAudit pw;
  std::vector<double> zero(traj.size(), 0.0);
  for (std::size_t s = 0; s < traj.size(); ++s) {
    const Eigen::VectorXd proj_y = project_disagreement(traj.y[s]);
    double wdot_sum = 0.0;
    for (int k = 0; k < sys.n_controllers(); ++k) {
      wdot_sum +=
          controller_storage_rate(sys, traj.state[s], k, traj.zeta[s](k));
    }
    const double lhs = traj.w[s].dot(proj_y);
    const double strict = eps * proj_y.squaredNorm();
    pw.lhs.push_back(lhs);
    pw.norm_term.push_back(strict);
    pw.margin.push_back(lhs - (wdot_sum + strict));
    pw.scale.push_back(std::abs(lhs) + std::abs(wdot_sum) + strict);
  }
  double w0 = 0.0;
  for (int k = 0; k < sys.n_controllers(); ++k) {
    w0 += sys.controllers()[k].storage->value(
        sys.controller_state(traj.state[0], k));
  }
  return finish(traj, pw, w0, zero, 0.0);
}

namespace {

IndexEstimate estimate_index(const std::vector<double>& in,
                             const std::vector<double>& out,
                             const std::vector<double>& vdot, double y_floor) {
  double floor = y_floor;
  if (floor <= 0) {
    double out_max = 0.0;
    for (double o : out) out_max = std::max(out_max, std::abs(o));
    floor = 1e-6 * out_max;
  }
  IndexEstimate est;
  double inf = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < out.size(); ++s) {
    if (std::abs(out[s]) < floor || out[s] == 0.0) continue;
    inf = std::min(inf, (in[s] * out[s] - vdot[s]) / (out[s] * out[s]));
    ++est.samples_used;
  }
  if (est.samples_used == 0) {
    est.diagnostic = "no sample cleared the output floor " +
                     std::to_string(floor);
  } else {
    est.estimate = inf;
  }
  return est;
}

}  // namespace

IndexEstimate estimate_agent_op_index(const NetworkSystem& sys,
                                      const Trajectory& traj, int agent,
                                      double y_floor) {
  const auto& a = sys.agents().at(agent);
  if (!a.storage) {
    throw std::invalid_argument("estimate_agent_op_index: agent '" + a.name +
                                "' has no storage function");
  }
  std::vector<double> in, out, vdot;
  for (std::size_t s = 0; s < traj.size(); ++s) {
    in.push_back(traj.u[s](agent));
    out.push_back(traj.y[s](agent));
    vdot.push_back(agent_storage_rate(sys, traj.state[s], agent, in.back()));
  }
  return estimate_index(in, out, vdot, y_floor);
}

IndexEstimate estimate_controller_op_index(const NetworkSystem& sys,
                                           const Trajectory& traj,
                                           int controller, double y_floor) {
  const auto& c = sys.controllers().at(controller);
  if (!c.storage) {
    throw std::invalid_argument("estimate_controller_op_index: controller '" +
                                c.name + "' has no storage function");
  }
  std::vector<double> in, out, vdot;
  for (std::size_t s = 0; s < traj.size(); ++s) {
    in.push_back(traj.zeta[s](controller));
    out.push_back(traj.mu[s](controller));
    vdot.push_back(
        controller_storage_rate(sys, traj.state[s], controller, in.back()));
  }
  return estimate_index(in, out, vdot, y_floor);
}

TheoremCondition check_theorem_condition(const std::vector<double>& epsilons,
                                         const std::vector<double>& alphas,
                                         const Digraph& g) {
  if (epsilons.empty() || alphas.empty()) {
    throw std::invalid_argument("check_theorem_condition: empty index list");
  }
  for (double e : epsilons) {
    if (e <= 0) {
      throw std::invalid_argument(
          "check_theorem_condition: agent indices must be positive");
    }
  }
  for (double a : alphas) {
    if (a <= 0) {
      throw std::invalid_argument(
          "check_theorem_condition: controller indices must be positive");
    }
  }
  TheoremCondition c;
  const auto rep = graph_report(g);
  c.applicable = rep.balanced && !rep.globally_reachable_nodes.empty();
  c.epsilon_min = *std::min_element(epsilons.begin(), epsilons.end());
  c.alpha_min = *std::min_element(alphas.begin(), alphas.end());
  c.max_out_degree = rep.max_out_degree;
  c.threshold = static_cast<double>(c.max_out_degree) / c.epsilon_min;
  c.satisfied = c.applicable && c.alpha_min >= c.threshold;
  return c;
}

}  // namespace netpass
