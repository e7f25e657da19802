#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "netpass/graph.hpp"
#include "netpass/network.hpp"
#include "netpass/simulate.hpp"

namespace netpass {

/// Orthogonal projections onto the agreement space span(1) and its
/// complement.
struct ProjectionOps {
  explicit ProjectionOps(int n);
  int n;
  Eigen::MatrixXd P_S;      // (1/n) 1 1^T
  Eigen::MatrixXd P_Sperp;  // I - (1/n) 1 1^T
};

/// (I - (1/n) 1 1^T) y without forming the matrix.
Eigen::VectorXd project_disagreement(const Eigen::VectorXd& y);

struct IndexEstimate {
  std::optional<double> estimate;  // inf of (in*out - Vdot)/out^2
  int samples_used = 0;
  std::string diagnostic;  // set when no sample clears the floor
};

/// Empirical OP index of agent i over the recorded trajectory: the infimum
/// of (u y - Qdot)/y^2 over samples with |y| >= y_floor. y_floor <= 0
/// selects the default relative floor 1e-6 * max |y|.
IndexEstimate estimate_agent_op_index(const NetworkSystem& sys,
                                      const Trajectory& traj, int agent,
                                      double y_floor = 0.0);

/// Same for controller k with input zeta and output mu.
IndexEstimate estimate_controller_op_index(const NetworkSystem& sys,
                                           const Trajectory& traj,
                                           int controller,
                                           double y_floor = 0.0);

/// Trapezoidal integral audit of one of the integral passivity relations,
/// evaluated over [0, tau]. Reported, not asserted: the slack depends on
/// the infinite-past storage convention, which a finite run replaces by
/// the initial storage value.
struct QuadratureRecord {
  double tau = 0.0;
  double lhs = 0.0;           // inner-product side
  double rhs = 0.0;           // index-weighted norm side
  double initial_storage = 0.0;
  double margin = 0.0;        // lhs - rhs + initial_storage
};

struct MarginRecord {
  double min_margin = 0.0;
  double min_margin_time = 0.0;
  double signal_scale = 0.0;  // max per-sample magnitude entering the margin
  std::vector<QuadratureRecord> quadratures;
};

/// Proposition-4 style agent inequality
///   u^T proj(y) >= sum Qdot_i - ||u|| ||y|| + eps ||proj(y)||^2
/// with eps = min declared agent index. Requires agent storage and a
/// balanced graph.
MarginRecord audit_agent_inequality(const NetworkSystem& sys,
                                    const Trajectory& traj);

/// Proposition-5 style controller inequality
///   z^T proj(y) >= sum Wdot_k + alpha ||mu||^2
/// with alpha = min declared controller index and z = E mu.
MarginRecord audit_controller_inequality(const NetworkSystem& sys,
                                         const Trajectory& traj);

/// Theorem-proof pointwise inequality
///   w^T proj(y) >= sum Wdot_k + eps ||proj(y)||^2.
/// Requires a DecomposedDirected trajectory (w recorded).
MarginRecord audit_theorem_dissipation(const NetworkSystem& sys,
                                       const Trajectory& traj);

struct TheoremCondition {
  bool applicable = false;  // balanced with a globally reachable node
  double epsilon_min = 0.0;
  double alpha_min = 0.0;
  int max_out_degree = 0;
  double threshold = 0.0;  // max(D_o) / epsilon_min
  bool satisfied = false;  // alpha_min >= threshold (boundary inclusive)
};

TheoremCondition check_theorem_condition(const std::vector<double>& epsilons,
                                         const std::vector<double>& alphas,
                                         const Digraph& g);

}  // namespace netpass
