#include <doctest.h>

#include <random>

#include "netpass/analysis.hpp"
#include "netpass/random_graph.hpp"

using namespace netpass;

namespace {

Digraph case_study_graph() {
  return Digraph(5, {{1, 4}, {1, 5}, {4, 2}, {5, 2}, {2, 1}, {2, 3}, {3, 1}});
}

constexpr double kA[] = {1.66, 3.22, 4.62, 1.5, 2.56};

NetworkSystem case_study_system(CouplingMode mode,
                                double index_scale = 1.0,
                                double alpha_override = 0.0) {
  std::vector<AgentModel> agents;
  for (double a : kA) {
    auto m = make_leaky_tanh_neuron(a);
    m.declared_op_index = a * index_scale;
    agents.push_back(std::move(m));
  }
  std::vector<ControllerModel> ctrls;
  for (int k = 0; k < 7; ++k) {
    auto c = make_static_gain(4.0 / 3.0);
    if (alpha_override > 0) c.declared_op_index = alpha_override;
    ctrls.push_back(std::move(c));
  }
  return assemble(case_study_graph(), std::move(agents), std::move(ctrls),
                  mode);
}

Trajectory case_study_run(const NetworkSystem& sys, double t_end = 30.0) {
  Eigen::VectorXd x0(5);
  x0 << -2, -3, 6, 10, 1;
  SimConfig cfg;
  cfg.t_end = t_end;
  return simulate(sys, x0, cfg);
}

}  // namespace

TEST_CASE("case-study settling times are locked as regression constants") {
  // Dwell-window settling (tol 1e-3, dwell 1 s) on the 0.01 s record grid.
  // The runs are bit-deterministic, so the values are pinned exactly.
  const auto linear = case_study_run(case_study_system(CouplingMode::DirectedOut));
  const auto t_lin = detect_convergence(linear, 1e-3, 1.0);
  REQUIRE(t_lin.has_value());
  CHECK(*t_lin == 3.87);

  std::vector<AgentModel> agents;
  for (double a : kA) agents.push_back(make_leaky_tanh_neuron(a));
  std::vector<ControllerModel> ctrls(7, make_rectified_gain(4.0 / 3.0));
  const auto rect = case_study_run(assemble(
      case_study_graph(), std::move(agents), std::move(ctrls),
      CouplingMode::DirectedOut));
  const auto t_rect = detect_convergence(rect, 1e-3, 1.0);
  REQUIRE(t_rect.has_value());
  CHECK(*t_rect == 4.26);
}

TEST_CASE("project_disagreement examples") {
  Eigen::VectorXd agree = 3.5 * Eigen::VectorXd::Ones(4);
  CHECK(project_disagreement(agree).norm() <= 1e-14);

  Eigen::VectorXd meanfree(2);
  meanfree << 1, -1;
  CHECK((project_disagreement(meanfree) - meanfree).norm() <= 1e-15);

  Eigen::VectorXd y(3);
  y << 2, 0, 1;
  Eigen::VectorXd expected(3);
  expected << 1, -1, 0;
  CHECK((project_disagreement(y) - expected).norm() <= 1e-15);
}

TEST_CASE("projection algebra up to n = 1000") {
  for (int n : {1, 2, 5, 100, 1000}) {
    const ProjectionOps ops(n);
    const double tol = 1e-14 * n;
    CHECK((ops.P_S * ops.P_S - ops.P_S).cwiseAbs().maxCoeff() <= tol);
    CHECK((ops.P_Sperp * ops.P_Sperp - ops.P_Sperp).cwiseAbs().maxCoeff() <=
          tol);
    CHECK((ops.P_S + ops.P_Sperp - Eigen::MatrixXd::Identity(n, n))
              .cwiseAbs()
              .maxCoeff() <= tol);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
    CHECK((ops.P_S * ones - ones).cwiseAbs().maxCoeff() <= tol);
    CHECK((ops.P_Sperp * ones).cwiseAbs().maxCoeff() <= tol);
  }
}

TEST_CASE("Rayleigh bound: projection never grows a vector") {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> dist;
  for (int c = 0; c < 200; ++c) {
    Eigen::VectorXd y(2 + c % 9);
    for (int i = 0; i < y.size(); ++i) y(i) = dist(rng);
    CHECK(project_disagreement(y).squaredNorm() <=
          y.squaredNorm() * (1 + 1e-12));
  }
}

TEST_CASE("Gersgorin bound: ||B_o mu||^2 <= max(D_o) ||mu||^2") {
  RandomDigraphGen gen(41, 8);
  std::mt19937_64 rng(42);
  std::normal_distribution<double> dist;
  for (int c = 0; c < 200; ++c) {
    const Digraph g = gen.next_unconstrained();
    if (g.n_edges() == 0) continue;
    const auto inc = build_incidence(g);
    const int max_do = graph_report(g).max_out_degree;
    Eigen::VectorXd mu(g.n_edges());
    for (int k = 0; k < mu.size(); ++k) mu(k) = dist(rng);
    CHECK((inc.B_o_d() * mu).squaredNorm() <=
          max_do * mu.squaredNorm() * (1 + 1e-12));
  }
}

TEST_CASE("passivity index estimation on the case-study run") {
  const auto sys = case_study_system(CouplingMode::DirectedOut);
  const auto traj = case_study_run(sys);

  for (int i = 0; i < 5; ++i) {
    const auto est = estimate_agent_op_index(sys, traj, i);
    REQUIRE(est.estimate.has_value());
    CHECK(*est.estimate >= kA[i] - 1e-6);
  }
  for (int k = 0; k < 7; ++k) {
    const auto est = estimate_controller_op_index(sys, traj, k);
    REQUIRE(est.estimate.has_value());
    CHECK(*est.estimate == doctest::Approx(0.75).epsilon(1e-9));
  }
}

TEST_CASE("integrator in a passive loop estimates index near zero") {
  // Undirected two-node loop: u = -E mu drives each integrator with the
  // negated disagreement, and u y = Qdot identically.
  const Digraph g(2, {{1, 2}});
  std::vector<AgentModel> agents(2, make_integrator());
  const auto sys = assemble(g, agents, {make_static_gain(1.0)},
                            CouplingMode::Undirected);
  Eigen::VectorXd x0(2);
  x0 << 1, -1;
  SimConfig cfg;
  cfg.t_end = 5.0;
  const auto traj = simulate(sys, x0, cfg);
  const auto est = estimate_agent_op_index(sys, traj, 0);
  REQUIRE(est.estimate.has_value());
  CHECK(std::abs(*est.estimate) <= 1e-9);
}

TEST_CASE("index estimation reports when no sample clears the floor") {
  const auto sys = case_study_system(CouplingMode::DirectedOut);
  const auto traj = simulate(sys, Eigen::VectorXd::Zero(5), SimConfig{});
  const auto est = estimate_agent_op_index(sys, traj, 0);
  CHECK_FALSE(est.estimate.has_value());
  CHECK_FALSE(est.diagnostic.empty());
}

TEST_CASE("audits on the all-zero trajectory give zero margins") {
  const auto sys = case_study_system(CouplingMode::DecomposedDirected);
  SimConfig cfg;
  cfg.t_end = 2.0;
  const auto traj = simulate(sys, Eigen::VectorXd::Zero(5), cfg);
  CHECK(audit_agent_inequality(sys, traj).min_margin == 0.0);
  CHECK(audit_controller_inequality(sys, traj).min_margin == 0.0);
  CHECK(audit_theorem_dissipation(sys, traj).min_margin == 0.0);
}

TEST_CASE("honest case-study audits stay nonnegative up to rounding") {
  const auto sys = case_study_system(CouplingMode::DecomposedDirected);
  const auto traj = case_study_run(sys);
  for (const auto& rec :
       {audit_agent_inequality(sys, traj),
        audit_controller_inequality(sys, traj),
        audit_theorem_dissipation(sys, traj)}) {
    CHECK(rec.min_margin >= -1e-8 * std::max(1.0, rec.signal_scale));
  }
}

TEST_CASE("inflated declared indices are flagged with negative margins") {
  const auto sys =
      case_study_system(CouplingMode::DecomposedDirected, 2.0, 1.5);
  const auto traj = case_study_run(sys);
  const double worst =
      std::min(audit_controller_inequality(sys, traj).min_margin,
               audit_theorem_dissipation(sys, traj).min_margin);
  CHECK(worst < -1e-3);
}

TEST_CASE("audits require a balanced graph") {
  const Digraph path(2, {{1, 2}});
  const auto sys = assemble(path, {make_leaky_tanh_neuron(1.0),
                                   make_leaky_tanh_neuron(1.0)},
                            {make_static_gain(1.0)},
                            CouplingMode::DecomposedDirected);
  Eigen::VectorXd x0(2);
  x0 << 1, 0;
  SimConfig cfg;
  cfg.t_end = 2.0;
  const auto traj = simulate(sys, x0, cfg);
  CHECK_THROWS_AS(audit_agent_inequality(sys, traj), std::invalid_argument);
  CHECK_THROWS_AS(audit_controller_inequality(sys, traj),
                  std::invalid_argument);
}

TEST_CASE("theorem dissipation audit needs a decomposed run") {
  const auto sys = case_study_system(CouplingMode::DirectedOut);
  const auto traj = case_study_run(sys, 2.0);
  CHECK_THROWS_AS(audit_theorem_dissipation(sys, traj), std::invalid_argument);
}

TEST_CASE("theorem condition arithmetic on the case study") {
  const std::vector<double> eps(kA, kA + 5);
  const auto c =
      check_theorem_condition(eps, {4.0 / 3.0}, case_study_graph());
  CHECK(c.applicable);
  CHECK(c.epsilon_min == 1.5);
  CHECK(c.max_out_degree == 2);
  CHECK(c.threshold == 4.0 / 3.0);  // exact in IEEE arithmetic
  CHECK(c.satisfied);               // boundary alpha = 4/3 is inclusive
}

TEST_CASE("theorem condition is inapplicable on unbalanced graphs") {
  const auto c = check_theorem_condition({1.0}, {1.0}, Digraph(2, {{1, 2}}));
  CHECK_FALSE(c.applicable);
  CHECK_FALSE(c.satisfied);
}

TEST_CASE("theorem condition rejects nonpositive indices") {
  CHECK_THROWS_AS(check_theorem_condition({0.0}, {1.0}, case_study_graph()),
                  std::invalid_argument);
  CHECK_THROWS_AS(check_theorem_condition({1.0}, {}, case_study_graph()),
                  std::invalid_argument);
}

TEST_CASE("theorem threshold scales inversely with the agent indices") {
  const Digraph g = case_study_graph();
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> dist(0.1, 5.0);
  for (int c = 0; c < 100; ++c) {
    std::vector<double> eps{dist(rng), dist(rng), dist(rng)};
    std::vector<double> alphas{dist(rng), dist(rng)};
    const double scale = dist(rng);
    const auto base = check_theorem_condition(eps, alphas, g);
    std::vector<double> scaled = eps;
    for (double& e : scaled) e *= scale;
    const auto after = check_theorem_condition(scaled, alphas, g);
    CHECK(after.threshold ==
          doctest::Approx(base.threshold / scale).epsilon(1e-12));
    CHECK(after.satisfied ==
          (after.alpha_min * after.epsilon_min >=
           after.max_out_degree * (1 - 1e-12)));
  }
}
