// Command-line front end: scenario-driven graph analysis, simulation,
// passivity auditing, and the randomized proposition suites.
//
// Exit codes: 0 success, 1 runtime divergence, 2 input error,
// 3 counterexample (failed property suite or failed audit).

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "netpass/analysis.hpp"
#include "netpass/report.hpp"
#include "netpass/scenario.hpp"
#include "netpass/simulate.hpp"
#include "netpass/spectral.hpp"

namespace {

using nlohmann::json;
using namespace netpass;

constexpr int kExitDivergence = 1;
constexpr int kExitInput = 2;
constexpr int kExitCounterexample = 3;

struct CommonOpts {
  std::string scenario_path;
  std::string out_dir = ".";
  double dt_override = -1.0;
  double t_end_override = -1.0;
  bool svg = false;
};

Scenario load(const CommonOpts& opts) {
  Scenario sc = load_scenario(opts.scenario_path);
  if (opts.dt_override > 0) sc.sim.dt = opts.dt_override;
  if (opts.t_end_override > 0) sc.sim.t_end = opts.t_end_override;
  sc.sim.validate();
  return sc;
}

std::string out_path(const CommonOpts& opts, const Scenario& sc,
                     const std::optional<std::string>& declared,
                     const std::string& suffix) {
  const std::string name = declared.value_or(sc.name + suffix);
  return (std::filesystem::path(opts.out_dir) / name).string();
}

json graph_analysis_json(const Scenario& sc) {
  const Digraph g = sc.digraph();
  const IncidenceSet inc = build_incidence(g);
  return json{{"scenario_hash", sc.hash},
              {"tool_version", kToolVersion},
              {"graph_report", to_json(graph_report(g))},
              {"spectral", to_json(analyze_sym_Lo(inc))},
              {"proposition1", to_json(check_proposition1(g))},
              {"proposition2_3", to_json(check_proposition2_3(g))}};
}

void write_json(const std::string& path, const json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "'");
  out << doc.dump(2) << "\n";
}

// Declared indices when present, estimated ones otherwise. Returns an empty
// list when any block ends up without a usable positive index.
std::vector<double> gather_indices(
    const std::vector<std::optional<double>>& declared,
    const std::vector<std::optional<double>>& estimated) {
  std::vector<double> out;
  for (std::size_t i = 0; i < declared.size(); ++i) {
    const std::optional<double> v = declared[i] ? declared[i] : estimated[i];
    if (!v || *v <= 0) return {};
    out.push_back(*v);
  }
  return out;
}

json summarize_run(const Scenario& sc, const NetworkSystem& sys,
                   const Trajectory& traj) {
  json summary{{"scenario_hash", sc.hash},
               {"tool_version", kToolVersion},
               {"config",
                {{"dt", traj.config.dt},
                 {"t_end", traj.config.t_end},
                 {"record_stride", traj.config.record_stride},
                 {"convergence_tol", traj.config.convergence_tol},
                 {"dwell_time", traj.config.dwell_time},
                 {"mode", mode_name(sys.mode())}}},
               {"graph_report", to_json(graph_report(sc.digraph()))},
               {"spectral", to_json(analyze_sym_Lo(sys.incidence()))}};

  if (const auto t = detect_convergence(traj, traj.config.convergence_tol,
                                        traj.config.dwell_time)) {
    summary["settling_time"] = *t;
  }
  summary["final_disagreement"] = traj.disagreement.back();
  summary["final_output_norm"] = traj.y.back().norm();

  // Per-block passivity indices: declared and, when storage exists,
  // estimated from the run.
  std::vector<std::optional<double>> eps_declared, eps_est, al_declared, al_est;
  json agents = json::array();
  for (int i = 0; i < sys.n_agents(); ++i) {
    const auto& a = sys.agents()[i];
    json entry{{"name", a.name}};
    eps_declared.push_back(a.declared_op_index);
    if (a.declared_op_index) entry["declared_index"] = *a.declared_op_index;
    if (a.storage) {
      const auto est = estimate_agent_op_index(sys, traj, i);
      entry["estimated_index"] = to_json(est);
      eps_est.push_back(est.estimate);
    } else {
      eps_est.push_back(std::nullopt);
    }
    agents.push_back(entry);
  }
  json controllers = json::array();
  for (int k = 0; k < sys.n_controllers(); ++k) {
    const auto& c = sys.controllers()[k];
    json entry{{"name", c.name}};
    al_declared.push_back(c.declared_op_index);
    if (c.declared_op_index) entry["declared_index"] = *c.declared_op_index;
    if (c.storage) {
      const auto est = estimate_controller_op_index(sys, traj, k);
      entry["estimated_index"] = to_json(est);
      al_est.push_back(est.estimate);
    } else {
      al_est.push_back(std::nullopt);
    }
    controllers.push_back(entry);
  }
  summary["agents"] = agents;
  summary["controllers"] = controllers;

  const auto eps = gather_indices(eps_declared, eps_est);
  const auto al = gather_indices(al_declared, al_est);
  if (!eps.empty() && !al.empty()) {
    summary["theorem_condition"] =
        to_json(check_theorem_condition(eps, al, sc.digraph()));
  }

  json audits;
  try {
    audits["agent_inequality"] = to_json(audit_agent_inequality(sys, traj));
    audits["controller_inequality"] =
        to_json(audit_controller_inequality(sys, traj));
    if (traj.decomposed()) {
      audits["theorem_dissipation"] =
          to_json(audit_theorem_dissipation(sys, traj));
    }
  } catch (const std::invalid_argument& e) {
    audits = json{{"unsupported", e.what()}};
  }
  summary["audits"] = audits;
  return summary;
}

int cmd_analyze_graph(const CommonOpts& opts) {
  const Scenario sc = load(opts);
  const json report = graph_analysis_json(sc);
  std::cout << report.dump(2) << "\n";
  if (opts.out_dir != ".") {
    std::filesystem::create_directories(opts.out_dir);
  }
  write_json(out_path(opts, sc, std::nullopt, "_graph.json"), report);
  return 0;
}

int cmd_simulate(const CommonOpts& opts, bool force_decomposed) {
  const Scenario sc = load(opts);
  const NetworkSystem sys = build_system(
      sc, force_decomposed
              ? std::optional<CouplingMode>(CouplingMode::DecomposedDirected)
              : std::nullopt);
  Eigen::VectorXd x0 = sc.x0;
  if (x0.size() == 0) x0 = Eigen::VectorXd::Zero(sys.state_dim());

  std::filesystem::create_directories(opts.out_dir);
  const std::string summary_path =
      out_path(opts, sc, sc.summary_path, "_summary.json");

  Trajectory traj;
  try {
    traj = simulate(sys, x0, sc.sim);
  } catch (const DivergenceError& e) {
    const json summary{{"scenario_hash", sc.hash},
                       {"tool_version", kToolVersion},
                       {"diverged", true},
                       {"last_finite_time", e.last_finite_time},
                       {"error", e.what()}};
    write_json(summary_path, summary);
    std::cerr << e.what() << "\n";
    return kExitDivergence;
  }
  traj.scenario_hash = sc.hash;

  write_trajectory_csv(out_path(opts, sc, sc.csv_path, ".csv"), traj);
  if (opts.svg || sc.svg_path) {
    write_outputs_svg(out_path(opts, sc, sc.svg_path, ".svg"), traj);
  }
  const json summary = summarize_run(sc, sys, traj);
  write_json(summary_path, summary);
  std::cout << summary.dump(2) << "\n";

  if (force_decomposed) {
    // Audit command: flag any clearly negative pointwise margin.
    const auto& audits = summary["audits"];
    if (audits.contains("unsupported")) {
      std::cerr << "audit unsupported: " << audits["unsupported"] << "\n";
      return kExitInput;
    }
    for (const auto& [key, rec] : audits.items()) {
      const double margin = rec["min_margin"].get<double>();
      const double scale = rec["signal_scale"].get<double>();
      if (margin < -1e-8 * std::max(1.0, scale)) {
        std::cerr << "audit counterexample: " << key
                  << " min margin = " << margin << "\n";
        return kExitCounterexample;
      }
    }
  }
  return 0;
}

int cmd_prop_suite(std::uint64_t seed, int count, int n_max,
                   const CommonOpts& opts) {
  const auto result = run_prop_suite(seed, count, n_max);
  std::cout << result.report.dump(2) << "\n";
  if (opts.out_dir != ".") {
    std::filesystem::create_directories(opts.out_dir);
    write_json(
        (std::filesystem::path(opts.out_dir) / "prop_suite.json").string(),
        result.report);
  }
  return result.all_passed ? 0 : kExitCounterexample;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Passivity analysis and simulation of consensus networks on "
               "directed graphs"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::uint64_t seed = 42;
  int count = 200;
  int n_max = 8;

  auto add_common = [&opts](CLI::App* cmd, bool needs_scenario = true) {
    auto* s = cmd->add_option("--scenario", opts.scenario_path,
                              "Scenario JSON file");
    if (needs_scenario) s->required();
    cmd->add_option("--out-dir", opts.out_dir, "Output directory");
  };

  auto* analyze = app.add_subcommand(
      "analyze-graph", "Graph report, sym(L_o) spectrum, proposition verdicts");
  add_common(analyze);

  auto* sim = app.add_subcommand("simulate",
                                 "Run a scenario; write CSV and JSON summary");
  add_common(sim);
  sim->add_option("--dt", opts.dt_override, "Override integration step");
  sim->add_option("--t-end", opts.t_end_override, "Override horizon");
  sim->add_flag("--svg", opts.svg, "Write an SVG plot of the outputs");

  auto* audit = app.add_subcommand(
      "audit", "Re-run decomposed and check all dissipation inequalities");
  add_common(audit);
  audit->add_option("--dt", opts.dt_override, "Override integration step");
  audit->add_option("--t-end", opts.t_end_override, "Override horizon");

  auto* prop = app.add_subcommand("prop-suite",
                                  "Randomized Proposition 1-3 suites");
  prop->add_option("--seed", seed, "RNG seed");
  prop->add_option("--count", count, "Number of graphs")
      ->check(CLI::PositiveNumber);
  prop->add_option("--n-max", n_max, "Maximum vertex count");
  prop->add_option("--out-dir", opts.out_dir, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) return cmd_analyze_graph(opts);
    if (sim->parsed()) return cmd_simulate(opts, /*force_decomposed=*/false);
    if (audit->parsed()) return cmd_simulate(opts, /*force_decomposed=*/true);
    if (prop->parsed()) return cmd_prop_suite(seed, count, n_max, opts);
  } catch (const ScenarioError& e) {
    std::cerr << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitDivergence;
  }
  return 0;
}
