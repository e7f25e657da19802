#pragma once

#include <string>

#include <json.hpp>

#include "netpass/analysis.hpp"
#include "netpass/scenario.hpp"
#include "netpass/simulate.hpp"
#include "netpass/spectral.hpp"

namespace netpass {

nlohmann::json to_json(const GraphReport& rep);
nlohmann::json to_json(const SymLoAnalysis& a);
nlohmann::json to_json(const Proposition1Verdict& v);
nlohmann::json to_json(const Proposition23Verdict& v);
nlohmann::json to_json(const TheoremCondition& c);
nlohmann::json to_json(const MarginRecord& m);
nlohmann::json to_json(const IndexEstimate& e);

/// Trajectory CSV:
///   t,x_1..,y_1..,u_1..,zeta_1..,mu_1..[,w_1..,z_1..],disagreement_norm
/// 17 significant digits, LF endings. A comment line with the scenario
/// hash and tool version precedes the header.
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

/// Minimal built-in line plot of agent outputs versus time.
void write_outputs_svg(const std::string& path, const Trajectory& traj);

struct PropSuiteResult {
  nlohmann::json report;
  bool all_passed = false;
};

/// Randomized Proposition 1-3 suites over `count` digraphs with a globally
/// reachable node. Counterexamples are embedded verbatim in the report.
PropSuiteResult run_prop_suite(std::uint64_t seed, int count, int n_max);

}  // namespace netpass
