#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "netpass/network.hpp"
#include "netpass/simulate.hpp"

namespace netpass {

inline constexpr const char* kToolVersion = "0.1.0";

/// One agent or controller entry of a scenario document: a builtin name
/// ("integrator", "leaky_tanh", "static_gain", "rectified_gain") plus its
/// parameters. params may carry "declared_index" to override the builtin's
/// declared passivity index.
struct BlockSpec {
  std::string type;
  nlohmann::json params;
};

struct Scenario {
  std::string name;
  int n_vertices = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<BlockSpec> agents;       // one per vertex
  std::vector<BlockSpec> controllers;  // one per edge
  CouplingMode mode = CouplingMode::DirectedOut;
  Eigen::VectorXd x0;
  SimConfig sim;
  std::optional<std::string> csv_path, summary_path, svg_path;
  std::string hash;  // FNV-1a over the canonicalized document

  Digraph digraph() const { return Digraph(n_vertices, edges); }
};

struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Scenario parse_scenario(const nlohmann::json& doc);
Scenario load_scenario(const std::string& path);

AgentModel build_agent(const BlockSpec& spec);
ControllerModel build_controller(const BlockSpec& spec);

/// Assemble the scenario's network system, optionally forcing a coupling
/// mode (the audit command always runs decomposed).
NetworkSystem build_system(
    const Scenario& sc,
    std::optional<CouplingMode> mode_override = std::nullopt);

CouplingMode parse_mode(const std::string& name);
std::string mode_name(CouplingMode mode);

/// 64-bit FNV-1a over the canonical (sorted-key, compact) JSON dump.
std::string scenario_hash(const nlohmann::json& doc);

}  // namespace netpass
