#include "netpass/scenario.hpp"

#include <cstdint>
#include <fstream>

namespace netpass {

using nlohmann::json;

std::string scenario_hash(const json& doc) {
  const std::string dump = doc.dump();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

CouplingMode parse_mode(const std::string& name) {
  if (name == "undirected") return CouplingMode::Undirected;
  if (name == "directed_out") return CouplingMode::DirectedOut;
  if (name == "decomposed_directed") return CouplingMode::DecomposedDirected;
  throw ScenarioError("scenario: unknown coupling mode '" + name + "'");
}

std::string mode_name(CouplingMode mode) {
  switch (mode) {
    case CouplingMode::Undirected:
      return "undirected";
    case CouplingMode::DirectedOut:
      return "directed_out";
    case CouplingMode::DecomposedDirected:
      return "decomposed_directed";
  }
  return "?";
}

namespace {

double require_param(const json& params, const std::string& key,
                     const std::string& type) {
  if (!params.contains(key) || !params[key].is_number()) {
    throw ScenarioError("scenario: block type '" + type +
                        "' needs numeric parameter '" + key + "'");
  }
  return params[key].get<double>();
}

std::vector<BlockSpec> parse_blocks(const json& node, std::size_t expected,
                                    const std::string& what) {
  std::vector<BlockSpec> out;
  json arr = node;
  if (node.is_object()) {
    // A single object is shorthand for one identical block per slot.
    arr = json::array();
    for (std::size_t i = 0; i < expected; ++i) arr.push_back(node);
  }
  if (!arr.is_array() || arr.size() != expected) {
    throw ScenarioError("scenario: field '" + what + "' must list " +
                        std::to_string(expected) + " blocks");
  }
  for (const auto& b : arr) {
    if (!b.is_object() || !b.contains("type") || !b["type"].is_string()) {
      throw ScenarioError("scenario: each '" + what +
                          "' entry needs a string 'type'");
    }
    BlockSpec spec;
    spec.type = b["type"].get<std::string>();
    spec.params = b.value("params", json::object());
    out.push_back(std::move(spec));
  }
  return out;
}

}  // namespace

AgentModel build_agent(const BlockSpec& spec) {
  AgentModel m;
  if (spec.type == "integrator") {
    m = make_integrator();
  } else if (spec.type == "leaky_tanh") {
    m = make_leaky_tanh_neuron(require_param(spec.params, "a", spec.type));
  } else {
    throw ScenarioError("scenario: unknown agent type '" + spec.type + "'");
  }
  if (spec.params.contains("declared_index")) {
    m.declared_op_index = spec.params["declared_index"].get<double>();
  }
  return m;
}

ControllerModel build_controller(const BlockSpec& spec) {
  ControllerModel c;
  if (spec.type == "static_gain") {
    c = make_static_gain(require_param(spec.params, "b", spec.type));
  } else if (spec.type == "rectified_gain") {
    c = make_rectified_gain(require_param(spec.params, "b", spec.type));
  } else {
    throw ScenarioError("scenario: unknown controller type '" + spec.type +
                        "'");
  }
  if (spec.params.contains("declared_index")) {
    c.declared_op_index = spec.params["declared_index"].get<double>();
  }
  return c;
}

Scenario parse_scenario(const json& doc) {
  if (!doc.is_object()) throw ScenarioError("scenario: document not an object");
  Scenario sc;
  sc.hash = scenario_hash(doc);
  sc.name = doc.value("name", std::string("unnamed"));

  if (!doc.contains("graph") || !doc["graph"].is_object()) {
    throw ScenarioError("scenario: missing 'graph' object");
  }
  const json& g = doc["graph"];
  if (!g.contains("n_vertices") || !g["n_vertices"].is_number_integer()) {
    throw ScenarioError("scenario: graph needs integer 'n_vertices'");
  }
  sc.n_vertices = g["n_vertices"].get<int>();
  if (!g.contains("edges") || !g["edges"].is_array()) {
    throw ScenarioError("scenario: graph needs an 'edges' array");
  }
  for (const auto& e : g["edges"]) {
    if (!e.is_array() || e.size() != 2) {
      throw ScenarioError("scenario: each edge must be a [source, target] pair");
    }
    sc.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  sc.digraph();  // validates vertices, self-loops, duplicates

  sc.agents = parse_blocks(doc.value("agents", json()), sc.n_vertices, "agents");
  sc.controllers =
      parse_blocks(doc.value("controllers", json()), sc.edges.size(),
                   "controllers");
  sc.mode = parse_mode(doc.value("mode", std::string("directed_out")));

  if (doc.contains("sim")) {
    const json& s = doc["sim"];
    sc.sim.dt = s.value("dt", sc.sim.dt);
    sc.sim.t_end = s.value("t_end", sc.sim.t_end);
    sc.sim.record_stride = s.value("record_stride", sc.sim.record_stride);
    sc.sim.convergence_tol = s.value("convergence_tol", sc.sim.convergence_tol);
    sc.sim.dwell_time = s.value("dwell_time", sc.sim.dwell_time);
  }
  sc.sim.validate();

  if (doc.contains("x0")) {
    if (!doc["x0"].is_array()) {
      throw ScenarioError("scenario: 'x0' must be an array");
    }
    sc.x0.resize(doc["x0"].size());
    for (std::size_t i = 0; i < doc["x0"].size(); ++i) {
      sc.x0(i) = doc["x0"][i].get<double>();
    }
  }

  if (doc.contains("outputs")) {
    const json& o = doc["outputs"];
    if (o.contains("csv_path")) sc.csv_path = o["csv_path"].get<std::string>();
    if (o.contains("summary_path")) {
      sc.summary_path = o["summary_path"].get<std::string>();
    }
    if (o.contains("svg_path")) sc.svg_path = o["svg_path"].get<std::string>();
  }
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("scenario: cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ScenarioError("scenario: JSON parse failure in '" + path +
                        "': " + e.what());
  }
  return parse_scenario(doc);
}

NetworkSystem build_system(const Scenario& sc,
                           std::optional<CouplingMode> mode_override) {
  std::vector<AgentModel> agents;
  for (const auto& spec : sc.agents) agents.push_back(build_agent(spec));
  std::vector<ControllerModel> controllers;
  for (const auto& spec : sc.controllers) {
    controllers.push_back(build_controller(spec));
  }
  return assemble(sc.digraph(), std::move(agents), std::move(controllers),
                  mode_override.value_or(sc.mode));
}

}  // namespace netpass
