#include "netpass/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "netpass/random_graph.hpp"

namespace netpass {

using nlohmann::json;

nlohmann::json to_json(const GraphReport& rep) {
  return json{{"balanced", rep.balanced},
              {"globally_reachable_nodes",
               std::vector<int>(rep.globally_reachable_nodes.begin(),
                                rep.globally_reachable_nodes.end())},
              {"strongly_connected", rep.strongly_connected},
              {"max_out_degree", rep.max_out_degree},
              {"max_in_degree", rep.max_in_degree}};
}

nlohmann::json to_json(const SymLoAnalysis& a) {
  std::vector<double> eig(a.eigenvalues.data(),
                          a.eigenvalues.data() + a.eigenvalues.size());
  return json{{"eigenvalues", eig},
              {"min_eigenvalue", a.min_eigenvalue},
              {"kernel_dim_Lo", a.kernel_Lo.cols()},
              {"kernel_dim_LoT", a.kernel_LoT.cols()},
              {"kernels_equal", a.kernels_equal},
              {"feedback_passive", a.feedback_passive},
              {"tolerance", a.tol_used}};
}

nlohmann::json to_json(const Proposition1Verdict& v) {
  return json{{"applicable", v.applicable},
              {"holds", v.holds},
              {"min_eigenvalue", v.min_eigenvalue}};
}

nlohmann::json to_json(const Proposition23Verdict& v) {
  return json{{"applicable", v.applicable},
              {"kernels_equal", v.kernels_equal},
              {"has_zero_eigenvalue", v.has_zero_eigenvalue},
              {"balanced", v.balanced},
              {"consistent", v.consistent}};
}

nlohmann::json to_json(const TheoremCondition& c) {
  return json{{"applicable", c.applicable},
              {"epsilon_min", c.epsilon_min},
              {"alpha_min", c.alpha_min},
              {"max_out_degree", c.max_out_degree},
              {"threshold", c.threshold},
              {"satisfied", c.satisfied}};
}

nlohmann::json to_json(const MarginRecord& m) {
  json quads = json::array();
  for (const auto& q : m.quadratures) {
    quads.push_back(json{{"tau", q.tau},
                         {"lhs", q.lhs},
                         {"rhs", q.rhs},
                         {"initial_storage", q.initial_storage},
                         {"margin", q.margin}});
  }
  return json{{"min_margin", m.min_margin},
              {"min_margin_time", m.min_margin_time},
              {"signal_scale", m.signal_scale},
              {"quadratures", quads}};
}

nlohmann::json to_json(const IndexEstimate& e) {
  json out{{"samples_used", e.samples_used}};
  if (e.estimate) {
    out["estimate"] = *e.estimate;
  } else {
    out["diagnostic"] = e.diagnostic;
  }
  return out;
}

namespace {

void fmt(std::string& line, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  line += ',';
  line += buf;
}

}  // namespace

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << "# scenario_hash=" << traj.scenario_hash
      << " tool_version=" << kToolVersion << "\n";

  const Eigen::Index ns = traj.state.empty() ? 0 : traj.state[0].size();
  const Eigen::Index n = traj.y.empty() ? 0 : traj.y[0].size();
  const Eigen::Index m = traj.mu.empty() ? 0 : traj.mu[0].size();

  std::string header = "t";
  auto cols = [&header](const char* base, Eigen::Index count) {
    for (Eigen::Index i = 1; i <= count; ++i) {
      header += ',';
      header += base;
      header += '_';
      header += std::to_string(i);
    }
  };
  cols("x", ns);
  cols("y", n);
  cols("u", n);
  cols("zeta", m);
  cols("mu", m);
  if (traj.decomposed()) {
    cols("w", n);
    cols("z", n);
  }
  header += ",disagreement_norm";
  out << header << "\n";

  for (std::size_t s = 0; s < traj.size(); ++s) {
    std::string line;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", traj.times[s]);
    line = buf;
    auto dump = [&line](const Eigen::VectorXd& v) {
      for (Eigen::Index i = 0; i < v.size(); ++i) fmt(line, v(i));
    };
    dump(traj.state[s]);
    dump(traj.y[s]);
    dump(traj.u[s]);
    dump(traj.zeta[s]);
    dump(traj.mu[s]);
    if (traj.decomposed()) {
      dump(traj.w[s]);
      dump(traj.z[s]);
    }
    fmt(line, traj.disagreement[s]);
    out << line << "\n";
  }
}

void write_outputs_svg(const std::string& path, const Trajectory& traj) {
  if (traj.size() < 2) throw std::runtime_error("svg: trajectory too short");
  const int width = 860, height = 480;
  const int ml = 60, mr = 150, mt = 20, mb = 45;
  const double pw = width - ml - mr, ph = height - mt - mb;

  const double t0 = traj.times.front(), t1 = traj.times.back();
  double y0 = 0, y1 = 0;
  for (const auto& y : traj.y) {
    y0 = std::min(y0, y.minCoeff());
    y1 = std::max(y1, y.maxCoeff());
  }
  if (y1 - y0 < 1e-12) {
    y0 -= 1.0;
    y1 += 1.0;
  }
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;

  auto px = [&](double t) { return ml + pw * (t - t0) / (t1 - t0); };
  auto py = [&](double v) { return mt + ph * (1.0 - (v - y0) / (y1 - y0)); };

  static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                  "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                  "#bcbd22", "#17becf"};

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // axes
  out << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw
      << "\" y2=\"" << mt + ph << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
      << "\" y2=\"" << mt + ph << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 6; ++i) {
    const double t = t0 + (t1 - t0) * i / 6.0;
    char lab[32];
    std::snprintf(lab, sizeof(lab), "%.3g", t);
    out << "<line x1=\"" << px(t) << "\" y1=\"" << mt + ph << "\" x2=\""
        << px(t) << "\" y2=\"" << mt + ph + 5 << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << px(t) << "\" y=\"" << mt + ph + 20
        << "\" font-size=\"11\" text-anchor=\"middle\">" << lab << "</text>\n";
    const double v = y0 + (y1 - y0) * i / 6.0;
    std::snprintf(lab, sizeof(lab), "%.3g", v);
    out << "<line x1=\"" << ml - 5 << "\" y1=\"" << py(v) << "\" x2=\"" << ml
        << "\" y2=\"" << py(v) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << ml - 8 << "\" y=\"" << py(v) + 4
        << "\" font-size=\"11\" text-anchor=\"end\">" << lab << "</text>\n";
  }
  out << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 8
      << "\" font-size=\"12\" text-anchor=\"middle\">t</text>\n"
      << "<text x=\"16\" y=\"" << mt + ph / 2
      << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << mt + ph / 2 << ")\">y</text>\n";

  const Eigen::Index n = traj.y[0].size();
  for (Eigen::Index i = 0; i < n; ++i) {
    const char* color = palette[i % 10];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t s = 0; s < traj.size(); ++s) {
      out << px(traj.times[s]) << ',' << py(traj.y[s](i)) << ' ';
    }
    out << "\"/>\n";
    const int ly = mt + 14 + 16 * static_cast<int>(i);
    out << "<line x1=\"" << ml + pw + 12 << "\" y1=\"" << ly << "\" x2=\""
        << ml + pw + 36 << "\" y2=\"" << ly << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << ml + pw + 42 << "\" y=\"" << ly + 4
        << "\" font-size=\"11\">y_" << (i + 1) << "</text>\n";
  }
  out << "</svg>\n";
}

PropSuiteResult run_prop_suite(std::uint64_t seed, int count, int n_max) {
  if (count < 1) throw std::invalid_argument("prop suite: count must be >= 1");
  RandomDigraphGen gen(seed, n_max);

  int prop1_fail = 0, prop23_fail = 0, fan_hoffman_fail = 0,
      balanced_kernel_fail = 0;
  json counterexamples = json::array();

  auto record_counterexample = [&](const Digraph& g, const std::string& what) {
    json edges = json::array();
    for (const auto& [s, t] : g.edges()) edges.push_back({s, t});
    counterexamples.push_back(
        json{{"check", what}, {"n_vertices", g.n_vertices()}, {"edges", edges}});
  };

  for (int c = 0; c < count; ++c) {
    const Digraph g = gen.next_reachable();
    const IncidenceSet inc = build_incidence(g);
    const auto a = analyze_sym_Lo(inc);

    const double radius = a.eigenvalues.size() > 0
                              ? a.eigenvalues.cwiseAbs().maxCoeff()
                              : 0.0;
    if (a.min_eigenvalue > 1e-10 * std::max(1.0, radius)) {
      ++prop1_fail;
      record_counterexample(g, "proposition1");
    }
    if (!check_proposition2_3(g).consistent) {
      ++prop23_fail;
      record_counterexample(g, "proposition2_3");
    }

    // Fan-Hoffman: eigenvalues of sym(L_o), descending, are dominated by
    // the singular values of L_o.
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(inc.L_o_d());
    const auto& sv = svd.singularValues();  // descending
    for (int j = 0; j < sv.size(); ++j) {
      const double lam = a.eigenvalues(a.eigenvalues.size() - 1 - j);
      if (lam > sv(j) + 1e-9) {
        ++fan_hoffman_fail;
        record_counterexample(g, "fan_hoffman");
        break;
      }
    }

    if (is_balanced(inc)) {
      const Eigen::VectorXd ones = Eigen::VectorXd::Ones(g.n_vertices());
      if ((a.sym_Lo * ones).norm() > 1e-12 * g.n_vertices()) {
        ++balanced_kernel_fail;
        record_counterexample(g, "balanced_ones_kernel");
      }
    }
  }

  PropSuiteResult result;
  result.all_passed = prop1_fail == 0 && prop23_fail == 0 &&
                      fan_hoffman_fail == 0 && balanced_kernel_fail == 0;
  result.report = json{{"seed", seed},
                       {"count", count},
                       {"n_max", n_max},
                       {"proposition1_failures", prop1_fail},
                       {"proposition2_3_failures", prop23_fail},
                       {"fan_hoffman_failures", fan_hoffman_fail},
                       {"balanced_ones_kernel_failures", balanced_kernel_fail},
                       {"counterexamples", counterexamples},
                       {"all_passed", result.all_passed},
                       {"tool_version", kToolVersion}};
  return result;
}

}  // namespace netpass
