#include "curvtk/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace curvtk {

using nlohmann::json;

json to_json(const YamabeDatum& y) {
  return json{{"value", y.value}, {"provenance", provenance_name(y.provenance)}};
}

json to_json(const PinchingReport& r) {
  json j{{"kind", "pinching_report"},
         {"theorem", r.theorem},
         {"metric_label", r.metric_label},
         {"n", r.n},
         {"lhs", r.lhs},
         {"threshold", r.threshold},
         {"margin", r.margin},
         {"verdict", verdict_name(r.verdict)},
         {"hypothesis_flags",
          {{"bach_flat", r.bach_flat},
           {"constant_R", r.constant_scalar},
           {"R_positive", r.scalar_positive}}},
         {"path", r.path},
         {"tolerances", {{"boundary", r.boundary_tol}}},
         {"note", r.note},
         {"runtime_ms", r.runtime_ms}};
  j["p"] = r.p ? json(*r.p) : json(nullptr);
  j["yamabe"] = r.yamabe ? to_json(*r.yamabe) : json(nullptr);
  json grid = json::object();
  if (!r.grid_nodes.empty()) {
    grid["nodes"] = r.grid_nodes;
    grid["rules"] = r.grid_rules;
  }
  grid["est_volume_error"] = r.est_volume_error ? json(*r.est_volume_error) : json(nullptr);
  if (r.samples > 0) grid["samples"] = r.samples;
  j["grid"] = grid;
  json extras = json::object();
  for (const auto& [k, v] : r.extras) extras[k] = v;
  j["extras"] = extras;
  return j;
}

json to_json(const SampleStats& s) {
  json witness = json::object();
  for (std::size_t i = 0; i < s.witness.names.size(); ++i)
    witness[s.witness.names[i]] =
        json{{"rank", s.witness.ranks[i]}, {"entries", s.witness.tensors[i]}};
  return json{{"kind", "sample_stats"},
              {"inequality", s.inequality},
              {"n", s.n},
              {"trials", s.trials},
              {"violations", s.violations},
              {"skipped", s.skipped},
              {"max_ratio", s.max_ratio},
              {"argmax_trial", s.argmax_trial},
              {"tol", s.tol},
              {"seed", s.seed},
              {"witness", witness}};
}

json to_json(const SuiteReport& s) {
  json checks = json::array();
  for (const CheckResult& c : s.checks)
    checks.push_back(json{{"name", c.name},
                          {"n", c.n},
                          {"trials", c.trials},
                          {"max_residual", c.max_residual},
                          {"tol", c.tol},
                          {"pass", c.pass}});
  return json{{"kind", "suite_report"},
              {"suite", s.suite},
              {"pass", s.pass},
              {"checks", checks},
              {"runtime_ms", s.runtime_ms}};
}

json to_json(const CurvatureBundle& b) {
  json j{{"kind", "curvature_bundle"},
         {"point", b.point},
         {"n", b.g.n},
         {"metric", b.g.a},
         {"scalar_curvature", b.scalar},
         {"ricci", b.ricci.a},
         {"ricci0", b.ricci0.a},
         {"riemann", b.rm.a},
         {"weyl", b.weyl.a},
         {"norms",
          {{"weyl_sq", norm_sq(b.weyl, b.g)},
           {"ric0_sq", norm_sq(b.ricci0, b.g)},
           {"rm0_sq", norm_sq(b.rm0, b.g)}}},
         {"fd_raw_residual", b.fd_raw_residual}};
  if (b.bach) {
    j["bach"] = b.bach->a;
    j["bach_max_abs"] = max_abs(*b.bach);
  }
  if (b.div) {
    double m = 0.0;
    for (double v : b.div->a) m = std::max(m, std::abs(v));
    j["div_rm0"] = b.div->a;
    j["div_rm0_max_abs"] = m;
  }
  return j;
}

void write_report_atomic(const std::string& path, const json& doc) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file: " + tmp);
    out << doc.dump(2) << "\n";
    if (!out.good()) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("atomic rename failed for: " + path);
}

}  // namespace curvtk
