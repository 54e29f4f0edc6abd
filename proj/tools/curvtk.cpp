#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "curvtk/audit.hpp"
#include "curvtk/constants.hpp"
#include "curvtk/engine.hpp"
#include "curvtk/inequality.hpp"
#include "curvtk/report.hpp"
#include "curvtk/suites.hpp"
#include "curvtk/zoo.hpp"

using nlohmann::json;

namespace {

std::vector<double> parse_doubles(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

std::vector<int> parse_ints(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

curvtk::ZooEntry require_metric(const std::string& label) {
  auto entry = curvtk::parse_zoo_label(label);
  if (!entry) throw std::domain_error("unknown metric label: " + label);
  return std::move(*entry);
}

void emit(const json& doc, const std::string& out_path) {
  if (!out_path.empty()) curvtk::write_report_atomic(out_path, doc);
}

struct CommonOpts {
  std::string out;
  double fd_step = 1e-2;
  int fd_order = 4;
  bool richardson = true;
  std::string grid;
  double boundary_tol = 1e-8;
  std::string path = "closed-form";
  int samples = 200;
  double yamabe = 0.0;
  bool yamabe_set = false;
};

curvtk::FdConfig fd_config(const CommonOpts& c) {
  if (c.fd_order != 2 && c.fd_order != 4)
    throw std::domain_error("--fd-order must be 2 or 4");
  if (!(c.fd_step > 0)) throw std::domain_error("--fd-step must be positive");
  return {c.fd_step, c.fd_order, c.richardson};
}

curvtk::AuditOptions audit_options(const CommonOpts& c) {
  curvtk::AuditOptions opt;
  if (c.path == "closed-form")
    opt.path = curvtk::EvalPath::ClosedForm;
  else if (c.path == "quadrature")
    opt.path = curvtk::EvalPath::Quadrature;
  else
    throw std::domain_error("--path must be closed-form or quadrature");
  if (!c.grid.empty()) opt.grid.nodes = parse_ints(c.grid);
  opt.samples = c.samples;
  opt.boundary_tol = c.boundary_tol;
  opt.fd = fd_config(c);
  if (c.yamabe_set) opt.user_yamabe = c.yamabe;
  return opt;
}

int cmd_zoo_list(const std::string& out_path) {
  json list = json::array();
  for (const curvtk::ZooEntry& e : curvtk::standard_zoo()) {
    json j{{"label", e.label}, {"n", e.chart.n}};
    json exact = json::object();
    if (e.exact.scalar) exact["R"] = *e.exact.scalar;
    if (e.exact.ric0_sq) exact["ric0_sq"] = *e.exact.ric0_sq;
    if (e.exact.weyl_sq) exact["weyl_sq"] = *e.exact.weyl_sq;
    if (e.exact.volume) exact["volume"] = *e.exact.volume;
    if (e.exact.yamabe) exact["yamabe"] = *e.exact.yamabe;
    if (e.exact.euler) exact["euler"] = *e.exact.euler;
    j["exact"] = exact;
    j["flags"] = json{{"einstein", e.chart.is_einstein},
                      {"conformally_flat", e.chart.is_conformally_flat},
                      {"constant_scalar", e.chart.is_constant_scalar}};
    list.push_back(j);
    std::printf("%-32s n=%d", e.label.c_str(), e.chart.n);
    if (e.exact.scalar) std::printf("  R=%g", *e.exact.scalar);
    if (e.exact.volume) std::printf("  vol=%g", *e.exact.volume);
    if (e.exact.yamabe) std::printf("  Y=%g", *e.exact.yamabe);
    std::printf("\n");
  }
  json doc{{"schema_version", curvtk::kSchemaVersion},
           {"kind", "zoo_list"},
           {"inputs", json::object()},
           {"entries", list}};
  emit(doc, out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"curvtk: Bach tensors, curvature decompositions and pinching audits"};
  app.require_subcommand(1);

  CommonOpts common;
  std::string metric, point_csv, theorem, inequality, suite, sign = "nonneg",
                                                            branch = "auto",
                                                            dist = "gaussian";
  int n = 0;
  double p = 0.0;
  bool p_set = false;
  long trials = 100000;
  std::uint64_t seed = 0;
  double k_const = 0.0;
  bool with_bach = false, with_div = false;
  double tol_campaign = 1e-12;

  auto add_common = [&](CLI::App* cmd, bool with_grid) {
    cmd->add_option("--out", common.out, "write the full JSON report here");
    cmd->add_option("--fd-step", common.fd_step, "finite-difference step");
    cmd->add_option("--fd-order", common.fd_order, "finite-difference order (2 or 4)");
    cmd->add_flag("--richardson,!--no-richardson", common.richardson,
                  "Richardson extrapolation");
    if (with_grid) {
      cmd->add_option("--grid", common.grid, "per-axis node counts, e.g. 8,12,12");
      cmd->add_option("--path", common.path, "closed-form | quadrature");
      cmd->add_option("--samples", common.samples, "pointwise sample count");
      cmd->add_option("--tol.boundary", common.boundary_tol,
                      "relative boundary-verdict tolerance");
      cmd->add_option("--yamabe", common.yamabe, "user-supplied Yamabe value")
          ->each([&](const std::string&) { common.yamabe_set = true; });
    }
  };

  CLI::App* zoo_cmd = app.add_subcommand("zoo-list", "list the metric zoo");
  zoo_cmd->add_option("--out", common.out, "write the full JSON report here");

  CLI::App* curv_cmd = app.add_subcommand("curvature", "curvature bundle at a point");
  curv_cmd->add_option("--metric", metric, "zoo label")->required();
  curv_cmd->add_option("--point", point_csv, "comma-separated coordinates")->required();
  curv_cmd->add_flag("--with-bach", with_bach, "compute the Bach tensor");
  curv_cmd->add_flag("--with-div", with_div, "compute div Rm0");
  add_common(curv_cmd, false);

  CLI::App* audit_cmd = app.add_subcommand("audit", "pinching-theorem hypothesis audit");
  audit_cmd->add_option("--theorem", theorem, "thm11|thm14|cor16|cgb|gursky|thm18|cor19")
      ->required();
  audit_cmd->add_option("--metric", metric, "zoo label")->required();
  audit_cmd->add_option("--p", p, "L^p exponent (thm11)")->each([&](const std::string&) {
    p_set = true;
  });
  add_common(audit_cmd, true);

  CLI::App* sample_cmd = app.add_subcommand("sample", "randomized inequality campaign");
  sample_cmd->add_option("--inequality", inequality, "inequality id")->required();
  sample_cmd->add_option("--n", n, "dimension")->required();
  sample_cmd->add_option("--trials", trials, "trial count");
  sample_cmd->add_option("--seed", seed, "campaign seed");
  sample_cmd->add_option("--distribution", dist, "gaussian | spiked");
  sample_cmd->add_option("--K", k_const, "constant for the weyl-ricci-k family");
  sample_cmd->add_option("--tol.campaign", tol_campaign, "violation tolerance");
  sample_cmd->add_option("--out", common.out, "write the full JSON report here");

  CLI::App* const_cmd = app.add_subcommand("constants", "pinching constants for (n, p)");
  std::string only;
  const_cmd->add_option("--n", n, "dimension")->required();
  const_cmd->add_option("--p", p, "L^p exponent")->each([&](const std::string&) {
    p_set = true;
  });
  const_cmd->add_option("--sign", sign, "scalar curvature sign: nonneg | neg");
  const_cmd->add_option("--branch", branch,
                        "epsilon branch: auto | p-half-n | middle | large-p");
  const_cmd->add_option("--only", only, "request one constant: C|A|E|epsilon|C1|C2|C3");
  const_cmd->add_option("--out", common.out, "write the full JSON report here");

  long verify_trials = 1000;
  CLI::App* verify_cmd = app.add_subcommand("verify", "identity suites");
  verify_cmd->add_option("--suite", suite, "algebra | engine")->required();
  verify_cmd->add_option("--trials", verify_trials, "random tensors per dimension");
  verify_cmd->add_option("--seed", seed, "suite seed");
  verify_cmd->add_option("--out", common.out, "write the full JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (zoo_cmd->parsed()) return cmd_zoo_list(common.out);

    if (curv_cmd->parsed()) {
      curvtk::ZooEntry entry = require_metric(metric);
      curvtk::Point x = parse_doubles(point_csv);
      if (int(x.size()) != entry.chart.n)
        throw std::domain_error("--point has wrong dimension for " + metric);
      curvtk::BundleOptions opts;
      opts.with_bach = with_bach;
      opts.with_div = with_div;
      curvtk::CurvatureBundle b =
          curvtk::bundle(entry.chart, x, fd_config(common), opts);
      json doc = curvtk::to_json(b);
      doc["schema_version"] = curvtk::kSchemaVersion;
      doc["inputs"] = json{{"command", "curvature"},
                           {"metric", metric},
                           {"point", x},
                           {"fd_step", common.fd_step},
                           {"fd_order", common.fd_order},
                           {"richardson", common.richardson},
                           {"with_bach", with_bach},
                           {"with_div", with_div}};
      std::printf("%s at point: R=%.12g  |W|^2=%.12g  |Ric0|^2=%.12g\n", metric.c_str(),
                  b.scalar, curvtk::norm_sq(b.weyl, b.g), curvtk::norm_sq(b.ricci0, b.g));
      if (b.bach) std::printf("max |B_ij| = %.6g\n", curvtk::max_abs(*b.bach));
      emit(doc, common.out);
      return 0;
    }

    if (audit_cmd->parsed()) {
      curvtk::ZooEntry entry = require_metric(metric);
      curvtk::AuditOptions opt = audit_options(common);
      curvtk::PinchingReport rep;
      if (theorem == "thm11") {
        if (!p_set) p = entry.chart.n / 2.0;
        rep = curvtk::audit_thm11(entry, p, opt);
      } else if (theorem == "thm14") {
        rep = curvtk::audit_thm14(entry, opt);
      } else if (theorem == "cor16") {
        rep = curvtk::audit_cor16(entry, opt);
      } else if (theorem == "cgb") {
        rep = curvtk::cgb_check(entry, opt);
      } else if (theorem == "gursky") {
        rep = curvtk::gursky_check(entry, opt);
      } else if (theorem == "thm18") {
        rep = curvtk::audit_thm18(entry, opt);
      } else if (theorem == "cor19") {
        rep = curvtk::audit_cor19(entry, opt);
      } else {
        throw std::domain_error("unknown theorem id: " + theorem);
      }
      json doc = curvtk::to_json(rep);
      doc["schema_version"] = curvtk::kSchemaVersion;
      doc["inputs"] = json{{"command", "audit"},     {"theorem", theorem},
                           {"metric", metric},       {"p", p_set ? json(p) : json(nullptr)},
                           {"path", common.path},    {"grid", common.grid},
                           {"samples", common.samples},
                           {"boundary_tol", common.boundary_tol}};
      std::printf("%s on %s: lhs=%.12g threshold=%.12g margin=%.3g -> %s\n",
                  rep.theorem.c_str(), rep.metric_label.c_str(), rep.lhs, rep.threshold,
                  rep.margin, curvtk::verdict_name(rep.verdict));
      emit(doc, common.out);
      return rep.verdict == curvtk::Verdict::NotSatisfied ? 1 : 0;
    }

    if (sample_cmd->parsed()) {
      curvtk::CampaignConfig cfg;
      cfg.inequality = inequality;
      cfg.n = n;
      cfg.trials = trials;
      cfg.seed = seed;
      cfg.k = k_const;
      cfg.tol = tol_campaign;
      if (dist == "gaussian")
        cfg.dist = curvtk::Distribution::Gaussian;
      else if (dist == "spiked")
        cfg.dist = curvtk::Distribution::Spiked;
      else
        throw std::domain_error("--distribution must be gaussian or spiked");
      curvtk::SampleStats stats = curvtk::run_campaign(cfg);
      json doc = curvtk::to_json(stats);
      doc["schema_version"] = curvtk::kSchemaVersion;
      doc["inputs"] = json{{"command", "sample"}, {"inequality", inequality},
                           {"n", n},              {"trials", trials},
                           {"seed", seed},        {"distribution", dist},
                           {"K", k_const},        {"tol", tol_campaign}};
      std::printf("%s n=%d trials=%ld: violations=%ld skipped=%ld max_ratio=%.15g\n",
                  inequality.c_str(), n, trials, stats.violations, stats.skipped,
                  stats.max_ratio);
      emit(doc, common.out);
      return stats.violations > 0 ? 1 : 0;
    }

    if (const_cmd->parsed()) {
      namespace cc = curvtk::constants;
      cc::ScalarSign s;
      if (sign == "nonneg")
        s = cc::ScalarSign::NonNegative;
      else if (sign == "neg")
        s = cc::ScalarSign::Negative;
      else
        throw std::domain_error("--sign must be nonneg or neg");

      auto epsilon_value = [&]() {
        if (branch == "auto") {
          cc::Epsilon eps = cc::epsilon_pinching(n, p);
          return std::pair<double, std::string>{eps.value,
                                                cc::epsilon_branch_name(eps.branch)};
        }
        cc::EpsilonBranch b;
        if (branch == "p-half-n")
          b = cc::EpsilonBranch::PEqualsHalfN;
        else if (branch == "middle")
          b = cc::EpsilonBranch::Middle;
        else if (branch == "large-p")
          b = cc::EpsilonBranch::LargeP;
        else
          throw std::domain_error("unknown --branch: " + branch);
        return std::pair<double, std::string>{cc::epsilon_branch_value(n, p, b), branch};
      };

      json values;
      if (only.empty()) {
        values["C"] = cc::c_curvature_estimate(n);
        values["A"] = cc::a_curvature_estimate(n, s);
        values["E"] = cc::e_divergence_estimate(n);
        if (n >= 4) values["C1"] = cc::c1_weyl_ricci_pinching(n);
        if (n >= 4) values["C2"] = cc::c2_weyl_estimate(n);
        if (n == 4 || n == 5) values["C3"] = cc::c3_weitzenbock(n);
        if (p_set) {
          auto [eps, br] = epsilon_value();
          values["epsilon"] = eps;
          values["epsilon_branch"] = br;
        }
      } else if (only == "C") {
        values["C"] = cc::c_curvature_estimate(n);
      } else if (only == "A") {
        values["A"] = cc::a_curvature_estimate(n, s);
      } else if (only == "E") {
        values["E"] = cc::e_divergence_estimate(n);
      } else if (only == "C1") {
        values["C1"] = cc::c1_weyl_ricci_pinching(n);
      } else if (only == "C2") {
        values["C2"] = cc::c2_weyl_estimate(n);
      } else if (only == "C3") {
        values["C3"] = cc::c3_weitzenbock(n);
      } else if (only == "epsilon") {
        if (!p_set) throw std::domain_error("--only epsilon needs --p");
        auto [eps, br] = epsilon_value();
        values["epsilon"] = eps;
        values["epsilon_branch"] = br;
      } else {
        throw std::domain_error("unknown constant for --only: " + only);
      }
      json doc{{"schema_version", curvtk::kSchemaVersion},
               {"kind", "constants"},
               {"inputs",
                json{{"command", "constants"},
                     {"n", n},
                     {"p", p_set ? json(p) : json(nullptr)},
                     {"sign", sign},
                     {"branch", branch},
                     {"only", only}}},
               {"values", values}};
      for (auto& [key, val] : values.items())
        if (val.is_number())
          std::printf("%-16s %.17g\n", key.c_str(), val.get<double>());
        else
          std::printf("%-16s %s\n", key.c_str(), val.get<std::string>().c_str());
      emit(doc, common.out);
      return 0;
    }

    if (verify_cmd->parsed()) {
      curvtk::SuiteReport rep;
      if (suite == "algebra")
        rep = curvtk::run_algebra_suite(verify_trials, seed);
      else if (suite == "engine")
        rep = curvtk::run_engine_suite();
      else
        throw std::domain_error("unknown suite id: " + suite);
      for (const curvtk::CheckResult& c : rep.checks)
        std::printf("[%s] %-34s n=%d residual=%.3e (tol %.0e)\n",
                    c.pass ? "PASS" : "FAIL", c.name.c_str(), c.n, c.max_residual, c.tol);
      std::printf("suite %s: %s (%.0f ms)\n", rep.suite.c_str(),
                  rep.pass ? "PASS" : "FAIL", rep.runtime_ms);
      json doc = curvtk::to_json(rep);
      doc["schema_version"] = curvtk::kSchemaVersion;
      doc["inputs"] = json{{"command", "verify"},
                           {"suite", suite},
                           {"trials", verify_trials},
                           {"seed", seed}};
      emit(doc, common.out);
      return rep.pass ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
