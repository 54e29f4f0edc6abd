#include "curvtk/audit.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "curvtk/constants.hpp"
#include "curvtk/linalg.hpp"

namespace curvtk {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// ---------------------------------------------------------------- quadrature

void gauss_legendre(int k, std::vector<double>& x, std::vector<double>& w) {
  x.assign(k, 0.0);
  w.assign(k, 0.0);
  for (int i = 0; i < (k + 1) / 2; ++i) {
    double t = std::cos(M_PI * (i + 0.75) / (k + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = t;
      for (int j = 2; j <= k; ++j) {
        double p2 = ((2.0 * j - 1.0) * t * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = k * (t * p1 - p0) / (t * t - 1.0);
      double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    x[i] = -t;
    x[k - 1 - i] = t;
    double wi = 2.0 / ((1.0 - t * t) * dp * dp);
    w[i] = wi;
    w[k - 1 - i] = wi;
  }
}

struct AxisRuleSet {
  std::vector<std::vector<double>> xs, ws;
  std::vector<std::string> rules;
  std::vector<int> counts;
};

AxisRuleSet build_rules(const MetricChart& chart, const QuadratureGrid& grid) {
  if (grid.nodes.empty())
    throw std::invalid_argument("quadrature grid has no node counts");
  AxisRuleSet rs;
  for (int a = 0; a < chart.n; ++a) {
    int k = grid.nodes.size() == 1 ? grid.nodes[0] : grid.nodes.at(a);
    if (k < 2) throw std::invalid_argument("quadrature grid needs >= 2 nodes per axis");
    const Axis& ax = chart.axes[a];
    std::vector<double> x, w;
    if (ax.kind == Axis::Kind::Periodic) {
      // midpoint rule; spectrally accurate for smooth periodic integrands
      for (int i = 0; i < k; ++i) {
        x.push_back(ax.a + (i + 0.5) * ax.length / k);
        w.push_back(ax.length / k);
      }
      rs.rules.push_back("trapezoid-periodic");
    } else if (ax.kind == Axis::Kind::Interval) {
      gauss_legendre(k, x, w);
      for (int i = 0; i < k; ++i) {
        x[i] = 0.5 * (ax.b - ax.a) * x[i] + 0.5 * (ax.a + ax.b);
        w[i] *= 0.5 * (ax.b - ax.a);
      }
      rs.rules.push_back("gauss-legendre");
    } else {
      // real line: u in (-pi/2, pi/2), x = tan u, dx = sec^2 u du
      gauss_legendre(k, x, w);
      for (int i = 0; i < k; ++i) {
        double u = 0.5 * M_PI * x[i];
        double c = std::cos(u);
        x[i] = std::tan(u);
        w[i] *= 0.5 * M_PI / (c * c);
      }
      rs.rules.push_back("gauss-legendre");
    }
    rs.counts.push_back(k);
    rs.xs.push_back(std::move(x));
    rs.ws.push_back(std::move(w));
  }
  return rs;
}

constexpr int kMaxDim = 12;

bool chol_inplace(double* m, int n) {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      double s = m[i * n + j];
      for (int k = 0; k < j; ++k) s -= m[i * n + k] * m[j * n + k];
      if (i == j) {
        if (!(s > 0.0)) return false;
        m[i * n + i] = std::sqrt(s);
      } else {
        m[i * n + j] = s / m[j * n + j];
      }
    }
  return true;
}

double sqrt_det_metric(const Sym2& g, bool diagonal) {
  const int n = g.n;
  if (diagonal) {
    double d = 1.0;
    for (int i = 0; i < n; ++i) d *= g(i, i);
    return std::sqrt(d);
  }
  double buf[kMaxDim * kMaxDim];
  std::copy(g.a.begin(), g.a.end(), buf);
  if (!chol_inplace(buf, n)) throw std::domain_error("quadrature: metric not positive definite");
  double d = 1.0;
  for (int i = 0; i < n; ++i) d *= buf[i * n + i];
  return d;
}

double pow_abs(double v, double p) {
  v = std::abs(v);
  if (p == 1.0) return v;
  if (p == 2.0) return v * v;
  if (p == 3.0) return v * v * v;
  if (p == 4.0) return (v * v) * (v * v);
  return std::pow(v, p);
}

// Streams the tensor-product grid; accumulates integral(s) and the volume in
// one pass. Chunk partial sums are reduced in fixed order so results do not
// depend on the worker count.
template <typename NodeFn>
std::vector<double> integrate_grid(const MetricChart& chart, const AxisRuleSet& rs,
                                   int n_acc, const NodeFn& node_fn) {
  const int n = chart.n;
  std::size_t total = 1;
  for (int a = 0; a < n; ++a) total *= std::size_t(rs.counts[a]);

  const int n_chunks = int(std::min<std::size_t>(256, total));
  std::vector<std::vector<double>> partials(n_chunks, std::vector<double>(n_acc, 0.0));

  auto run_chunk = [&](int c) {
    const std::size_t lo = total * std::size_t(c) / n_chunks;
    const std::size_t hi = total * std::size_t(c + 1) / n_chunks;
    Point x(n);
    Sym2 g(n);
    std::vector<double> acc(n_acc, 0.0);
    for (std::size_t idx = lo; idx < hi; ++idx) {
      std::size_t rem = idx;
      double wt = 1.0;
      for (int a = n - 1; a >= 0; --a) {
        const std::size_t k = std::size_t(rs.counts[a]);
        const std::size_t q = rem % k;
        rem /= k;
        x[a] = rs.xs[a][q];
        wt *= rs.ws[a][q];
      }
      chart.metric_at(x, g);
      node_fn(x, g, wt, acc.data());
    }
    partials[c] = std::move(acc);
  };

  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, 8);
  if (workers <= 1 || total < 4096) {
    for (int c = 0; c < n_chunks; ++c) run_chunk(c);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < workers; ++i)
      pool.emplace_back([&] {
        for (int c = next.fetch_add(1); c < n_chunks; c = next.fetch_add(1)) run_chunk(c);
      });
    for (auto& t : pool) t.join();
  }

  std::vector<double> out(n_acc, 0.0);
  for (int c = 0; c < n_chunks; ++c)
    for (int q = 0; q < n_acc; ++q) out[q] += partials[c][q];
  return out;
}

// ------------------------------------------------- pointwise norm evaluation

struct PointNorms {
  double scalar = 0.0;
  double ric0_sq = 0.0;
  double weyl_sq = 0.0;
};

// |S|_g^2 and tr_g S without heap allocation; g assumed positive definite.
void metric_norms_sym2(const Sym2& s, const Sym2& g, bool diagonal, double& norm2,
                       double& tr) {
  const int n = s.n;
  norm2 = 0.0;
  tr = 0.0;
  if (diagonal) {
    double inv[kMaxDim];
    for (int i = 0; i < n; ++i) inv[i] = 1.0 / g(i, i);
    for (int i = 0; i < n; ++i) {
      tr += s(i, i) * inv[i];
      for (int j = 0; j < n; ++j) norm2 += s(i, j) * s(i, j) * inv[i] * inv[j];
    }
    return;
  }
  double l[kMaxDim * kMaxDim];
  std::copy(g.a.begin(), g.a.end(), l);
  if (!chol_inplace(l, n)) throw std::domain_error("metric not positive definite");
  // A = L^-1 S L^-T; norm2 = |A|^2, tr = tr A
  double y[kMaxDim * kMaxDim];
  std::copy(s.a.begin(), s.a.end(), y);
  // forward solve L Y = S, column-wise (Y = L^-1 S)
  for (int col = 0; col < n; ++col)
    for (int i = 0; i < n; ++i) {
      double v = y[i * n + col];
      for (int k = 0; k < i; ++k) v -= l[i * n + k] * y[k * n + col];
      y[i * n + col] = v / l[i * n + i];
    }
  // now A = Y L^-T: solve A L^T = Y, i.e. rows of A: L (A row)^T = (Y row)^T
  for (int row = 0; row < n; ++row)
    for (int i = 0; i < n; ++i) {
      double v = y[row * n + i];
      for (int k = 0; k < i; ++k) v -= l[i * n + k] * y[row * n + k];
      y[row * n + i] = v / l[i * n + i];
    }
  for (int i = 0; i < n; ++i) {
    tr += y[i * n + i];
    for (int j = 0; j < n; ++j) norm2 += y[i * n + j] * y[i * n + j];
  }
}

double metric_norm_sq_curv4_diag(const Curv4& t, const Sym2& g) {
  const int n = t.n;
  double inv[kMaxDim];
  for (int i = 0; i < n; ++i) inv[i] = 1.0 / g(i, i);
  double acc = 0.0;
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double c = inv[i] * inv[j] * inv[k];
        for (int l = 0; l < n; ++l, ++idx) {
          const double v = t.a[idx];
          acc += v * v * c * inv[l];
        }
      }
  return acc;
}

class NormEvaluator {
 public:
  NormEvaluator(const MetricChart& chart, const FdConfig& fd, bool need_weyl)
      : chart_(chart), fd_(fd), need_weyl_(need_weyl) {
    analytic_ = bool(chart.ricci_at) || bool(chart.riemann_at);
    weyl_analytic_ = bool(chart.riemann_at);
  }

  PointNorms at(const Point& x, const Sym2& g, Sym2& ric_buf, Curv4& rm_buf) const {
    PointNorms out;
    if (!analytic_ || (need_weyl_ && !weyl_analytic_)) {
      // Far out on an unbounded chart the metric varies on the coordinate
      // scale |x|, so the difference step follows it to keep the relative
      // truncation error flat across the chart.
      FdConfig local = fd_;
      double scale = 1.0;
      for (int a = 0; a < chart_.n; ++a)
        if (chart_.axes[a].kind == Axis::Kind::Line)
          scale = std::max(scale, std::abs(x[a]));
      local.step = fd_.step * scale;
      BundleOptions opts;
      CurvatureBundle b = bundle(chart_, x, local, opts);
      out.scalar = b.scalar;
      out.ric0_sq = norm_sq(b.ricci0, b.g);
      if (need_weyl_) out.weyl_sq = norm_sq(b.weyl, b.g);
      return out;
    }
    if (chart_.ricci_at)
      chart_.ricci_at(x, ric_buf);
    else {
      chart_.riemann_at(x, rm_buf);
      ric_buf = ricci_contraction(rm_buf, g);
    }
    double ric_sq, tr;
    metric_norms_sym2(ric_buf, g, chart_.metric_is_diagonal, ric_sq, tr);
    out.scalar = chart_.scalar_at ? chart_.scalar_at(x) : tr;
    out.ric0_sq = std::max(0.0, ric_sq - out.scalar * out.scalar / chart_.n);
    if (need_weyl_) {
      // |W|^2 = |Rm|^2 - 4/(n-2) |Ric0|^2 - 2 R^2/(n(n-1)) by orthogonality
      chart_.riemann_at(x, rm_buf);
      const int n = chart_.n;
      double rm_sq;
      if (chart_.metric_is_diagonal) {
        rm_sq = metric_norm_sq_curv4_diag(rm_buf, g);
      } else {
        rm_sq = norm_sq(rm_buf, g);
      }
      out.weyl_sq = std::max(0.0, rm_sq - 4.0 / (n - 2) * out.ric0_sq -
                                      2.0 * out.scalar * out.scalar / (n * (n - 1.0)));
    }
    return out;
  }

 private:
  const MetricChart& chart_;
  FdConfig fd_;
  bool need_weyl_;
  bool analytic_ = false;
  bool weyl_analytic_ = false;
};

double selector_value(Selector sel, int n, const PointNorms& pn) {
  switch (sel) {
    case Selector::Rm0:
      return std::sqrt(pn.weyl_sq + 4.0 / (n - 2) * pn.ric0_sq);
    case Selector::Ric0:
      return std::sqrt(pn.ric0_sq);
    case Selector::W:
      return std::sqrt(pn.weyl_sq);
    case Selector::WPlusKn:
      return std::sqrt(pn.weyl_sq + n / (2.0 * (n - 2)) * pn.ric0_sq);
    case Selector::R2Density:
      return pn.scalar * pn.scalar;
  }
  return 0.0;
}

bool selector_needs_weyl(Selector sel) {
  return sel == Selector::Rm0 || sel == Selector::W || sel == Selector::WPlusKn;
}

}  // namespace

std::optional<Selector> parse_selector(const std::string& name) {
  if (name == "rm0") return Selector::Rm0;
  if (name == "ric0") return Selector::Ric0;
  if (name == "weyl") return Selector::W;
  if (name == "weyl-plus-kn") return Selector::WPlusKn;
  if (name == "r2") return Selector::R2Density;
  return std::nullopt;
}

const char* selector_name(Selector s) {
  switch (s) {
    case Selector::Rm0: return "rm0";
    case Selector::Ric0: return "ric0";
    case Selector::W: return "weyl";
    case Selector::WPlusKn: return "weyl-plus-kn";
    case Selector::R2Density: return "r2";
  }
  return "?";
}

const char* provenance_name(YamabeProvenance p) {
  switch (p) {
    case YamabeProvenance::RoundSphereExact: return "round-sphere-exact";
    case YamabeProvenance::YamabeMetricRVol: return "yamabe-metric-RVol";
    case YamabeProvenance::UserSupplied: return "user-supplied";
  }
  return "?";
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Satisfied: return "hypothesis-satisfied";
    case Verdict::Boundary: return "boundary";
    case Verdict::NotSatisfied: return "not-satisfied";
  }
  return "?";
}

YamabeDatum yamabe_value(const ZooEntry& entry) {
  if (entry.yamabe_cert == YamabeCert::RoundSphere && entry.exact.yamabe)
    return {*entry.exact.yamabe, YamabeProvenance::RoundSphereExact};
  if (entry.yamabe_cert == YamabeCert::ProductSmallT && entry.exact.yamabe)
    return {*entry.exact.yamabe, YamabeProvenance::YamabeMetricRVol};
  throw std::domain_error(
      "yamabe_value: metric '" + entry.label +
      "' carries no certified Yamabe value; pass one explicitly "
      "(the Yamabe problem is not solved here)");
}

QuadratureGrid default_grid(const ZooEntry& entry) {
  const int n = entry.chart.n;
  int line_nodes = n <= 4 ? 20 : (n == 5 ? 14 : (n == 6 ? 12 : 10));
  QuadratureGrid grid;
  for (const Axis& ax : entry.chart.axes)
    grid.nodes.push_back(ax.kind == Axis::Kind::Periodic ? 8 : line_nodes);
  return grid;
}

LpResult lp_norm_quadrature(const ZooEntry& entry, Selector sel, double p,
                            const QuadratureGrid& grid, const FdConfig& fd) {
  if (p < 1.0) throw std::invalid_argument("lp_norm: need p >= 1");
  const MetricChart& chart = entry.chart;
  AxisRuleSet rules = build_rules(chart, grid.nodes.empty() ? default_grid(entry) : grid);
  NormEvaluator eval(chart, fd, selector_needs_weyl(sel));
  const bool diag = chart.metric_is_diagonal;
  const int n = chart.n;

  auto node_fn = [&](const Point& x, const Sym2& g, double wt, double* acc) {
    thread_local Sym2 ric_buf;
    thread_local Curv4 rm_buf;
    if (ric_buf.n != n) ric_buf.resize(n);
    if (rm_buf.n != n) rm_buf.resize(n);
    const double dv = wt * sqrt_det_metric(g, diag);
    PointNorms pn = eval.at(x, g, ric_buf, rm_buf);
    acc[0] += dv * pow_abs(selector_value(sel, n, pn), p);
    acc[1] += dv;
  };
  std::vector<double> acc = integrate_grid(chart, rules, 2, node_fn);

  LpResult res;
  res.volume = acc[1];
  res.value = std::pow(acc[0], 1.0 / p);
  if (entry.exact.volume) {
    res.volume_error = std::abs(res.volume - *entry.exact.volume) / *entry.exact.volume;
    if (*res.volume_error > 1e-3)
      throw std::runtime_error("lp_norm: grid too coarse; volume self-check off by " +
                               std::to_string(*res.volume_error * 100) + "%");
  }
  return res;
}

double lp_norm_exact(const ZooEntry& entry, Selector sel, double p) {
  if (p < 1.0) throw std::invalid_argument("lp_norm: need p >= 1");
  const ExactData& e = entry.exact;
  if (!e.volume || !e.scalar || !e.ric0_sq || !e.weyl_sq)
    throw std::domain_error("lp_norm_exact: entry '" + entry.label +
                            "' has no closed-form curvature data");
  PointNorms pn{*e.scalar, *e.ric0_sq, *e.weyl_sq};
  return selector_value(sel, entry.chart.n, pn) * std::pow(*e.volume, 1.0 / p);
}

namespace {

// int |W|^2 dV, int |Ric0|^2 dV, int R^2 dV and the volume, one pass.
struct CurvatureIntegrals {
  double w2 = 0.0, ric2 = 0.0, r2 = 0.0, volume = 0.0;
  std::optional<double> volume_error;
};

CurvatureIntegrals curvature_integrals_quadrature(const ZooEntry& entry,
                                                  const QuadratureGrid& grid,
                                                  const FdConfig& fd) {
  const MetricChart& chart = entry.chart;
  AxisRuleSet rules = build_rules(chart, grid.nodes.empty() ? default_grid(entry) : grid);
  NormEvaluator eval(chart, fd, true);
  const bool diag = chart.metric_is_diagonal;
  const int n = chart.n;
  auto node_fn = [&](const Point& x, const Sym2& g, double wt, double* acc) {
    thread_local Sym2 ric_buf;
    thread_local Curv4 rm_buf;
    if (ric_buf.n != n) ric_buf.resize(n);
    if (rm_buf.n != n) rm_buf.resize(n);
    const double dv = wt * sqrt_det_metric(g, diag);
    PointNorms pn = eval.at(x, g, ric_buf, rm_buf);
    acc[0] += dv * pn.weyl_sq;
    acc[1] += dv * pn.ric0_sq;
    acc[2] += dv * pn.scalar * pn.scalar;
    acc[3] += dv;
  };
  std::vector<double> a = integrate_grid(chart, rules, 4, node_fn);
  CurvatureIntegrals ci{a[0], a[1], a[2], a[3], std::nullopt};
  if (entry.exact.volume) {
    ci.volume_error = std::abs(ci.volume - *entry.exact.volume) / *entry.exact.volume;
    if (*ci.volume_error > 1e-3)
      throw std::runtime_error("quadrature grid too coarse; volume self-check off by " +
                               std::to_string(*ci.volume_error * 100) + "%");
  }
  return ci;
}

CurvatureIntegrals curvature_integrals_exact(const ZooEntry& entry) {
  const ExactData& e = entry.exact;
  if (!e.volume || !e.scalar || !e.ric0_sq || !e.weyl_sq)
    throw std::domain_error("closed-form path: entry '" + entry.label +
                            "' has no exact curvature data");
  CurvatureIntegrals ci;
  ci.w2 = *e.weyl_sq * *e.volume;
  ci.ric2 = *e.ric0_sq * *e.volume;
  ci.r2 = *e.scalar * *e.scalar * *e.volume;
  ci.volume = *e.volume;
  return ci;
}

CurvatureIntegrals curvature_integrals(const ZooEntry& entry, const AuditOptions& opt) {
  return opt.path == EvalPath::ClosedForm
             ? curvature_integrals_exact(entry)
             : curvature_integrals_quadrature(entry, opt.grid, opt.fd);
}

Verdict verdict_of(double lhs, double threshold, double tol) {
  const double margin = threshold - lhs;
  const double scale = std::max({std::abs(threshold), std::abs(lhs), 1e-300});
  if (std::abs(margin) <= tol * scale) return Verdict::Boundary;
  return margin > 0 ? Verdict::Satisfied : Verdict::NotSatisfied;
}

double entry_scalar_curvature(const ZooEntry& entry, const FdConfig& fd) {
  if (entry.exact.scalar) return *entry.exact.scalar;
  if (entry.chart.scalar_at) return entry.chart.scalar_at(halton_point(entry.chart, 1));
  CurvatureBundle b = bundle(entry.chart, halton_point(entry.chart, 1), fd);
  return b.scalar;
}

bool bach_flat_hypothesis(const ZooEntry& entry, const AuditOptions& opt) {
  // Both local conformal flatness and the Einstein condition force B = 0, so
  // flagged charts skip the (expensive) finite-difference check.
  if (!opt.engine_bach_check &&
      (entry.chart.is_einstein || entry.chart.is_conformally_flat))
    return true;
  if (entry.chart.n < 4) return false;
  for (int i = 1; i <= 2; ++i) {
    Sym2 b = bach(entry.chart, halton_point(entry.chart, 7 + 5 * i), opt.fd);
    if (max_abs(b) >= 1e-4) return false;
  }
  return true;
}

PinchingReport base_report(const std::string& theorem, const ZooEntry& entry,
                           const AuditOptions& opt) {
  PinchingReport r;
  r.theorem = theorem;
  r.metric_label = entry.label;
  r.n = entry.chart.n;
  r.path = opt.path == EvalPath::ClosedForm ? "closed-form" : "quadrature";
  r.boundary_tol = opt.boundary_tol;
  r.constant_scalar = entry.chart.is_constant_scalar;
  return r;
}

void attach_grid(PinchingReport& r, const ZooEntry& entry, const AuditOptions& opt) {
  if (opt.path != EvalPath::Quadrature) return;
  AxisRuleSet rules =
      build_rules(entry.chart, opt.grid.nodes.empty() ? default_grid(entry) : opt.grid);
  r.grid_nodes = rules.counts;
  r.grid_rules = rules.rules;
}

YamabeDatum resolve_yamabe(const ZooEntry& entry, const AuditOptions& opt) {
  if (opt.user_yamabe) return {*opt.user_yamabe, YamabeProvenance::UserSupplied};
  return yamabe_value(entry);
}

void require_positive_constant_scalar(const ZooEntry& entry, double scalar,
                                      const char* what) {
  if (!entry.chart.is_constant_scalar)
    throw std::domain_error(std::string(what) +
                            ": metric is not flagged constant-scalar");
  if (!(scalar > 0.0))
    throw std::domain_error(std::string(what) + ": needs positive scalar curvature");
}

}  // namespace

PinchingReport audit_thm11(const ZooEntry& entry, double p, const AuditOptions& opt) {
  auto t0 = Clock::now();
  const int n = entry.chart.n;
  if (n < 4) throw std::domain_error("audit thm11: need n >= 4");
  const double scalar = entry_scalar_curvature(entry, opt.fd);
  require_positive_constant_scalar(entry, scalar, "audit thm11");
  if (p < n / 2.0 - 1e-12) throw std::domain_error("audit thm11: need p >= n/2");

  PinchingReport r = base_report("thm11", entry, opt);
  r.p = p;
  YamabeDatum y = resolve_yamabe(entry, opt);
  r.yamabe = y;

  if (opt.path == EvalPath::ClosedForm) {
    r.lhs = lp_norm_exact(entry, Selector::Rm0, p);
  } else {
    LpResult lp = lp_norm_quadrature(entry, Selector::Rm0, p, opt.grid, opt.fd);
    r.lhs = lp.value;
    r.est_volume_error = lp.volume_error;
    attach_grid(r, entry, opt);
  }
  constants::Epsilon eps = constants::epsilon_pinching(n, p);
  r.threshold = eps.value * std::pow(y.value, n / (2.0 * p)) *
                std::pow(scalar, 1.0 - n / (2.0 * p));
  r.margin = r.threshold - r.lhs;
  r.verdict = verdict_of(r.lhs, r.threshold, opt.boundary_tol);
  r.scalar_positive = scalar > 0.0;
  r.bach_flat = bach_flat_hypothesis(entry, opt);
  r.extras.emplace_back("epsilon", eps.value);
  r.extras.emplace_back("scalar_curvature", scalar);
  r.note = "hypothesis audit; on satisfaction the theorem concludes a round space form";
  r.runtime_ms = elapsed_ms(t0);
  return r;
}

PinchingReport audit_thm14(const ZooEntry& entry, const AuditOptions& opt) {
  auto t0 = Clock::now();
  const int n = entry.chart.n;
  if (n < 4) throw std::domain_error("audit thm14: need n >= 4");
  const double scalar = entry_scalar_curvature(entry, opt.fd);
  require_positive_constant_scalar(entry, scalar, "audit thm14");

  PinchingReport r = base_report("thm14", entry, opt);
  r.p = n / 2.0;
  YamabeDatum y = resolve_yamabe(entry, opt);
  r.yamabe = y;

  if (opt.path == EvalPath::ClosedForm) {
    r.lhs = lp_norm_exact(entry, Selector::WPlusKn, n / 2.0);
  } else {
    LpResult lp = lp_norm_quadrature(entry, Selector::WPlusKn, n / 2.0, opt.grid, opt.fd);
    r.lhs = lp.value;
    r.est_volume_error = lp.volume_error;
    attach_grid(r, entry, opt);
  }
  r.threshold = constants::c1_weyl_ricci_pinching(n) * y.value;
  r.margin = r.threshold - r.lhs;
  r.verdict = verdict_of(r.lhs, r.threshold, opt.boundary_tol);
  r.scalar_positive = scalar > 0.0;
  r.bach_flat = bach_flat_hypothesis(entry, opt);
  r.extras.emplace_back("C1", constants::c1_weyl_ricci_pinching(n));
  if (n >= 6) {
    const double sphere_threshold = 2.0 * y.value / (n * constants::c2_weyl_estimate(n));
    r.extras.emplace_back("sphere_criterion_threshold", sphere_threshold);
    r.extras.emplace_back("C2", constants::c2_weyl_estimate(n));
  }
  r.note = "hypothesis audit; satisfaction concludes Einstein (round form for n=4,5)";
  r.runtime_ms = elapsed_ms(t0);
  return r;
}

PinchingReport audit_cor16(const ZooEntry& entry, const AuditOptions& opt) {
  auto t0 = Clock::now();
  if (entry.chart.n != 4) throw std::domain_error("audit cor16: n = 4 only");
  const double scalar = entry_scalar_curvature(entry, opt.fd);
  require_positive_constant_scalar(entry, scalar, "audit cor16");

  PinchingReport r = base_report("cor16", entry, opt);
  CurvatureIntegrals ci = curvature_integrals(entry, opt);
  r.est_volume_error = ci.volume_error;
  attach_grid(r, entry, opt);

  r.lhs = ci.w2 + 1.25 * ci.ric2;
  r.threshold = ci.r2 / 48.0;
  r.margin = r.threshold - r.lhs;
  r.verdict = verdict_of(r.lhs, r.threshold, opt.boundary_tol);
  r.scalar_positive = scalar > 0.0;
  r.bach_flat = bach_flat_hypothesis(entry, opt);
  r.extras.emplace_back("int_W2", ci.w2);
  r.extras.emplace_back("int_Ric0_2", ci.ric2);
  r.extras.emplace_back("int_R2", ci.r2);
  if (entry.exact.euler) {
    // equivalent Euler-characteristic form of the same condition
    const double chi = *entry.exact.euler;
    r.extras.emplace_back("euler_form_lhs", ci.w2 + (2.0 / 39.0) * ci.r2);
    r.extras.emplace_back("euler_form_threshold", (160.0 / 13.0) * M_PI * M_PI * chi);
  }
  r.note = "hypothesis audit; satisfaction concludes a round S4 quotient";
  r.runtime_ms = elapsed_ms(t0);
  return r;
}

PinchingReport cgb_check(const ZooEntry& entry, const AuditOptions& opt) {
  auto t0 = Clock::now();
  if (entry.chart.n != 4) throw std::domain_error("cgb_check: n = 4 only");
  if (!entry.exact.euler)
    throw std::domain_error("cgb_check: entry has no recorded Euler characteristic");

  PinchingReport r = base_report("cgb", entry, opt);
  CurvatureIntegrals ci = curvature_integrals(entry, opt);
  r.est_volume_error = ci.volume_error;
  attach_grid(r, entry, opt);

  const double chi = *entry.exact.euler;
  r.lhs = ci.w2 - 2.0 * ci.ric2 + ci.r2 / 6.0;
  r.threshold = 32.0 * M_PI * M_PI * chi;
  r.margin = r.threshold - r.lhs;
  const double scale =
      std::max({std::abs(r.threshold), ci.w2 + 2.0 * ci.ric2 + ci.r2 / 6.0, 1e-300});
  r.verdict = std::abs(r.margin) <= opt.boundary_tol * scale ? Verdict::Satisfied
                                                             : Verdict::NotSatisfied;
  r.scalar_positive = entry_scalar_curvature(entry, opt.fd) > 0.0;
  r.constant_scalar = entry.chart.is_constant_scalar;
  r.bach_flat = bach_flat_hypothesis(entry, opt);
  r.extras.emplace_back("residual", r.lhs - r.threshold);
  r.extras.emplace_back("chi", chi);
  r.note = "Chern-Gauss-Bonnet identity check";
  r.runtime_ms = elapsed_ms(t0);
  return r;
}

PinchingReport gursky_check(const ZooEntry& entry, const AuditOptions& opt) {
  auto t0 = Clock::now();
  if (entry.chart.n != 4) throw std::domain_error("gursky_check: n = 4 only");

  PinchingReport r = base_report("gursky", entry, opt);
  YamabeDatum y = resolve_yamabe(entry, opt);
  r.yamabe = y;
  CurvatureIntegrals ci = curvature_integrals(entry, opt);
  r.est_volume_error = ci.volume_error;
  attach_grid(r, entry, opt);

  r.lhs = ci.r2 - 12.0 * ci.ric2;
  r.threshold = y.value * y.value;
  r.margin = r.threshold - r.lhs;
  r.verdict = verdict_of(r.lhs, r.threshold, opt.boundary_tol);
  r.scalar_positive = entry_scalar_curvature(entry, opt.fd) > 0.0;
  r.bach_flat = bach_flat_hypothesis(entry, opt);
  r.extras.emplace_back("int_R2", ci.r2);
  r.extras.emplace_back("int_Ric0_2", ci.ric2);
  r.note = "equality holds only for conformally Einstein metrics";
  r.runtime_ms = elapsed_ms(t0);
  return r;
}

namespace {

PinchingReport pointwise_pinching(const std::string& theorem, const ZooEntry& entry,
                                  const AuditOptions& opt) {
  auto t0 = Clock::now();
  const int n = entry.chart.n;
  const double scalar = entry_scalar_curvature(entry, opt.fd);
  require_positive_constant_scalar(entry, scalar, theorem.c_str());
  if (opt.samples < 1) throw std::invalid_argument("pointwise audit: need samples >= 1");

  PinchingReport r = base_report(theorem, entry, opt);
  r.samples = opt.samples;
  NormEvaluator eval(entry.chart, opt.fd, true);
  Sym2 g(n), ric(n);
  Curv4 rm(n);
  double lhs = 0.0;
  for (int i = 1; i <= opt.samples; ++i) {
    Point x = halton_point(entry.chart, i);
    entry.chart.metric_at(x, g);
    PointNorms pn = eval.at(x, g, ric, rm);
    lhs = std::max(lhs, pn.weyl_sq + n / (2.0 * (n - 2)) * pn.ric0_sq);
  }
  r.lhs = lhs;
  r.threshold = scalar * scalar / (2.0 * (n - 2) * (n - 1));
  r.margin = r.threshold - r.lhs;
  r.verdict = verdict_of(r.lhs, r.threshold, opt.boundary_tol);
  r.scalar_positive = scalar > 0.0;
  r.bach_flat = bach_flat_hypothesis(entry, opt);
  r.extras.emplace_back("scalar_curvature", scalar);
  r.runtime_ms = elapsed_ms(t0);
  return r;
}

}  // namespace

PinchingReport audit_thm18(const ZooEntry& entry, const AuditOptions& opt) {
  if (entry.chart.n < 4) throw std::domain_error("audit thm18: need n >= 4 (Bach tensor)");
  PinchingReport r = pointwise_pinching("thm18", entry, opt);
  r.note =
      "hypothesis audit; satisfaction concludes Einstein or a quotient of "
      "S1 x S(n-1)";
  return r;
}

PinchingReport audit_cor19(const ZooEntry& entry, const AuditOptions& opt) {
  const int n = entry.chart.n;
  if (n != 4 && n != 5) throw std::domain_error("audit cor19: n in {4, 5} only");
  PinchingReport r = pointwise_pinching("cor19", entry, opt);
  r.extras.emplace_back("C3", constants::c3_weitzenbock(n));
  r.note =
      "hypothesis audit; satisfaction concludes a round quotient or a "
      "quotient of S1 x S(n-1)";
  return r;
}

}  // namespace curvtk
