#include "curvtk/suites.hpp"

#include <chrono>
#include <cmath>

#include "curvtk/rng.hpp"
#include "curvtk/zoo.hpp"

namespace curvtk {

namespace {

using Clock = std::chrono::steady_clock;

struct Acc {
  double worst = 0.0;
  void add(double residual) { worst = std::max(worst, std::abs(residual)); }
};

double rel(double a, double b, double scale) {
  return std::abs(a - b) / std::max(std::abs(scale), 1e-300);
}

void push(SuiteReport& rep, const std::string& name, int n, long trials, double residual,
          double tol) {
  CheckResult c{name, n, trials, residual, tol, residual <= tol};
  rep.pass = rep.pass && c.pass;
  rep.checks.push_back(std::move(c));
}

}  // namespace

Point moderate_point(const MetricChart& chart, std::uint64_t index) {
  static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
  Point x(chart.n);
  for (int a = 0; a < chart.n; ++a) {
    double u = radical_inverse(index, primes[a % 10]);
    const Axis& ax = chart.axes[a];
    switch (ax.kind) {
      case Axis::Kind::Periodic: x[a] = u * ax.length; break;
      case Axis::Kind::Interval: x[a] = ax.a + (ax.b - ax.a) * u; break;
      case Axis::Kind::Line: x[a] = std::tan(0.6 * M_PI * (u - 0.5)); break;
    }
  }
  return x;
}

SuiteReport run_algebra_suite(long trials_per_dim, std::uint64_t seed,
                              const std::vector<int>& dims) {
  auto t0 = Clock::now();
  SuiteReport rep;
  rep.suite = "algebra";

  for (int n : dims) {
    GaussianRng rng = GaussianRng::stream(seed, std::uint64_t(n));
    Acc sym, bianchi, recon, ortho, pyth, eq24, eq27, wtrace, idem;
    Acc kn_total, kn_v, kn_u, kn_combo, kn_t_trace, kn_sum;

    for (long trial = 0; trial < trials_per_dim; ++trial) {
      Curv4 rm = random_curvature(n, rng);
      const double scale = std::max(max_abs(rm), 1e-300);
      sym.add(pair_symmetry_residual(rm) / scale);
      bianchi.add(first_bianchi_residual(rm));

      Sym2 g = Sym2::identity(n);
      Decomposition d = decompose(rm, g);
      const double rm_sq = norm_sq(rm);

      Curv4 sum = d.weyl + d.ricci_part + d.scalar_part;
      recon.add(max_abs(sum - rm) / scale);

      ortho.add(std::abs(inner(d.weyl, d.ricci_part)) / rm_sq);
      ortho.add(std::abs(inner(d.weyl, d.scalar_part)) / rm_sq);
      ortho.add(std::abs(inner(d.ricci_part, d.scalar_part)) / rm_sq);
      pyth.add(rel(rm_sq,
                   norm_sq(d.weyl) + norm_sq(d.ricci_part) + norm_sq(d.scalar_part),
                   rm_sq));

      const double rm0_sq = norm_sq(d.rm0);
      eq24.add(rel(rm0_sq, norm_sq(d.weyl) + 4.0 / (n - 2) * norm_sq(d.ricci0), rm0_sq));
      // inequality: positive part of the violation only
      eq27.add(std::max(0.0, norm_sq(d.ricci0) - (n - 2) / 4.0 * rm0_sq) / rm0_sq);

      // every g-trace of W vanishes
      double wt = 0.0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          double t13 = 0, t14 = 0, t23 = 0, t24 = 0, t12 = 0, t34 = 0;
          for (int i = 0; i < n; ++i) {
            t13 += d.weyl(i, a, i, b);
            t14 += d.weyl(i, a, b, i);
            t23 += d.weyl(a, i, i, b);
            t24 += d.weyl(a, i, b, i);
            t12 += d.weyl(i, i, a, b);
            t34 += d.weyl(a, b, i, i);
          }
          for (double t : {t13, t14, t23, t24, t12, t34}) wt = std::max(wt, std::abs(t));
        }
      wtrace.add(wt / std::max(std::sqrt(rm_sq), 1e-300));

      Decomposition d2 = decompose(sum, g);
      idem.add(max_abs(d2.weyl - d.weyl) / scale);
      idem.add(max_abs(d2.ricci_part - d.ricci_part) / scale);
      idem.add(max_abs(d2.scalar_part - d.scalar_part) / scale);

      // Kulkarni-Nomizu split of Ric0 (x) Ric0
      Sym2 s = random_trace_free(n, rng);
      const double s2 = norm_sq(s);
      double s4 = s2 * s2;
      Sym2 ssq(n);
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          double v = 0.0;
          for (int p = 0; p < n; ++p) v += s(i, p) * s(j, p);
          ssq.set(i, j, v);
        }
      const double ssq2 = norm_sq(ssq);
      KnSquareParts kp = kn_square_decompose(s);
      Curv4 knss = kulkarni_nomizu(s, s);
      kn_sum.add(max_abs(kp.trace_free + kp.ricci_part + kp.scalar_part - knss) /
                 std::max(max_abs(knss), 1e-300));
      kn_total.add(rel(norm_sq(knss), 8.0 * s4 - 8.0 * ssq2, s4));
      kn_v.add(rel(norm_sq(kp.ricci_part),
                   16.0 / (n - 2) * ssq2 - 16.0 / (n * (n - 2.0)) * s4, s4));
      kn_u.add(rel(norm_sq(kp.scalar_part), 8.0 / (n * (n - 1.0)) * s4, s4));
      kn_combo.add(rel(norm_sq(kp.trace_free) + n / 2.0 * norm_sq(kp.ricci_part),
                       8.0 * (n - 2.0) / (n - 1.0) * s4, s4));
      Sym2 ttrace = ricci_contraction(kp.trace_free);
      kn_t_trace.add(max_abs(ttrace) / std::max(std::sqrt(norm_sq(knss)), 1e-300));
    }

    push(rep, "pair-symmetry", n, trials_per_dim, sym.worst, 1e-13);
    push(rep, "first-bianchi", n, trials_per_dim, bianchi.worst, 1e-13);
    push(rep, "decompose-reconstruction", n, trials_per_dim, recon.worst, 1e-12);
    push(rep, "decompose-orthogonality", n, trials_per_dim, ortho.worst, 1e-12);
    push(rep, "norm-pythagoras", n, trials_per_dim, pyth.worst, 1e-12);
    push(rep, "norm-split-weyl-ricci", n, trials_per_dim, eq24.worst, 1e-12);
    push(rep, "ricci-rm-bound", n, trials_per_dim, eq27.worst, 1e-12);
    push(rep, "weyl-trace-free", n, trials_per_dim, wtrace.worst, 1e-12);
    push(rep, "decompose-idempotent", n, trials_per_dim, idem.worst, 1e-12);
    push(rep, "kn-split-sum", n, trials_per_dim, kn_sum.worst, 1e-12);
    push(rep, "kn-norm-total", n, trials_per_dim, kn_total.worst, 1e-12);
    push(rep, "kn-norm-v", n, trials_per_dim, kn_v.worst, 1e-12);
    push(rep, "kn-norm-u", n, trials_per_dim, kn_u.worst, 1e-12);
    push(rep, "kn-norm-combination", n, trials_per_dim, kn_combo.worst, 1e-12);
    push(rep, "kn-t-trace-free", n, trials_per_dim, kn_t_trace.worst, 1e-12);
  }
  rep.runtime_ms =
      std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  return rep;
}

SuiteReport run_engine_suite(const FdConfig& cfg) {
  auto t0 = Clock::now();
  SuiteReport rep;
  rep.suite = "engine";

  std::vector<ZooEntry> entries;
  entries.push_back(make_round_sphere(4, 1.0));
  entries.push_back(make_round_sphere(5, 2.0));
  entries.push_back(make_product_circle_sphere(5, 0.2, false));
  entries.push_back(make_flat_torus(4));

  for (const ZooEntry& e : entries) {
    const MetricChart& chart = e.chart;
    Acc fd_vs_cf, raw_sym, compat, bianchi2, weyl_div;
    const int npts = 3;
    for (int i = 1; i <= npts; ++i) {
      Point x = moderate_point(chart, 2 * i + 1);
      double raw = 0.0;
      Curv4 rm_fd = riemann_fd(chart, x, cfg, &raw);
      raw_sym.add(raw);
      Curv4 rm_cf = riemann(chart, x, cfg);
      const double scale = std::max({max_abs(rm_cf), max_abs(rm_fd), 1e-12});
      fd_vs_cf.add(max_abs(rm_fd - rm_cf) / scale);

      // metric compatibility: covariant derivative of g vanishes
      TensorFieldFn gf = [&chart](const Point& y) {
        TensorR t(chart.n, 2);
        Sym2 g(chart.n);
        chart.metric_at(y, g);
        t.a = std::move(g.a);
        return t;
      };
      TensorR dg = cov_deriv(gf, 2, chart, x, cfg);
      double worst = 0.0;
      for (double v : dg.a) worst = std::max(worst, std::abs(v));
      compat.add(worst);

      if (chart.is_constant_scalar) {
        bianchi2.add(second_bianchi_residual(chart, x, cfg));
        weyl_div.add(weyl_divergence_residual(chart, x, cfg));
      }
    }
    push(rep, e.label + "/fd-vs-closed-form", chart.n, npts, fd_vs_cf.worst, 1e-6);
    push(rep, e.label + "/raw-symmetry-residual", chart.n, npts, raw_sym.worst, 1e-8);
    push(rep, e.label + "/metric-compatibility", chart.n, npts, compat.worst, 1e-8);
    push(rep, e.label + "/second-bianchi", chart.n, npts, bianchi2.worst, 1e-6);
    push(rep, e.label + "/weyl-divergence", chart.n, npts, weyl_div.worst, 1e-6);
  }

  rep.runtime_ms =
      std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  return rep;
}

}  // namespace curvtk
