#include "curvtk/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "curvtk/linalg.hpp"

namespace curvtk {

namespace {

void validate(const FdConfig& cfg) {
  if (!(cfg.step > 0.0)) throw std::invalid_argument("FdConfig: step must be positive");
  if (cfg.order != 2 && cfg.order != 4)
    throw std::invalid_argument("FdConfig: order must be 2 or 4");
}

void check_domain(const MetricChart& chart, const Point& x) {
  for (int a = 0; a < chart.n; ++a) {
    const Axis& ax = chart.axes[a];
    if (ax.kind == Axis::Kind::Interval && (x[a] < ax.a || x[a] > ax.b))
      throw std::domain_error("stencil exits chart domain on axis " + std::to_string(a));
  }
}

Sym2 eval_metric(const MetricChart& chart, const Point& x) {
  check_domain(chart, x);
  Sym2 g(chart.n);
  chart.metric_at(x, g);
  return g;
}

Point shifted(const Point& x, int axis, double delta) {
  Point y = x;
  y[axis] += delta;
  return y;
}

// First derivative of the metric along one axis, central differences.
Sym2 metric_d1_fd(const MetricChart& chart, const Point& x, int a, double h, int order) {
  const int n = chart.n;
  Sym2 out(n);
  if (order == 2) {
    Sym2 p = eval_metric(chart, shifted(x, a, h));
    Sym2 m = eval_metric(chart, shifted(x, a, -h));
    for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] = (p.a[i] - m.a[i]) / (2 * h);
  } else {
    Sym2 p2 = eval_metric(chart, shifted(x, a, 2 * h));
    Sym2 p1 = eval_metric(chart, shifted(x, a, h));
    Sym2 m1 = eval_metric(chart, shifted(x, a, -h));
    Sym2 m2 = eval_metric(chart, shifted(x, a, -2 * h));
    for (std::size_t i = 0; i < out.a.size(); ++i)
      out.a[i] = (-p2.a[i] + 8 * p1.a[i] - 8 * m1.a[i] + m2.a[i]) / (12 * h);
  }
  return out;
}

Sym2 metric_d1(const MetricChart& chart, const Point& x, int a, double h, int order) {
  if (chart.dmetric_at) {
    check_domain(chart, x);
    Sym2 out(chart.n);
    chart.dmetric_at(x, a, out);
    return out;
  }
  return metric_d1_fd(chart, x, a, h, order);
}

// Second derivative d_a d_b g. If the chart carries analytic first
// derivatives only one finite-difference layer is needed.
Sym2 metric_d2(const MetricChart& chart, const Point& x, int a, int b, double h, int order) {
  const int n = chart.n;
  Sym2 out(n);
  if (chart.dmetric_at) {
    auto d1 = [&](const Point& y) {
      check_domain(chart, y);
      Sym2 d(n);
      chart.dmetric_at(y, a, d);
      return d;
    };
    if (order == 2) {
      Sym2 p = d1(shifted(x, b, h)), m = d1(shifted(x, b, -h));
      for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] = (p.a[i] - m.a[i]) / (2 * h);
    } else {
      Sym2 p2 = d1(shifted(x, b, 2 * h)), p1 = d1(shifted(x, b, h));
      Sym2 m1 = d1(shifted(x, b, -h)), m2 = d1(shifted(x, b, -2 * h));
      for (std::size_t i = 0; i < out.a.size(); ++i)
        out.a[i] = (-p2.a[i] + 8 * p1.a[i] - 8 * m1.a[i] + m2.a[i]) / (12 * h);
    }
    return out;
  }
  if (a == b) {
    if (order == 2) {
      Sym2 p = eval_metric(chart, shifted(x, a, h));
      Sym2 c = eval_metric(chart, x);
      Sym2 m = eval_metric(chart, shifted(x, a, -h));
      for (std::size_t i = 0; i < out.a.size(); ++i)
        out.a[i] = (p.a[i] - 2 * c.a[i] + m.a[i]) / (h * h);
    } else {
      Sym2 p2 = eval_metric(chart, shifted(x, a, 2 * h));
      Sym2 p1 = eval_metric(chart, shifted(x, a, h));
      Sym2 c = eval_metric(chart, x);
      Sym2 m1 = eval_metric(chart, shifted(x, a, -h));
      Sym2 m2 = eval_metric(chart, shifted(x, a, -2 * h));
      for (std::size_t i = 0; i < out.a.size(); ++i)
        out.a[i] =
            (-p2.a[i] + 16 * p1.a[i] - 30 * c.a[i] + 16 * m1.a[i] - m2.a[i]) / (12 * h * h);
    }
    return out;
  }
  // mixed derivative: product of first-derivative stencils
  const int offs2[] = {-1, 1};
  const double w2[] = {-0.5, 0.5};
  const int offs4[] = {-2, -1, 1, 2};
  const double w4[] = {1.0 / 12, -8.0 / 12, 8.0 / 12, -1.0 / 12};
  const int* offs = (order == 2) ? offs2 : offs4;
  const double* w = (order == 2) ? w2 : w4;
  const int np = (order == 2) ? 2 : 4;
  for (int s = 0; s < np; ++s)
    for (int t = 0; t < np; ++t) {
      Point y = x;
      y[a] += offs[s] * h;
      y[b] += offs[t] * h;
      Sym2 gv = eval_metric(chart, y);
      const double c = w[s] * w[t] / (h * h);
      for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] += c * gv.a[i];
    }
  return out;
}

Tensor3 christoffel_raw(const MetricChart& chart, const Point& x, double h, int order) {
  const int n = chart.n;
  std::vector<Sym2> dg(n);
  for (int a = 0; a < n; ++a) dg[a] = metric_d1(chart, x, a, h, order);
  Sym2 g = eval_metric(chart, x);
  Cholesky chol(g.a.data(), n);
  std::vector<double> ginv = chol.inverse();

  // first-kind symbols Gamma_{c,ab}
  Tensor3 g1(n);
  for (int c = 0; c < n; ++c)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        g1(c, a, b) = 0.5 * (dg[a](b, c) + dg[b](a, c) - dg[c](a, b));

  Tensor3 out(n);
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        double s = 0.0;
        for (int c = 0; c < n; ++c) s += ginv[std::size_t(k) * n + c] * g1(c, a, b);
        out(k, a, b) = s;
      }
  return out;
}

template <typename T>
void richardson_combine(T& coarse, const T& fine) {
  for (std::size_t i = 0; i < coarse.a.size(); ++i)
    coarse.a[i] = (16.0 * fine.a[i] - coarse.a[i]) / 15.0;
}

Curv4 riemann_fd_raw(const MetricChart& chart, const Point& x, double h, int order) {
  const int n = chart.n;
  std::vector<Sym2> dg(n);
  for (int a = 0; a < n; ++a) dg[a] = metric_d1(chart, x, a, h, order);
  std::vector<std::vector<Sym2>> d2g(n, std::vector<Sym2>(n));
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      d2g[a][b] = metric_d2(chart, x, a, b, h, order);
      if (b != a) d2g[b][a] = d2g[a][b];
    }
  Sym2 g = eval_metric(chart, x);
  Cholesky chol(g.a.data(), n);
  std::vector<double> ginv = chol.inverse();

  Tensor3 g1(n);  // Gamma_{c,ab}
  for (int c = 0; c < n; ++c)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        g1(c, a, b) = 0.5 * (dg[a](b, c) + dg[b](a, c) - dg[c](a, b));

  // R_ijkl = 1/2 (d_j d_k g_il + d_i d_l g_jk - d_i d_k g_jl - d_j d_l g_ik)
  //        + g^mp (Gamma_{m,li} Gamma_{p,kj} - Gamma_{m,ki} Gamma_{p,lj})
  Curv4 rm(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double v = 0.5 * (d2g[j][k](i, l) + d2g[i][l](j, k) - d2g[i][k](j, l) -
                            d2g[j][l](i, k));
          double q = 0.0;
          for (int m = 0; m < n; ++m)
            for (int p = 0; p < n; ++p)
              q += ginv[std::size_t(m) * n + p] *
                   (g1(m, l, i) * g1(p, k, j) - g1(m, k, i) * g1(p, l, j));
          rm(i, j, k, l) = v + q;
        }
  return rm;
}

}  // namespace

Tensor3 christoffel(const MetricChart& chart, const Point& x, const FdConfig& cfg) {
  validate(cfg);
  Tensor3 out = christoffel_raw(chart, x, cfg.step, cfg.order);
  if (cfg.richardson) {
    Tensor3 fine = christoffel_raw(chart, x, cfg.step / 2, cfg.order);
    richardson_combine(out, fine);
  }
  return out;
}

Curv4 riemann_fd(const MetricChart& chart, const Point& x, const FdConfig& cfg,
                 double* raw_residual) {
  validate(cfg);
  Curv4 rm = riemann_fd_raw(chart, x, cfg.step, cfg.order);
  if (cfg.richardson) {
    Curv4 fine = riemann_fd_raw(chart, x, cfg.step / 2, cfg.order);
    richardson_combine(rm, fine);
  }
  if (raw_residual)
    *raw_residual = std::max(pair_symmetry_residual(rm), first_bianchi_residual(rm));
  symmetrize_pairs(rm);
  project_first_bianchi(rm);
  return rm;
}

Curv4 riemann(const MetricChart& chart, const Point& x, const FdConfig& cfg, bool force_fd) {
  if (chart.riemann_at && !force_fd) {
    check_domain(chart, x);
    Curv4 rm(chart.n);
    chart.riemann_at(x, rm);
    return rm;
  }
  return riemann_fd(chart, x, cfg);
}

namespace {

TensorR cov_deriv_raw(const TensorFieldFn& field, int rank, const MetricChart& chart,
                      const Point& x, double h, int order, const Tensor3& gamma) {
  const int n = chart.n;
  TensorR t0 = field(x);
  TensorR out(n, rank + 1);
  const std::size_t sz = t0.a.size();

  // partial derivatives
  for (int c = 0; c < n; ++c) {
    double* dst = out.a.data() + std::size_t(c) * sz;
    if (order == 2) {
      TensorR p = field(shifted(x, c, h));
      TensorR m = field(shifted(x, c, -h));
      for (std::size_t q = 0; q < sz; ++q) dst[q] = (p.a[q] - m.a[q]) / (2 * h);
    } else {
      TensorR p2 = field(shifted(x, c, 2 * h));
      TensorR p1 = field(shifted(x, c, h));
      TensorR m1 = field(shifted(x, c, -h));
      TensorR m2 = field(shifted(x, c, -2 * h));
      for (std::size_t q = 0; q < sz; ++q)
        dst[q] = (-p2.a[q] + 8 * p1.a[q] - 8 * m1.a[q] + m2.a[q]) / (12 * h);
    }
  }

  // connection corrections: -Gamma^m_{c i_s} T[.. m ..]
  std::vector<std::size_t> stride(rank);
  {
    std::size_t s = 1;
    for (int ax = rank - 1; ax >= 0; --ax) {
      stride[ax] = s;
      s *= std::size_t(n);
    }
  }
  for (int c = 0; c < n; ++c) {
    double* dst = out.a.data() + std::size_t(c) * sz;
    for (std::size_t idx = 0; idx < sz; ++idx) {
      double corr = 0.0;
      for (int s = 0; s < rank; ++s) {
        const int d = int((idx / stride[s]) % std::size_t(n));
        const std::size_t base = idx - std::size_t(d) * stride[s];
        for (int m = 0; m < n; ++m)
          corr += gamma(m, c, d) * t0.a[base + std::size_t(m) * stride[s]];
      }
      dst[idx] -= corr;
    }
  }
  return out;
}

}  // namespace

TensorR cov_deriv(const TensorFieldFn& field, int rank, const MetricChart& chart,
                  const Point& x, const FdConfig& cfg) {
  validate(cfg);
  Tensor3 gamma = christoffel(chart, x, cfg);  // richardson per cfg
  TensorR out = cov_deriv_raw(field, rank, chart, x, cfg.step, cfg.order, gamma);
  if (cfg.richardson) {
    TensorR fine = cov_deriv_raw(field, rank, chart, x, cfg.step / 2, cfg.order, gamma);
    richardson_combine(out, fine);
  }
  return out;
}

namespace {

TensorFieldFn rm0_field(const MetricChart& chart, const FdConfig& cfg) {
  return [&chart, cfg](const Point& y) {
    Curv4 rm = riemann(chart, y, cfg);
    Decomposition dec = decompose(rm, eval_metric(chart, y));
    TensorR t(chart.n, 4);
    t.a = std::move(dec.rm0.a);
    return t;
  };
}

TensorFieldFn weyl_field(const MetricChart& chart, const FdConfig& cfg) {
  return [&chart, cfg](const Point& y) {
    Curv4 rm = riemann(chart, y, cfg);
    Decomposition dec = decompose(rm, eval_metric(chart, y));
    TensorR t(chart.n, 4);
    t.a = std::move(dec.weyl.a);
    return t;
  };
}

std::vector<double> inverse_metric(const MetricChart& chart, const Point& x) {
  Sym2 g = eval_metric(chart, x);
  Cholesky chol(g.a.data(), g.n);
  return chol.inverse();
}

// Contract the derivative index of a rank-5 covariant derivative against the
// last tensor slot: out_ij k = g^{la} D(a, i, j, k, l).
Tensor3 divergence_last_slot(const TensorR& d, const std::vector<double>& ginv, int n) {
  Tensor3 out(n);
  const std::size_t n4 = std::size_t(n) * n * n * n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int a = 0; a < n; ++a)
          for (int l = 0; l < n; ++l)
            s += ginv[std::size_t(l) * n + a] *
                 d.a[std::size_t(a) * n4 + ((std::size_t(i) * n + j) * n + k) * n + l];
        out(i, j, k) = s;
      }
  return out;
}

Sym2 bach_at_step(const MetricChart& chart, const Point& x, double h, int order) {
  const int n = chart.n;
  FdConfig inner{h, order, false};

  TensorFieldFn wf = weyl_field(chart, inner);
  TensorFieldFn cf = [&chart, inner, wf](const Point& y) {
    return cov_deriv(wf, 4, chart, y, inner);
  };
  TensorR d2 = cov_deriv(cf, 5, chart, x, inner);  // (a; b, i, k, j, l)

  std::vector<double> ginv = inverse_metric(chart, x);
  Curv4 rm = riemann(chart, x, inner);
  Sym2 g = eval_metric(chart, x);
  Decomposition dec = decompose(rm, g);

  const std::size_t n5 = std::size_t(n) * n * n * n * n;
  const std::size_t n4 = n5 / n;
  auto d2at = [&](int a, int b, int i, int k, int j, int l) {
    return d2.a[std::size_t(a) * n5 + std::size_t(b) * n4 +
                ((std::size_t(i) * n + k) * n + j) * n + l];
  };

  // raised Ricci
  std::vector<double> ricup(std::size_t(n) * n, 0.0);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      double s = 0.0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          s += ginv[std::size_t(k) * n + a] * ginv[std::size_t(l) * n + b] * dec.ricci(a, b);
      ricup[std::size_t(k) * n + l] = s;
    }

  Sym2 out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double t1 = 0.0;
      for (int k = 0; k < n; ++k)
        for (int a = 0; a < n; ++a) {
          const double gka = ginv[std::size_t(k) * n + a];
          if (gka == 0.0) continue;
          for (int l = 0; l < n; ++l)
            for (int b = 0; b < n; ++b)
              t1 += gka * ginv[std::size_t(l) * n + b] * d2at(a, b, i, k, j, l);
        }
      double t2 = 0.0;
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          t2 += ricup[std::size_t(k) * n + l] * dec.weyl(i, k, j, l);
      out(i, j) = t1 / (n - 3) + t2 / (n - 2);
    }
  // symmetrize away the finite-difference asymmetry
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) {
      double m = 0.5 * (out(i, j) + out(j, i));
      out(i, j) = m;
      out(j, i) = m;
    }
  return out;
}

}  // namespace

Sym2 bach(const MetricChart& chart, const Point& x, const FdConfig& cfg) {
  if (chart.n < 4)
    throw std::domain_error("bach: defined for n >= 4 only (1/(n-3) factor)");
  Sym2 out = bach_at_step(chart, x, cfg.step, cfg.order);
  if (cfg.richardson) {
    Sym2 fine = bach_at_step(chart, x, cfg.step / 2, cfg.order);
    richardson_combine(out, fine);
  }
  return out;
}

Tensor3 div_rm0(const MetricChart& chart, const Point& x, const FdConfig& cfg) {
  TensorR d = cov_deriv(rm0_field(chart, cfg), 4, chart, x, cfg);
  return divergence_last_slot(d, inverse_metric(chart, x), chart.n);
}

double weyl_divergence_residual(const MetricChart& chart, const Point& x,
                                const FdConfig& cfg) {
  if (!chart.is_constant_scalar)
    throw std::domain_error(
        "weyl_divergence_residual: chart is not flagged constant-scalar; "
        "the identity uses nabla R = 0");
  const int n = chart.n;
  std::vector<double> ginv = inverse_metric(chart, x);
  TensorR dw = cov_deriv(weyl_field(chart, cfg), 4, chart, x, cfg);
  TensorR dr = cov_deriv(rm0_field(chart, cfg), 4, chart, x, cfg);
  Tensor3 divw = divergence_last_slot(dw, ginv, n);
  Tensor3 divr = divergence_last_slot(dr, ginv, n);
  const double c = double(n - 3) / double(n - 2);
  double r = 0.0;
  for (std::size_t q = 0; q < divw.a.size(); ++q)
    r = std::max(r, std::abs(divw.a[q] - c * divr.a[q]));
  return r;
}

double second_bianchi_residual(const MetricChart& chart, const Point& x,
                               const FdConfig& cfg) {
  if (!chart.is_constant_scalar)
    throw std::domain_error(
        "second_bianchi_residual: chart is not flagged constant-scalar");
  const int n = chart.n;
  TensorR d = cov_deriv(rm0_field(chart, cfg), 4, chart, x, cfg);
  const std::size_t n4 = std::size_t(n) * n * n * n;
  auto at = [&](int c, int i, int j, int k, int l) {
    return d.a[std::size_t(c) * n4 + ((std::size_t(i) * n + j) * n + k) * n + l];
  };
  double r = 0.0;
  for (int h = 0; h < n; ++h)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l)
            r = std::max(r, std::abs(at(h, i, j, k, l) + at(l, i, j, h, k) +
                                     at(k, i, j, l, h)));
  return r;
}

KatoStats kato_check(const MetricChart& chart, const std::vector<Point>& points,
                     const FdConfig& cfg) {
  KatoStats stats;
  stats.min_margin = std::numeric_limits<double>::infinity();
  TensorFieldFn rf = rm0_field(chart, cfg);

  for (const Point& x : points) {
    Sym2 g = eval_metric(chart, x);
    TensorR rm0x = rf(x);
    Curv4 rm0(chart.n);
    rm0.a = rm0x.a;
    const double norm = std::sqrt(norm_sq(rm0, g));
    Curv4 full = riemann(chart, x, cfg);
    if (norm < 1e-8 * std::max(1.0, std::sqrt(norm_sq(full, g)))) {
      ++stats.vacuous;
      continue;
    }
    ++stats.samples;

    TensorR d = cov_deriv(rf, 4, chart, x, cfg);
    FrameTransform frame(g);
    std::vector<double> df = frame.to_frame(d.a, 5);
    double grad_rm0_sq = 0.0;
    for (double v : df) grad_rm0_sq += v * v;

    // gradient of the scalar field |Rm0|
    Cholesky chol(g.a.data(), g.n);
    std::vector<double> ginv = chol.inverse();
    std::vector<double> du(chart.n, 0.0);
    auto u_at = [&](const Point& y) {
      TensorR t = rf(y);
      Curv4 c4(chart.n);
      c4.a = std::move(t.a);
      return std::sqrt(norm_sq(c4, eval_metric(chart, y)));
    };
    for (int a = 0; a < chart.n; ++a) {
      auto d1 = [&](double h) {
        if (cfg.order == 2)
          return (u_at(shifted(x, a, h)) - u_at(shifted(x, a, -h))) / (2 * h);
        return (-u_at(shifted(x, a, 2 * h)) + 8 * u_at(shifted(x, a, h)) -
                8 * u_at(shifted(x, a, -h)) + u_at(shifted(x, a, -2 * h))) /
               (12 * h);
      };
      double v = d1(cfg.step);
      if (cfg.richardson) v = (16.0 * d1(cfg.step / 2) - v) / 15.0;
      du[a] = v;
    }
    double grad_u_sq = 0.0;
    for (int a = 0; a < chart.n; ++a)
      for (int b = 0; b < chart.n; ++b)
        grad_u_sq += ginv[std::size_t(a) * chart.n + b] * du[a] * du[b];

    stats.min_margin = std::min(stats.min_margin, grad_rm0_sq - grad_u_sq);
  }
  if (stats.samples == 0) stats.min_margin = 0.0;
  return stats;
}

CurvatureBundle bundle(const MetricChart& chart, const Point& x, const FdConfig& cfg,
                       const BundleOptions& opts) {
  CurvatureBundle b;
  b.point = x;
  b.g = eval_metric(chart, x);
  if (chart.riemann_at && !opts.force_fd) {
    b.rm = riemann(chart, x, cfg);
  } else {
    b.rm = riemann_fd(chart, x, cfg, &b.fd_raw_residual);
  }
  Decomposition dec = decompose(b.rm, b.g);
  b.weyl = std::move(dec.weyl);
  b.ricci_part = std::move(dec.ricci_part);
  b.scalar_part = std::move(dec.scalar_part);
  b.rm0 = std::move(dec.rm0);
  b.ricci = std::move(dec.ricci);
  b.ricci0 = std::move(dec.ricci0);
  b.scalar = dec.scalar;
  if (opts.with_bach) b.bach = bach(chart, x, cfg);
  if (opts.with_div) b.div = div_rm0(chart, x, cfg);
  return b;
}

}  // namespace curvtk
