#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "curvtk/chart.hpp"
#include "curvtk/tensor.hpp"

// Pointwise curvature from a metric chart: Christoffel symbols, the Riemann
// tensor (sign convention fixed so the unit round sphere has
// R_ijkl = g_ik g_jl - g_il g_jk and positive scalar curvature), covariant
// derivatives of tensor fields, the divergence of the trace-free Riemann
// tensor and the Bach tensor. Everything falls back to high-order central
// finite differences when a chart has no closed-form callbacks.

namespace curvtk {

struct FdConfig {
  double step = 1e-2;
  int order = 4;  // 2 or 4
  bool richardson = false;
};

// Dense rank-3 tensor, index layout at(a, i, j) row-major.
struct Tensor3 {
  int n = 0;
  std::vector<double> a;
  Tensor3() = default;
  explicit Tensor3(int dim) : n(dim), a(std::size_t(dim) * dim * dim, 0.0) {}
  double& operator()(int i, int j, int k) { return a[(std::size_t(i) * n + j) * n + k]; }
  double operator()(int i, int j, int k) const { return a[(std::size_t(i) * n + j) * n + k]; }
};

// Generic dense tensor of the given rank with every axis of length n, used
// for covariant-derivative plumbing. Flat row-major storage.
struct TensorR {
  int n = 0;
  int rank = 0;
  std::vector<double> a;
  TensorR() = default;
  TensorR(int dim, int r) : n(dim), rank(r) {
    std::size_t sz = 1;
    for (int i = 0; i < r; ++i) sz *= std::size_t(dim);
    a.assign(sz, 0.0);
  }
};

using TensorFieldFn = std::function<TensorR(const Point&)>;

// Levi-Civita connection coefficients Gamma^k_ij, layout (k, i, j).
Tensor3 christoffel(const MetricChart& chart, const Point& x, const FdConfig& cfg);

// Riemann tensor, all indices lowered, by finite differences of the metric.
// The assembly keeps the pair symmetries and the first Bianchi identity exact
// up to round-off; the tensor is nevertheless projected onto the symmetric
// subspace and the raw residual is reported through *raw_residual.
Curv4 riemann_fd(const MetricChart& chart, const Point& x, const FdConfig& cfg,
                 double* raw_residual = nullptr);

// Closed-form callback when the chart has one, finite differences otherwise.
Curv4 riemann(const MetricChart& chart, const Point& x, const FdConfig& cfg,
              bool force_fd = false);

// Covariant derivative of a lowered tensor field; the result has the new
// derivative index FIRST: out(c, I) = nabla_c T_I.
TensorR cov_deriv(const TensorFieldFn& field, int rank, const MetricChart& chart,
                  const Point& x, const FdConfig& cfg);

// Bach tensor B_ij = 1/(n-3) nabla^k nabla^l W_ikjl + 1/(n-2) R^kl W_ikjl.
// Requires n >= 4. The Weyl field is evaluated pointwise (callbacks when
// available, finite differences otherwise) and differentiated covariantly;
// with cfg.richardson a single Richardson level is applied to the whole
// tensor, which the fourth metric derivatives in the first term need.
Sym2 bach(const MetricChart& chart, const Point& x, const FdConfig& cfg);

// (delta Rm0)_ijk = nabla^l Rm0_ijkl, antisymmetric in (i, j).
Tensor3 div_rm0(const MetricChart& chart, const Point& x, const FdConfig& cfg);

// Max-norm residual of nabla^l W_ijkl = (n-3)/(n-2) nabla^l Rm0_ijkl, which
// holds under constant scalar curvature. Refuses charts without the flag.
double weyl_divergence_residual(const MetricChart& chart, const Point& x, const FdConfig& cfg);

// Max-norm of the cyclic sum nabla_h Rm0_ijkl + nabla_l Rm0_ijhk +
// nabla_k Rm0_ijlh (constant scalar curvature only).
double second_bianchi_residual(const MetricChart& chart, const Point& x, const FdConfig& cfg);

struct KatoStats {
  int samples = 0;
  int vacuous = 0;       // points where |Rm0| is numerically zero
  double min_margin = 0; // min over samples of |nabla Rm0|^2 - |nabla |Rm0||^2
};
KatoStats kato_check(const MetricChart& chart, const std::vector<Point>& points,
                     const FdConfig& cfg);

struct BundleOptions {
  bool with_bach = false;
  bool with_div = false;
  bool force_fd = false;
};

// Every pointwise curvature quantity at one chart point.
struct CurvatureBundle {
  Point point;
  Sym2 g;
  Curv4 rm, weyl, ricci_part, scalar_part, rm0;
  Sym2 ricci, ricci0;
  double scalar = 0.0;
  std::optional<Sym2> bach;
  std::optional<Tensor3> div;
  double fd_raw_residual = 0.0;  // pre-projection symmetry residual (FD path)
};

CurvatureBundle bundle(const MetricChart& chart, const Point& x, const FdConfig& cfg,
                       const BundleOptions& opts = {});

}  // namespace curvtk
