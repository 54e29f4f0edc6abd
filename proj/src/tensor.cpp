#include "curvtk/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "curvtk/linalg.hpp"
#include "curvtk/rng.hpp"

namespace curvtk {

namespace {

void require_same_dim(int a, int b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string("dimension mismatch in ") + what);
}

}  // namespace

double Sym2::symmetry_residual() const {
  double r = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) r = std::max(r, std::abs((*this)(i, j) - (*this)(j, i)));
  return r;
}

Curv4 operator+(const Curv4& x, const Curv4& y) {
  require_same_dim(x.n, y.n, "Curv4 +");
  Curv4 out(x.n);
  for (std::size_t i = 0; i < x.a.size(); ++i) out.a[i] = x.a[i] + y.a[i];
  return out;
}

Curv4 operator-(const Curv4& x, const Curv4& y) {
  require_same_dim(x.n, y.n, "Curv4 -");
  Curv4 out(x.n);
  for (std::size_t i = 0; i < x.a.size(); ++i) out.a[i] = x.a[i] - y.a[i];
  return out;
}

Curv4 operator*(double c, const Curv4& x) {
  Curv4 out(x.n);
  for (std::size_t i = 0; i < x.a.size(); ++i) out.a[i] = c * x.a[i];
  return out;
}

Sym2 operator+(const Sym2& x, const Sym2& y) {
  require_same_dim(x.n, y.n, "Sym2 +");
  Sym2 out(x.n);
  for (std::size_t i = 0; i < x.a.size(); ++i) out.a[i] = x.a[i] + y.a[i];
  return out;
}

Sym2 operator-(const Sym2& x, const Sym2& y) {
  require_same_dim(x.n, y.n, "Sym2 -");
  Sym2 out(x.n);
  for (std::size_t i = 0; i < x.a.size(); ++i) out.a[i] = x.a[i] - y.a[i];
  return out;
}

Sym2 operator*(double c, const Sym2& x) {
  Sym2 out(x.n);
  for (std::size_t i = 0; i < x.a.size(); ++i) out.a[i] = c * x.a[i];
  return out;
}

double max_abs(const Curv4& t) {
  double m = 0.0;
  for (double v : t.a) m = std::max(m, std::abs(v));
  return m;
}

double max_abs(const Sym2& s) {
  double m = 0.0;
  for (double v : s.a) m = std::max(m, std::abs(v));
  return m;
}

double inner(const Sym2& x, const Sym2& y) {
  require_same_dim(x.n, y.n, "inner(Sym2)");
  double s = 0.0;
  for (std::size_t i = 0; i < x.a.size(); ++i) s += x.a[i] * y.a[i];
  return s;
}

double inner(const Skew2& x, const Skew2& y) {
  require_same_dim(x.n, y.n, "inner(Skew2)");
  double s = 0.0;
  for (std::size_t i = 0; i < x.a.size(); ++i) s += x.a[i] * y.a[i];
  return s;
}

double inner(const Curv4& x, const Curv4& y) {
  require_same_dim(x.n, y.n, "inner(Curv4)");
  double s = 0.0;
  for (std::size_t i = 0; i < x.a.size(); ++i) s += x.a[i] * y.a[i];
  return s;
}

double norm_sq(const Sym2& s) { return inner(s, s); }
double norm_sq(const Curv4& t) { return inner(t, t); }

FrameTransform::FrameTransform(const Sym2& g) : n_(g.n) {
  Cholesky chol(g.a.data(), g.n);
  p_ = chol.orthonormal_frame();
}

namespace {

// Applies x_new[.. a ..] = sum_i x_old[.. i ..] P_ia along one axis of a
// dense rank-r tensor with every axis of length n.
std::vector<double> contract_axis(const std::vector<double>& t, int rank, int axis, int n,
                                  const std::vector<double>& p) {
  std::size_t inner = 1;
  for (int ax = axis + 1; ax < rank; ++ax) inner *= n;
  std::size_t outer = 1;
  for (int ax = 0; ax < axis; ++ax) outer *= n;

  std::vector<double> out(t.size(), 0.0);
  for (std::size_t o = 0; o < outer; ++o) {
    const std::size_t base = o * std::size_t(n) * inner;
    for (int i = 0; i < n; ++i) {
      const double* src = t.data() + base + std::size_t(i) * inner;
      for (int a = 0; a < n; ++a) {
        const double w = p[std::size_t(i) * n + a];
        if (w == 0.0) continue;
        double* dst = out.data() + base + std::size_t(a) * inner;
        for (std::size_t q = 0; q < inner; ++q) dst[q] += w * src[q];
      }
    }
  }
  return out;
}

}  // namespace

std::vector<double> FrameTransform::to_frame(const std::vector<double>& t, int rank) const {
  std::vector<double> cur = t;
  for (int axis = 0; axis < rank; ++axis) cur = contract_axis(cur, rank, axis, n_, p_);
  return cur;
}

Sym2 FrameTransform::to_frame(const Sym2& s) const {
  Sym2 out(n_);
  out.a = to_frame(s.a, 2);
  return out;
}

Skew2 FrameTransform::to_frame(const Skew2& w) const {
  Skew2 out(n_);
  out.a = to_frame(w.a, 2);
  return out;
}

Curv4 FrameTransform::to_frame(const Curv4& t) const {
  Curv4 out(n_);
  out.a = to_frame(t.a, 4);
  return out;
}

double norm_sq(const Sym2& s, const Sym2& g) {
  require_same_dim(s.n, g.n, "norm_sq(Sym2, g)");
  FrameTransform f(g);
  return norm_sq(f.to_frame(s));
}

double norm_sq(const Curv4& t, const Sym2& g) {
  require_same_dim(t.n, g.n, "norm_sq(Curv4, g)");
  FrameTransform f(g);
  return norm_sq(f.to_frame(t));
}

double trace(const Sym2& s, const Sym2& g) {
  require_same_dim(s.n, g.n, "trace");
  Cholesky chol(g.a.data(), g.n);
  std::vector<double> ginv = chol.inverse();
  double tr = 0.0;
  for (int i = 0; i < s.n; ++i)
    for (int j = 0; j < s.n; ++j) tr += ginv[std::size_t(i) * s.n + j] * s(i, j);
  return tr;
}

Sym2 trace_free_part(const Sym2& s, const Sym2& g) {
  double tr = trace(s, g);
  Sym2 out(s.n);
  for (int i = 0; i < s.n; ++i)
    for (int j = 0; j < s.n; ++j) out(i, j) = s(i, j) - (tr / s.n) * g(i, j);
  return out;
}

Sym2 ricci_contraction(const Curv4& t, const Sym2& g) {
  require_same_dim(t.n, g.n, "ricci_contraction");
  Cholesky chol(g.a.data(), g.n);
  std::vector<double> ginv = chol.inverse();
  const int n = t.n;
  Sym2 out(n);
  for (int j = 0; j < n; ++j)
    for (int l = j; l < n; ++l) {
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) s += ginv[std::size_t(i) * n + k] * t(i, j, k, l);
      out.set(j, l, s);
    }
  return out;
}

Sym2 ricci_contraction(const Curv4& t) {
  const int n = t.n;
  Sym2 out(n);
  for (int j = 0; j < n; ++j)
    for (int l = j; l < n; ++l) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += t(i, j, i, l);
      out.set(j, l, s);
    }
  return out;
}

Curv4 kulkarni_nomizu(const Sym2& x, const Sym2& y) {
  require_same_dim(x.n, y.n, "kulkarni_nomizu");
  const int n = x.n;
  Curv4 out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          out(i, j, k, l) = x(i, k) * y(j, l) - x(i, l) * y(j, k) + x(j, l) * y(i, k) -
                            x(j, k) * y(i, l);
  return out;
}

Decomposition decompose(const Curv4& rm, const Sym2& g) {
  require_same_dim(rm.n, g.n, "decompose");
  const int n = rm.n;
  if (n < 3) throw std::invalid_argument("decompose: need n >= 3");
  const double scale = std::max(max_abs(rm), 1e-300);
  if (pair_symmetry_residual(rm) > 1e-8 * scale || first_bianchi_residual(rm) > 1e-8 * scale)
    throw std::invalid_argument("decompose: input violates curvature symmetries");

  Decomposition d;
  d.ricci = ricci_contraction(rm, g);
  d.scalar = trace(d.ricci, g);
  d.ricci0 = Sym2(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d.ricci0(i, j) = d.ricci(i, j) - (d.scalar / n) * g(i, j);

  d.ricci_part = (1.0 / (n - 2)) * kulkarni_nomizu(d.ricci0, g);
  d.scalar_part = (d.scalar / (2.0 * n * (n - 1))) * kulkarni_nomizu(g, g);
  d.rm0 = rm - d.scalar_part;
  d.weyl = d.rm0 - d.ricci_part;
  return d;
}

Skew2 apply_lambda2(const Curv4& t, const Skew2& w) {
  require_same_dim(t.n, w.n, "apply_lambda2");
  const int n = t.n;
  Skew2 out(n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += t(i, j, k, l) * w(i, j);
      out(k, l) = s;
    }
  return out;
}

Sym2 apply_otimes2(const Curv4& t, const Sym2& s2) {
  require_same_dim(t.n, s2.n, "apply_otimes2");
  const int n = t.n;
  Sym2 out(n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += t(k, i, l, j) * s2(i, j);
      out(k, l) = s;
    }
  return out;
}

KnSquareParts kn_square_decompose(const Sym2& ric0) {
  const int n = ric0.n;
  if (n < 3) throw std::invalid_argument("kn_square_decompose: need n >= 3");
  double tr = 0.0;
  for (int i = 0; i < n; ++i) tr += ric0(i, i);
  const double nrm = std::sqrt(norm_sq(ric0));
  if (std::abs(tr) > 1e-12 * std::max(nrm, 1e-300) * n)
    throw std::invalid_argument("kn_square_decompose: input is not trace-free");

  Sym2 g = Sym2::identity(n);
  Sym2 sq(n);  // (S^2)_ik = S_ip S_kp
  for (int i = 0; i < n; ++i)
    for (int k = i; k < n; ++k) {
      double s = 0.0;
      for (int p = 0; p < n; ++p) s += ric0(i, p) * ric0(k, p);
      sq.set(i, k, s);
    }
  const double s2 = norm_sq(ric0);

  Curv4 gg = kulkarni_nomizu(g, g);
  KnSquareParts parts;
  parts.ricci_part =
      (-2.0 / (n - 2)) * kulkarni_nomizu(sq, g) + (2.0 * s2 / (n * (n - 2))) * gg;
  parts.scalar_part = (-s2 / (n * (n - 1))) * gg;
  parts.trace_free = kulkarni_nomizu(ric0, ric0) - parts.ricci_part - parts.scalar_part;
  return parts;
}

void symmetrize_pairs(Curv4& t) {
  const int n = t.n;
  Curv4 out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          out(i, j, k, l) = 0.125 * (t(i, j, k, l) - t(j, i, k, l) - t(i, j, l, k) +
                                     t(j, i, l, k) + t(k, l, i, j) - t(l, k, i, j) -
                                     t(k, l, j, i) + t(l, k, j, i));
  t = out;
}

void project_first_bianchi(Curv4& t) {
  const int n = t.n;
  Curv4 out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double b = t(i, j, k, l) + t(i, l, j, k) + t(i, k, l, j);
          out(i, j, k, l) = t(i, j, k, l) - b / 3.0;
        }
  t = out;
}

double pair_symmetry_residual(const Curv4& t) {
  const int n = t.n;
  double r = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double v = t(i, j, k, l);
          r = std::max(r, std::abs(v - t(k, l, i, j)));
          r = std::max(r, std::abs(v + t(j, i, k, l)));
          r = std::max(r, std::abs(v + t(i, j, l, k)));
        }
  return r;
}

double first_bianchi_residual(const Curv4& t) {
  const int n = t.n;
  double r = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          r = std::max(r, std::abs(t(i, j, k, l) + t(i, l, j, k) + t(i, k, l, j)));
  return r;
}

Curv4 random_curvature(int n, GaussianRng& rng) {
  Curv4 t(n);
  for (double& v : t.a) v = rng.gaussian();
  symmetrize_pairs(t);
  project_first_bianchi(t);
  return t;
}

Sym2 random_trace_free(int n, GaussianRng& rng) {
  Sym2 s(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) s.set(i, j, rng.gaussian());
  double tr = 0.0;
  for (int i = 0; i < n; ++i) tr += s(i, i);
  for (int i = 0; i < n; ++i) s(i, i) -= tr / n;
  return s;
}

}  // namespace curvtk
