#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Pointwise multilinear algebra for curvature-type tensors: the symmetric and
// antisymmetric 2-tensors, algebraic curvature tensors with dense n^4 storage,
// metric-contracted norms, Kulkarni-Nomizu products and the orthogonal
// decomposition Rm = W + V + U.
//
// Contractions against a general positive-definite metric are done by passing
// to a g-orthonormal frame once (Cholesky of g) and then using identity-metric
// algebra; all dimensions of interest are small (n <= 10).

namespace curvtk {

using Point = std::vector<double>;

class GaussianRng;  // rng.hpp

// Symmetric 2-tensor, full row-major n x n storage.
struct Sym2 {
  int n = 0;
  std::vector<double> a;

  Sym2() = default;
  explicit Sym2(int dim) : n(dim), a(std::size_t(dim) * dim, 0.0) {}

  double& operator()(int i, int j) { return a[std::size_t(i) * n + j]; }
  double operator()(int i, int j) const { return a[std::size_t(i) * n + j]; }

  // Sets both mirror entries.
  void set(int i, int j, double v) {
    a[std::size_t(i) * n + j] = v;
    a[std::size_t(j) * n + i] = v;
  }

  void resize(int dim) {
    n = dim;
    a.assign(std::size_t(dim) * dim, 0.0);
  }

  void fill_zero() { a.assign(a.size(), 0.0); }

  static Sym2 identity(int dim) {
    Sym2 s(dim);
    for (int i = 0; i < dim; ++i) s(i, i) = 1.0;
    return s;
  }

  double symmetry_residual() const;
};

// Antisymmetric 2-tensor.
struct Skew2 {
  int n = 0;
  std::vector<double> a;

  Skew2() = default;
  explicit Skew2(int dim) : n(dim), a(std::size_t(dim) * dim, 0.0) {}

  double& operator()(int i, int j) { return a[std::size_t(i) * n + j]; }
  double operator()(int i, int j) const { return a[std::size_t(i) * n + j]; }

  void set(int i, int j, double v) {
    a[std::size_t(i) * n + j] = v;
    a[std::size_t(j) * n + i] = -v;
  }
};

// Rank-4 tensor with the algebraic curvature symmetries
//   T_ijkl = T_klij = -T_jikl = -T_ijlk,
//   T_ijkl + T_iljk + T_iklj = 0 (first Bianchi).
// Storage is the full dense n^4 array; the symmetries are maintained by the
// constructing operations and can be checked with the residual helpers below.
struct Curv4 {
  int n = 0;
  std::vector<double> a;

  Curv4() = default;
  explicit Curv4(int dim) : n(dim), a(std::size_t(dim) * dim * dim * dim, 0.0) {}

  double& operator()(int i, int j, int k, int l) {
    return a[((std::size_t(i) * n + j) * n + k) * n + l];
  }
  double operator()(int i, int j, int k, int l) const {
    return a[((std::size_t(i) * n + j) * n + k) * n + l];
  }

  void resize(int dim) {
    n = dim;
    a.assign(std::size_t(dim) * dim * dim * dim, 0.0);
  }

  void fill_zero() { a.assign(a.size(), 0.0); }
};

// ---- element-wise arithmetic ----
Curv4 operator+(const Curv4& x, const Curv4& y);
Curv4 operator-(const Curv4& x, const Curv4& y);
Curv4 operator*(double c, const Curv4& x);
Sym2 operator+(const Sym2& x, const Sym2& y);
Sym2 operator-(const Sym2& x, const Sym2& y);
Sym2 operator*(double c, const Sym2& x);

double max_abs(const Curv4& t);
double max_abs(const Sym2& s);

// ---- identity-metric inner products and norms ----
double inner(const Sym2& x, const Sym2& y);
double inner(const Skew2& x, const Skew2& y);
double inner(const Curv4& x, const Curv4& y);
double norm_sq(const Sym2& s);
double norm_sq(const Curv4& t);

// ---- metric-contracted norms, |T|^2 = g^im g^jn g^ks g^lt T_ijkl T_mnst ----
// Throws on dimension mismatch or non-positive-definite g.
double norm_sq(const Sym2& s, const Sym2& g);
double norm_sq(const Curv4& t, const Sym2& g);

// Transform to a g-orthonormal frame: entries of a tensor against the frame
// P = L^{-T} with g = L L^T, so identity-metric algebra applies afterwards.
class FrameTransform {
 public:
  explicit FrameTransform(const Sym2& g);
  Sym2 to_frame(const Sym2& s) const;
  Skew2 to_frame(const Skew2& w) const;
  Curv4 to_frame(const Curv4& t) const;
  // Generic rank-r flat tensor (all indices lowered, dimension n each).
  std::vector<double> to_frame(const std::vector<double>& t, int rank) const;

 private:
  int n_;
  std::vector<double> p_;  // row-major, frame vectors as columns
};

// ---- traces and trace adjustments ----
double trace(const Sym2& s, const Sym2& g);
Sym2 trace_free_part(const Sym2& s, const Sym2& g);

// g^ik T_ijkl; for the Riemann tensor this is the Ricci tensor.
Sym2 ricci_contraction(const Curv4& t, const Sym2& g);
Sym2 ricci_contraction(const Curv4& t);  // identity metric

// ---- Kulkarni-Nomizu product ----
// (A (x) B)_ijkl = A_ik B_jl - A_il B_jk + A_jl B_ik - A_jk B_il.
// Bilinear, symmetric in (A, B), output satisfies all Curv4 symmetries.
Curv4 kulkarni_nomizu(const Sym2& x, const Sym2& y);

// ---- orthogonal decomposition ----
// Rm = W + V + U with
//   V = 1/(n-2) (Ric0 (x) g),  U = R/(2n(n-1)) (g (x) g),
// Ric = g^ik Rm_ijkl, R = tr_g Ric, Ric0 = Ric - (R/n) g, Rm0 = Rm - U.
struct Decomposition {
  Curv4 weyl;         // W, totally trace-free
  Curv4 ricci_part;   // V
  Curv4 scalar_part;  // U
  Curv4 rm0;          // Rm - U
  Sym2 ricci;
  Sym2 ricci0;
  double scalar = 0.0;
};
Decomposition decompose(const Curv4& rm, const Sym2& g);

// ---- curvature tensors as operators ----
// (T w)_kl = T_ijkl w_ij on antisymmetric w; (T s)_kl = T_kilj s_ij on
// 2-tensors. Both are self-adjoint for tensors with the pair symmetry.
Skew2 apply_lambda2(const Curv4& t, const Skew2& w);
Sym2 apply_otimes2(const Curv4& t, const Sym2& s);

// ---- orthogonal split of Ric0 (x) Ric0 (identity-metric algebra) ----
// S (x) S = T + V' + U' with T totally trace-free,
//   V' = -2/(n-2) (S^2 (x) g) + 2/(n(n-2)) |S|^2 (g (x) g),
//   U' = -1/(n(n-1)) |S|^2 (g (x) g).
// Input must be trace-free symmetric (tolerance-checked).
struct KnSquareParts {
  Curv4 trace_free;   // T
  Curv4 ricci_part;   // V'
  Curv4 scalar_part;  // U'
};
KnSquareParts kn_square_decompose(const Sym2& ric0);

// ---- symmetry maintenance ----
// Average over the 8-element group of pair swaps and antisymmetries.
void symmetrize_pairs(Curv4& t);
// Project onto the kernel of the first-Bianchi cyclic sum: T -> T - b(T)/3
// with b(T)_ijkl = T_ijkl + T_iljk + T_iklj.
void project_first_bianchi(Curv4& t);
double pair_symmetry_residual(const Curv4& t);
double first_bianchi_residual(const Curv4& t);

// Random algebraic curvature tensor: standard Gaussian entries symmetrized
// over the pair-symmetry group, then projected onto the first-Bianchi
// subspace. Covers the full algebraic curvature space.
Curv4 random_curvature(int n, GaussianRng& rng);
// Random trace-free symmetric matrix with Gaussian entries.
Sym2 random_trace_free(int n, GaussianRng& rng);

}  // namespace curvtk
