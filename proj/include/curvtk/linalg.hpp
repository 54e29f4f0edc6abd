#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

// Small dense symmetric-matrix kernels for the dimensions this library works
// at (n <= 10 or so). Row-major storage throughout.

namespace curvtk {

// Cholesky factorization g = L L^T of a symmetric positive-definite matrix.
// Throws std::domain_error if the matrix is not positive definite.
class Cholesky {
 public:
  Cholesky(const double* g, int n) : n_(n), l_(std::size_t(n) * n, 0.0) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j <= i; ++j) {
        double s = g[std::size_t(i) * n + j];
        for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
        if (i == j) {
          if (s <= 0.0 || !std::isfinite(s))
            throw std::domain_error("Cholesky: matrix not positive definite");
          l(i, i) = std::sqrt(s);
        } else {
          l(i, j) = s / l(j, j);
        }
      }
    }
  }

  int dim() const { return n_; }
  double l(int i, int j) const { return l_[std::size_t(i) * n_ + j]; }

  double det() const {
    double d = 1.0;
    for (int i = 0; i < n_; ++i) d *= l(i, i);
    return d * d;
  }

  double sqrt_det() const {
    double d = 1.0;
    for (int i = 0; i < n_; ++i) d *= l(i, i);
    return d;
  }

  // Solves L y = b in place.
  void forward_solve(double* b) const {
    for (int i = 0; i < n_; ++i) {
      double s = b[i];
      for (int k = 0; k < i; ++k) s -= l(i, k) * b[k];
      b[i] = s / l(i, i);
    }
  }

  // Solves L^T y = b in place.
  void backward_solve(double* b) const {
    for (int i = n_ - 1; i >= 0; --i) {
      double s = b[i];
      for (int k = i + 1; k < n_; ++k) s -= l(k, i) * b[k];
      b[i] = s / l(i, i);
    }
  }

  // Inverse of the original matrix, g^{-1} = L^{-T} L^{-1}.
  std::vector<double> inverse() const {
    std::vector<double> inv(std::size_t(n_) * n_, 0.0);
    std::vector<double> col(n_);
    for (int j = 0; j < n_; ++j) {
      for (int i = 0; i < n_; ++i) col[i] = (i == j) ? 1.0 : 0.0;
      forward_solve(col.data());
      backward_solve(col.data());
      for (int i = 0; i < n_; ++i) inv[std::size_t(i) * n_ + j] = col[i];
    }
    // symmetrize away round-off
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < i; ++j) {
        double m = 0.5 * (inv[std::size_t(i) * n_ + j] + inv[std::size_t(j) * n_ + i]);
        inv[std::size_t(i) * n_ + j] = m;
        inv[std::size_t(j) * n_ + i] = m;
      }
    return inv;
  }

  // Columns of P solve L^T P = I, so that P^T g P = I. The columns of P are a
  // g-orthonormal frame expressed in the working coordinates.
  std::vector<double> orthonormal_frame() const {
    std::vector<double> p(std::size_t(n_) * n_, 0.0);
    std::vector<double> col(n_);
    for (int j = 0; j < n_; ++j) {
      for (int i = 0; i < n_; ++i) col[i] = (i == j) ? 1.0 : 0.0;
      backward_solve(col.data());
      for (int i = 0; i < n_; ++i) p[std::size_t(i) * n_ + j] = col[i];
    }
    return p;
  }

 private:
  double& l(int i, int j) { return l_[std::size_t(i) * n_ + j]; }
  int n_;
  std::vector<double> l_;
};

}  // namespace curvtk
