#pragma once

// Extended-precision oracle for the pinching constants: every displayed
// radical expression is evaluated with 256-bit MPFR arithmetic (about 77
// decimal digits) and rounded to double at the very end. Test-only; the
// library itself stays in double precision.

#include <mpfr.h>

#include <stdexcept>

namespace mp {

constexpr mpfr_prec_t kPrec = 256;

class Real {
 public:
  Real() { mpfr_init2(v_, kPrec); mpfr_set_zero(v_, 1); }
  Real(long x) { mpfr_init2(v_, kPrec); mpfr_set_si(v_, x, MPFR_RNDN); }
  Real(const Real& o) { mpfr_init2(v_, kPrec); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real& operator=(const Real& o) {
    if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  friend Real operator+(const Real& a, const Real& b) {
    Real r;
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator-(const Real& a, const Real& b) {
    Real r;
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator*(const Real& a, const Real& b) {
    Real r;
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator/(const Real& a, const Real& b) {
    Real r;
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real sqrt(const Real& a) {
    Real r;
    mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real pow(const Real& a, const Real& b) {
    Real r;
    mpfr_pow(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  static Real from_double(double x) {
    Real r;
    mpfr_set_d(r.v_, x, MPFR_RNDN);
    return r;
  }

 private:
  mpfr_t v_;
};

inline Real c_constant(long n) {
  Real nn(n);
  Real one(1), two(2), four(4);
  Real n2 = nn * nn;
  return four * (n2 - two) / (nn * sqrt(n2 - one)) +
         (n2 - nn - four) / sqrt((nn - two) * nn * (n2 - one)) +
         sqrt((nn - two) * (nn - one) / nn);
}

inline Real a_constant(long n, bool nonneg) {
  return nonneg ? Real(1) / Real(n - 1) : Real(2) / Real(n);
}

inline Real e_constant(long n) {
  Real nn(n);
  Real two(2), one(1);
  Real cube = (nn - two) * (nn - two) * (nn - two);
  return c_constant(n) + sqrt(cube / (two * (nn - one)));
}

inline Real epsilon_core(long n) {
  Real nn(n);
  Real one(1), two(2);
  return c_constant(n) + (nn - two) * sqrt((nn - two) / (two * (nn - one)));
}

// branch: 0 = p equals n/2 (n in {4,5}), 1 = middle, 2 = large p
inline Real epsilon_constant(long n, double p, int branch) {
  Real nn(n);
  Real pp = Real::from_double(p);
  Real one(1), two(2), four(4), six(6);
  Real core = epsilon_core(n);
  if (branch == 0) return (nn - two) / (four * (nn - one) * core);
  if (branch == 2) return one / ((nn - one) * core);
  Real lead = pow((nn - two) * (two * pp - nn) / (nn * (six - nn)),
                  nn / (two * pp));
  return lead * (six - nn) * pp / (two * (nn - one) * (two * pp - nn) * core);
}

inline Real c1_constant(long n) {
  Real nn(n);
  Real one(1), two(2);
  if (n == 4 || n == 5) return sqrt((nn - two) / (Real(32) * (nn - one)));
  return one / sqrt(two * (nn - two) * (nn - one));
}

inline Real c2_constant(long n) {
  if (n == 4) return sqrt(Real(6)) / Real(2);
  if (n == 5) return Real(8) * sqrt(Real(10)) / Real(15);
  Real nn(n);
  Real one(1), two(2), four(4);
  Real n2 = nn * nn;
  return four * (n2 - two) / (nn * sqrt(n2 - one)) +
         (n2 - nn - four) / sqrt((nn - two) * (nn - one) * nn * (nn + one));
}

inline Real c3_constant(long n) {
  if (n == 4) return sqrt(Real(6)) / Real(2);
  if (n == 5) return Real(8) * sqrt(Real(10)) / Real(15);
  throw std::domain_error("c3_constant: n in {4, 5} only");
}

inline double rel_err(double value, const Real& reference) {
  double ref = reference.to_double();
  double denom = ref == 0.0 ? 1.0 : ref;
  return (value - ref) / denom < 0 ? -((value - ref) / denom) : (value - ref) / denom;
}

}  // namespace mp
