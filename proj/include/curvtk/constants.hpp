#pragma once

#include <string>

// The named constants of the pinching theorems, evaluated in double precision
// from their displayed closed forms. Domain violations throw std::domain_error
// with a diagnostic naming the branch conditions.

namespace curvtk {
namespace constants {

// C(n) = 4(n^2-2)/(n sqrt(n^2-1)) + (n^2-n-4)/sqrt((n-2) n (n^2-1))
//      + sqrt((n-2)(n-1)/n),  n >= 3.
double c_curvature_estimate(int n);

enum class ScalarSign { NonNegative, Negative };

// A(n) = 1/(n-1) for nonnegative scalar curvature, 2/n for negative.
double a_curvature_estimate(int n, ScalarSign sign);

// E(n) = C(n) + sqrt((n-2)^3 / (2(n-1))).
double e_divergence_estimate(int n);

enum class EpsilonBranch { PEqualsHalfN, Middle, LargeP };

struct Epsilon {
  double value;
  EpsilonBranch branch;
};

// The L^p pinching constant. Branches:
//   n in {4,5}, p = n/2          -> PEqualsHalfN
//   n in {4,5}, n/2 < p < 2n/(n-2) -> Middle (open at both ends)
//   n >= 6, p >= n/2, or n in {4,5}, p >= 2n/(n-2) -> LargeP
// p < n/2 is rejected; so is the Middle branch outside n in {4,5} (the
// factor 6-n in its formula is meaningless from n = 6 on).
Epsilon epsilon_pinching(int n, double p);

// Evaluates a specific branch, rejecting (n, p) outside that branch's domain.
double epsilon_branch_value(int n, double p, EpsilonBranch branch);

const char* epsilon_branch_name(EpsilonBranch branch);

// C1(n): sqrt((n-2)/(32(n-1))) for n in {4,5}, 1/sqrt(2(n-2)(n-1)) for n >= 6.
double c1_weyl_ricci_pinching(int n);

// C2(n): sqrt(6)/2 (n=4), 8 sqrt(10)/15 (n=5),
//        4(n^2-2)/(n sqrt(n^2-1)) + (n^2-n-4)/sqrt((n-2)(n-1)n(n+1)) (n >= 6).
double c2_weyl_estimate(int n);

// C3(n): the Weitzenbock coefficient, n in {4, 5} only.
double c3_weitzenbock(int n);

}  // namespace constants
}  // namespace curvtk
