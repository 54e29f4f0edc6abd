#include "curvtk/constants.hpp"

#include <cmath>
#include <stdexcept>

namespace curvtk {
namespace constants {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::domain_error(msg);
}

}  // namespace

double c_curvature_estimate(int n) {
  require(n >= 3, "C(n): need n >= 3");
  const double nn = n;
  return 4.0 * (nn * nn - 2.0) / (nn * std::sqrt(nn * nn - 1.0)) +
         (nn * nn - nn - 4.0) / std::sqrt((nn - 2.0) * nn * (nn * nn - 1.0)) +
         std::sqrt((nn - 2.0) * (nn - 1.0) / nn);
}

double a_curvature_estimate(int n, ScalarSign sign) {
  require(n >= 3, "A(n): need n >= 3");
  return sign == ScalarSign::NonNegative ? 1.0 / (n - 1.0) : 2.0 / n;
}

double e_divergence_estimate(int n) {
  require(n >= 3, "E(n): need n >= 3");
  const double nn = n;
  return c_curvature_estimate(n) + std::sqrt(std::pow(nn - 2.0, 3) / (2.0 * (nn - 1.0)));
}

namespace {

// Shared denominator core C(n) + (n-2) sqrt((n-2)/(2(n-1))), which equals E(n).
double epsilon_core(int n) {
  const double nn = n;
  return c_curvature_estimate(n) + (nn - 2.0) * std::sqrt((nn - 2.0) / (2.0 * (nn - 1.0)));
}

bool p_is_half_n(int n, double p) { return std::abs(p - n / 2.0) <= 1e-12 * n; }

}  // namespace

const char* epsilon_branch_name(EpsilonBranch branch) {
  switch (branch) {
    case EpsilonBranch::PEqualsHalfN: return "p-half-n";
    case EpsilonBranch::Middle: return "middle";
    case EpsilonBranch::LargeP: return "large-p";
  }
  return "?";
}

double epsilon_branch_value(int n, double p, EpsilonBranch branch) {
  require(n >= 4, "epsilon(n, p): need n >= 4");
  require(p >= n / 2.0 - 1e-12 * n, "epsilon(n, p): need p >= n/2");
  const double nn = n;
  const double core = epsilon_core(n);
  switch (branch) {
    case EpsilonBranch::PEqualsHalfN:
      require(n == 4 || n == 5,
              "epsilon branch p-half-n requires n in {4, 5} (n >= 6 uses large-p)");
      require(p_is_half_n(n, p), "epsilon branch p-half-n requires p = n/2 exactly");
      return (nn - 2.0) / (4.0 * (nn - 1.0) * core);
    case EpsilonBranch::Middle: {
      require(n == 4 || n == 5,
              "epsilon middle branch requires n in {4, 5}; its 6-n factor is "
              "meaningless from n = 6 on");
      const double upper = 2.0 * nn / (nn - 2.0);
      require(!p_is_half_n(n, p) && p > nn / 2.0 && p < upper,
              "epsilon middle branch requires n/2 < p < 2n/(n-2), open at both ends");
      const double lead =
          std::pow((nn - 2.0) * (2.0 * p - nn) / (nn * (6.0 - nn)), nn / (2.0 * p));
      return lead * (6.0 - nn) * p / (2.0 * (nn - 1.0) * (2.0 * p - nn) * core);
    }
    case EpsilonBranch::LargeP:
      require(n >= 6 || p >= 2.0 * nn / (nn - 2.0) - 1e-12,
              "epsilon large-p branch requires n >= 6 (any p >= n/2) or "
              "n in {4, 5} with p >= 2n/(n-2)");
      return 1.0 / ((nn - 1.0) * core);
  }
  throw std::domain_error("epsilon: unknown branch");
}

Epsilon epsilon_pinching(int n, double p) {
  require(n >= 4, "epsilon(n, p): need n >= 4");
  require(p >= n / 2.0 - 1e-12 * n, "epsilon(n, p): need p >= n/2");
  EpsilonBranch branch;
  if (n >= 6) {
    branch = EpsilonBranch::LargeP;
  } else if (p_is_half_n(n, p)) {
    branch = EpsilonBranch::PEqualsHalfN;
  } else if (p < 2.0 * n / (n - 2.0)) {
    branch = EpsilonBranch::Middle;
  } else {
    branch = EpsilonBranch::LargeP;
  }
  return Epsilon{epsilon_branch_value(n, p, branch), branch};
}

double c1_weyl_ricci_pinching(int n) {
  require(n >= 4, "C1(n): need n >= 4");
  const double nn = n;
  if (n == 4 || n == 5) return std::sqrt((nn - 2.0) / (32.0 * (nn - 1.0)));
  return 1.0 / std::sqrt(2.0 * (nn - 2.0) * (nn - 1.0));
}

double c2_weyl_estimate(int n) {
  require(n >= 4, "C2(n): need n >= 4");
  if (n == 4) return std::sqrt(6.0) / 2.0;
  if (n == 5) return 8.0 * std::sqrt(10.0) / 15.0;
  const double nn = n;
  return 4.0 * (nn * nn - 2.0) / (nn * std::sqrt(nn * nn - 1.0)) +
         (nn * nn - nn - 4.0) /
             std::sqrt((nn - 2.0) * (nn - 1.0) * nn * (nn + 1.0));
}

double c3_weitzenbock(int n) {
  require(n == 4 || n == 5, "C3(n): defined for n in {4, 5} only");
  return n == 4 ? std::sqrt(6.0) / 2.0 : 8.0 * std::sqrt(10.0) / 15.0;
}

}  // namespace constants
}  // namespace curvtk
