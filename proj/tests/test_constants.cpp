#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "curvtk/constants.hpp"
#include "mpfr_oracle.hpp"

using namespace curvtk::constants;

TEST_CASE("C(n) against the extended-precision oracle") {
  for (int n = 3; n <= 12; ++n)
    CHECK(mp::rel_err(c_curvature_estimate(n), mp::c_constant(n)) < 1e-14);
}

TEST_CASE("C(n) at n = 4 matches the explicit radicals") {
  const double expect = 14.0 / std::sqrt(15.0) + 8.0 / std::sqrt(120.0) +
                        std::sqrt(1.5);
  CHECK(c_curvature_estimate(4) == doctest::Approx(expect).epsilon(1e-15));
  CHECK(c_curvature_estimate(4) == doctest::Approx(5.569824).epsilon(1e-6));
  CHECK(c_curvature_estimate(6) == doctest::Approx(6.554).epsilon(1e-3));
}

TEST_CASE("C(n) positive up to n = 50, E(n) exceeds C(n)") {
  for (int n = 3; n <= 50; ++n) {
    CHECK(c_curvature_estimate(n) > 0.0);
    CHECK(e_divergence_estimate(n) > c_curvature_estimate(n));
  }
  CHECK_THROWS_AS(c_curvature_estimate(2), std::domain_error);
}

TEST_CASE("A(n) branch values") {
  CHECK(a_curvature_estimate(4, ScalarSign::NonNegative) == doctest::Approx(1.0 / 3));
  CHECK(a_curvature_estimate(4, ScalarSign::Negative) == doctest::Approx(0.5));
  for (int n = 3; n <= 20; ++n)
    CHECK(a_curvature_estimate(n, ScalarSign::NonNegative) <
          a_curvature_estimate(n, ScalarSign::Negative));
}

TEST_CASE("E(n) against the oracle and the n = 4, 5 values") {
  for (int n = 3; n <= 12; ++n)
    CHECK(mp::rel_err(e_divergence_estimate(n), mp::e_constant(n)) < 1e-14);
  CHECK(e_divergence_estimate(4) ==
        doctest::Approx(c_curvature_estimate(4) + std::sqrt(8.0 / 6.0)).epsilon(1e-15));
  CHECK(e_divergence_estimate(5) ==
        doctest::Approx(c_curvature_estimate(5) + std::sqrt(27.0 / 8.0)).epsilon(1e-15));
  CHECK(e_divergence_estimate(4) == doctest::Approx(6.724).epsilon(1e-3));
}

TEST_CASE("epsilon: branch selection") {
  CHECK(epsilon_pinching(4, 2.0).branch == EpsilonBranch::PEqualsHalfN);
  CHECK(epsilon_pinching(4, 3.0).branch == EpsilonBranch::Middle);
  CHECK(epsilon_pinching(4, 3.9999).branch == EpsilonBranch::Middle);
  CHECK(epsilon_pinching(4, 4.0).branch == EpsilonBranch::LargeP);  // closed above
  CHECK(epsilon_pinching(4, 7.0).branch == EpsilonBranch::LargeP);
  CHECK(epsilon_pinching(5, 2.5).branch == EpsilonBranch::PEqualsHalfN);
  CHECK(epsilon_pinching(5, 3.0).branch == EpsilonBranch::Middle);
  CHECK(epsilon_pinching(5, 10.0 / 3.0).branch == EpsilonBranch::LargeP);
  for (double p : {3.0, 4.0, 11.0})
    CHECK(epsilon_pinching(6, p).branch == EpsilonBranch::LargeP);
}

TEST_CASE("epsilon: values against the oracle on all branches") {
  struct Case { int n; double p; int branch; };
  const Case cases[] = {{4, 2.0, 0},  {5, 2.5, 0},   {4, 2.5, 1}, {4, 3.0, 1},
                        {4, 3.9, 1},  {5, 2.8, 1},   {5, 3.2, 1}, {4, 4.0, 2},
                        {4, 9.0, 2},  {5, 10.0 / 3.0, 2}, {6, 3.0, 2},  {6, 14.0, 2},
                        {8, 4.0, 2},  {10, 5.0, 2}};
  for (const Case& c : cases) {
    Epsilon eps = epsilon_pinching(c.n, c.p);
    CHECK(mp::rel_err(eps.value, mp::epsilon_constant(c.n, c.p, c.branch)) < 1e-14);
  }
}

TEST_CASE("epsilon: explicit closed forms at n = 4") {
  // p = n/2 branch
  const double core4 = c_curvature_estimate(4) + 2.0 / std::sqrt(3.0);
  CHECK(epsilon_pinching(4, 2.0).value ==
        doctest::Approx(2.0 / (12.0 * core4)).epsilon(1e-15));
  // middle branch at p = 3: [(2*2)/(4*2)]^{4/6} * (2*3)/(2*3*2*core)
  const double lead = std::pow(0.5, 2.0 / 3.0);
  CHECK(epsilon_pinching(4, 3.0).value ==
        doctest::Approx(lead * 6.0 / (12.0 * core4)).epsilon(1e-14));
  // large-p branch
  CHECK(epsilon_pinching(4, 4.0).value ==
        doctest::Approx(1.0 / (3.0 * core4)).epsilon(1e-15));
  // n = 6 value quoted to four digits
  CHECK(epsilon_pinching(6, 3.0).value == doctest::Approx(0.02202).epsilon(1e-3));
}

TEST_CASE("epsilon: the denominator core is E(n)") {
  for (int n : {4, 5, 6, 8}) {
    const double eps = epsilon_pinching(n, 3.0 * n).value;  // large p
    CHECK(eps == doctest::Approx(1.0 / ((n - 1.0) * e_divergence_estimate(n)))
                     .epsilon(1e-14));
  }
}

TEST_CASE("epsilon: domain rejections") {
  CHECK_THROWS_AS(epsilon_pinching(4, 1.0), std::domain_error);          // p < n/2
  CHECK_THROWS_AS(epsilon_pinching(3, 2.0), std::domain_error);          // n < 4
  CHECK_THROWS_AS(epsilon_branch_value(6, 3.5, EpsilonBranch::Middle),   // 6-n factor
                  std::domain_error);
  CHECK_THROWS_AS(epsilon_branch_value(4, 5.0, EpsilonBranch::Middle),   // p too large
                  std::domain_error);
  CHECK_THROWS_AS(epsilon_branch_value(4, 3.0, EpsilonBranch::PEqualsHalfN),
                  std::domain_error);
  CHECK_THROWS_AS(epsilon_branch_value(4, 3.0, EpsilonBranch::LargeP),
                  std::domain_error);
}

TEST_CASE("epsilon: branch jumps recorded, not asserted") {
  // The displayed branches need not join continuously; record the gaps.
  for (int n : {4, 5}) {
    const double at_half = epsilon_pinching(n, n / 2.0).value;
    const double near_half = epsilon_pinching(n, n / 2.0 + 1e-6).value;
    const double upper = 2.0 * n / (n - 2.0);
    const double near_upper = epsilon_pinching(n, upper - 1e-6).value;
    const double at_upper = epsilon_pinching(n, upper).value;
    std::printf("[info] epsilon branch gaps n=%d: at n/2 %.6e, at 2n/(n-2) %.6e\n", n,
                near_half - at_half, at_upper - near_upper);
    CHECK(std::isfinite(near_half));
    CHECK(std::isfinite(near_upper));
  }
}

TEST_CASE("C1 against the oracle; the dimension split is not monotone-trivial") {
  for (int n = 4; n <= 12; ++n)
    CHECK(mp::rel_err(c1_weyl_ricci_pinching(n), mp::c1_constant(n)) < 1e-14);
  CHECK(c1_weyl_ricci_pinching(4) == doctest::Approx(std::sqrt(1.0 / 48.0)).epsilon(1e-15));
  CHECK(c1_weyl_ricci_pinching(4) == doctest::Approx(0.14434).epsilon(1e-4));
  CHECK(c1_weyl_ricci_pinching(6) == doctest::Approx(1.0 / std::sqrt(40.0)).epsilon(1e-15));
  for (int n : {4, 5})
    CHECK(c1_weyl_ricci_pinching(n) <
          1.0 / std::sqrt(2.0 * (n - 2.0) * (n - 1.0)));
  CHECK_THROWS_AS(c1_weyl_ricci_pinching(3), std::domain_error);
}

TEST_CASE("C2 against the oracle and explicit values") {
  for (int n = 4; n <= 12; ++n)
    CHECK(mp::rel_err(c2_weyl_estimate(n), mp::c2_constant(n)) < 1e-14);
  CHECK(c2_weyl_estimate(4) == doctest::Approx(std::sqrt(6.0) / 2.0).epsilon(1e-15));
  CHECK(c2_weyl_estimate(5) == doctest::Approx(8.0 * std::sqrt(10.0) / 15.0).epsilon(1e-15));
  CHECK(c2_weyl_estimate(6) ==
        doctest::Approx(136.0 / (6.0 * std::sqrt(35.0)) + 26.0 / std::sqrt(840.0))
            .epsilon(1e-14));
}

TEST_CASE("C3: values and domain") {
  CHECK(c3_weitzenbock(4) == doctest::Approx(std::sqrt(6.0) / 2.0).epsilon(1e-15));
  CHECK(c3_weitzenbock(5) == doctest::Approx(8.0 * std::sqrt(10.0) / 15.0).epsilon(1e-15));
  CHECK(c3_weitzenbock(4) == c2_weyl_estimate(4));
  CHECK(c3_weitzenbock(5) == c2_weyl_estimate(5));
  CHECK_THROWS_AS(c3_weitzenbock(6), std::domain_error);
  CHECK_THROWS_AS(c3_weitzenbock(3), std::domain_error);
}

TEST_CASE("all constants strictly positive on their domains") {
  for (int n = 4; n <= 20; ++n) {
    CHECK(c_curvature_estimate(n) > 0);
    CHECK(e_divergence_estimate(n) > 0);
    CHECK(c1_weyl_ricci_pinching(n) > 0);
    CHECK(c2_weyl_estimate(n) > 0);
    CHECK(epsilon_pinching(n, n / 2.0).value > 0);
    CHECK(epsilon_pinching(n, n).value > 0);
  }
}
