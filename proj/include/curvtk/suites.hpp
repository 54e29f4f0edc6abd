#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "curvtk/engine.hpp"

// Identity suites behind `verify`: batteries of the algebraic curvature
// identities on random tensors and of the engine against the closed-form
// charts. Each check reports its worst residual against a pinned tolerance.

namespace curvtk {

struct CheckResult {
  std::string name;
  int n = 0;
  long trials = 0;
  double max_residual = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  bool pass = true;
  double runtime_ms = 0.0;
};

// Random-tensor identities: the curvature pair symmetries, first Bianchi, the
// decomposition (orthogonality, reconstruction, trace-free Weyl, idempotence),
// |Rm0|^2 = |W|^2 + 4/(n-2)|Ric0|^2 and |Ric0|^2 <= (n-2)/4 |Rm0|^2, and the
// four Kulkarni-Nomizu norm identities of the Ric0 (x) Ric0 split.
SuiteReport run_algebra_suite(long trials_per_dim, std::uint64_t seed,
                              const std::vector<int>& dims = {4, 5, 6, 7, 8});

// Engine battery on the zoo: finite differences against the closed-form
// callbacks, raw symmetry residuals, metric compatibility, and the
// constant-scalar divergence identities.
SuiteReport run_engine_suite(const FdConfig& cfg = {1e-2, 4, true});

// Halton point with line axes kept in a moderate region (|x| <~ 1.4), where
// conformal factors are O(1); used for finite-difference sampling.
Point moderate_point(const MetricChart& chart, std::uint64_t index);

}  // namespace curvtk
