#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "curvtk/engine.hpp"
#include "curvtk/zoo.hpp"

// Hypothesis audits for the pinching theorems: L^p curvature norms by tensor
// product quadrature (or closed form on homogeneous entries), Yamabe values
// for certified metrics, the Chern-Gauss-Bonnet and Gursky checks, and the
// pointwise pinching comparisons. Audits evaluate hypotheses only; the
// rigidity conclusions are echoed as text, never "verified".

namespace curvtk {

enum class Selector { Rm0, Ric0, W, WPlusKn, R2Density };

std::optional<Selector> parse_selector(const std::string& name);
const char* selector_name(Selector s);

struct QuadratureGrid {
  // One entry broadcasts to every axis; otherwise one count per axis.
  std::vector<int> nodes;
};

enum class YamabeProvenance { RoundSphereExact, YamabeMetricRVol, UserSupplied };

struct YamabeDatum {
  double value = 0.0;
  YamabeProvenance provenance = YamabeProvenance::UserSupplied;
};

const char* provenance_name(YamabeProvenance p);

// Yamabe value of a certified entry: round spheres use n(n-1) Vol(S^n)^{2/n},
// normalized small-t products use R Vol^{2/n}. Anything else is refused (this
// library does not solve the Yamabe problem).
YamabeDatum yamabe_value(const ZooEntry& entry);

enum class EvalPath { ClosedForm, Quadrature };

struct AuditOptions {
  EvalPath path = EvalPath::ClosedForm;
  QuadratureGrid grid;                  // empty -> per-dimension default
  int samples = 200;                    // pointwise audits
  double boundary_tol = 1e-8;           // relative; |margin| below it is "boundary"
  std::optional<double> user_yamabe;
  FdConfig fd{1e-2, 4, true};           // fallback engine config
  bool engine_bach_check = false;       // engine check even when flags settle it
};

enum class Verdict { Satisfied, Boundary, NotSatisfied };
const char* verdict_name(Verdict v);

struct PinchingReport {
  std::string theorem;
  std::string metric_label;
  int n = 0;
  std::optional<double> p;
  double lhs = 0.0;
  double threshold = 0.0;
  double margin = 0.0;  // threshold - lhs
  Verdict verdict = Verdict::NotSatisfied;
  bool bach_flat = false;
  bool constant_scalar = false;
  bool scalar_positive = false;
  std::optional<YamabeDatum> yamabe;
  std::string path;
  std::vector<int> grid_nodes;
  std::vector<std::string> grid_rules;
  std::optional<double> est_volume_error;
  int samples = 0;
  double boundary_tol = 0.0;
  std::vector<std::pair<std::string, double>> extras;
  std::string note;
  double runtime_ms = 0.0;
};

// (integral of |q|^p dV)^{1/p} by quadrature; `volume` is the same grid's
// volume integral. When the entry has an exact volume the self-check must
// pass within 0.1% or the call throws ("grid too coarse").
struct LpResult {
  double value = 0.0;
  double volume = 0.0;
  std::optional<double> volume_error;  // relative, when exact volume known
};
LpResult lp_norm_quadrature(const ZooEntry& entry, Selector sel, double p,
                            const QuadratureGrid& grid, const FdConfig& fd);

// Closed-form path for homogeneous entries: |q| Vol^{1/p} from exact data.
double lp_norm_exact(const ZooEntry& entry, Selector sel, double p);

// Default per-axis node counts for the entry's dimension.
QuadratureGrid default_grid(const ZooEntry& entry);

// L^p trace-free curvature pinching audit:
//   (int |Rm0|^p)^{1/p} < eps(n,p) Y^{n/2p} R^{1-n/2p}.
PinchingReport audit_thm11(const ZooEntry& entry, double p, const AuditOptions& opt);

// Weyl-plus-Ricci pinching audit:
//   (int |W + sqrt(n)/(2 sqrt(2)(n-2)) Ric0 (x) g|^{n/2})^{2/n} < C1(n) Y;
// for n >= 6 the report also carries the sphere-criterion threshold
// 2Y/(n C2(n)).
PinchingReport audit_thm14(const ZooEntry& entry, const AuditOptions& opt);

// Integral pinching audit in dimension 4:
//   int |W|^2 + 5/4 int |Ric0|^2 <= 1/48 int R^2,
// plus the equivalent Euler-characteristic form when chi is available.
PinchingReport audit_cor16(const ZooEntry& entry, const AuditOptions& opt);

// Chern-Gauss-Bonnet residual (n = 4):
//   int |W|^2 - 2 int |Ric0|^2 + 1/6 int R^2 - 32 pi^2 chi.
PinchingReport cgb_check(const ZooEntry& entry, const AuditOptions& opt);

// Gursky's bound (n = 4): int R^2 - 12 int |Ric0|^2 <= Y^2.
PinchingReport gursky_check(const ZooEntry& entry, const AuditOptions& opt);

// Pointwise pinching audit over a low-discrepancy sample:
//   |W|^2 + n/(2(n-2)) |Ric0|^2 <= R^2 / (2(n-2)(n-1)).
PinchingReport audit_thm18(const ZooEntry& entry, const AuditOptions& opt);

// The same pointwise comparison restricted to n in {4, 5}, where the sphere
// conclusion also needs the Weitzenbock constant; C3(n) is recorded.
PinchingReport audit_cor19(const ZooEntry& entry, const AuditOptions& opt);

}  // namespace curvtk
