#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "curvtk/tensor.hpp"

// Seeded randomized campaigns for the algebraic curvature inequalities. All
// checkers work at the identity metric (general metrics reduce to this case
// through an orthonormal frame) and return signed ratios lhs / bound; a ratio
// above 1 + tol is a violation. Degenerate inputs (zero denominators) return
// NaN and are counted as skipped, never as violations.

namespace curvtk {

class GaussianRng;

// tr(T^3) <= (m-2)/sqrt(m(m-1)) |T|^3 for trace-free symmetric T.
// Signed: T -> -T flips the ratio. Requires |tr T| <= 1e-12 |T|.
double cubic_trace_ratio(const Sym2& t);

// lambda_max(T) <= sqrt((m-1)/m) |T| for trace-free symmetric T.
double eigen_bound_ratio(const Sym2& t);

// |W(S, S)| <= sqrt((n-2)/(2(n-1))) |W| |S|^2 for totally trace-free W and
// trace-free S (the Huisken bound), with W(S,S) = W_ijkl S_ik S_jl.
double huisken_ratio(const Curv4& weyl, const Sym2& ric0);

// |-W(S,S) + K tr(S^3)| <= sqrt((n-2)/(2(n-1))) |S|^2
//   (|W|^2 + 2(n-2)K^2/n |S|^2)^{1/2}; K = n/(2(n-2)) is the special case
// with right side |W|^2 + n/(2(n-2))|S|^2.
double general_weyl_ricci_ratio(const Curv4& weyl, const Sym2& ric0, double k);

// The two cubic contraction bounds for a trace-adjusted curvature tensor:
//   |2 T_ijlk T_ihlm T_hjmk + 1/2 T_ijkl T_ijhm T_hmkl|
//     <= (2(n^2-2)/(n sqrt(n^2-1)) + (n^2-n-4)/(2 sqrt((n-2)n(n^2-1)))) |T|^3
//   |T_ijkl T_ijkh Ric0_hl| <= sqrt((n-1)/n) |Ric0| |T|^2.
struct ContractionRatios {
  double triple;       // first bound
  double ricci_cubic;  // second bound
};
ContractionRatios contraction_ratios(const Curv4& rm0);

// |Ric0|^2 <= (n-2)/4 |Rm0|^2.
double ricci_rm_ratio(const Curv4& rm0);

// ---- samplers ----
enum class Distribution { Gaussian, Spiked };

Sym2 sample_trace_free(int n, GaussianRng& rng, Distribution dist);
// Weyl part of a random algebraic curvature tensor (exactly trace-free).
Curv4 sample_weyl(int n, GaussianRng& rng);
// Random algebraic curvature tensor minus its scalar part, so the Ricci
// contraction is trace-free but generally nonzero.
Curv4 sample_rm0(int n, GaussianRng& rng);

// ---- campaigns ----
struct CampaignConfig {
  std::string inequality;  // cubic-trace | eigen-bound | huisken | weyl-ricci-k |
                           // contraction-triple | contraction-ricci | ric-rm-bound
  int n = 4;
  long trials = 1000;
  std::uint64_t seed = 0;
  Distribution dist = Distribution::Gaussian;
  double k = 0.0;      // weyl-ricci-k only
  double tol = 1e-12;
};

struct Witness {
  std::vector<std::string> names;
  std::vector<int> ranks;
  std::vector<std::vector<double>> tensors;
};

struct SampleStats {
  long trials = 0;
  long violations = 0;
  long skipped = 0;
  double max_ratio = 0.0;
  long argmax_trial = -1;
  Witness witness;
  double tol = 0.0;
  std::uint64_t seed = 0;
  int n = 0;
  std::string inequality;
};

// Deterministic given the seed: trials are split over a fixed number of
// shards with per-shard derived streams, independent of the worker count.
SampleStats run_campaign(const CampaignConfig& cfg);

// Re-evaluates the stored argmax witness; must reproduce max_ratio.
double replay_witness(const CampaignConfig& cfg, const Witness& w);

std::vector<std::string> campaign_ids();

}  // namespace curvtk
