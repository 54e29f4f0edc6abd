#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "curvtk/chart.hpp"

// Closed-form metric charts with exact curvature callbacks. Charts cover the
// manifold minus a measure-zero set (stereographic and affine charts); the
// quadrature in the audit module treats the cutout as negligible.

namespace curvtk {

struct ExactData {
  std::optional<double> scalar;    // R (constant over the chart)
  std::optional<double> ric0_sq;   // |Ric0|^2, pointwise
  std::optional<double> weyl_sq;   // |W|^2, pointwise
  std::optional<double> volume;
  std::optional<double> yamabe;
  std::optional<int> euler;        // n = 4 only
};

// How a Yamabe value attached to an entry is certified.
enum class YamabeCert { None, RoundSphere, ProductSmallT };

struct ZooEntry {
  std::string label;
  MetricChart chart;
  ExactData exact;
  YamabeCert yamabe_cert = YamabeCert::None;
};

double unit_sphere_volume(int n);

// Round S^n(r) in the stereographic chart g = (2r/(1+|x|^2))^2 delta.
ZooEntry make_round_sphere(int n, double r);

// S^1(t) x S^{n-1}(1) product chart: periodic circle coordinate of length
// 2 pi t, stereographic sphere factor. With normalize_volume the metric is
// homothetically scaled to unit total volume; the Yamabe value R Vol^{2/n}
// is recorded only for t below the conservative cutoff 1/(2 sqrt(n-2))
// (the product is known to minimize only for small t).
ZooEntry make_product_circle_sphere(int n, double t, bool normalize_volume);

double product_small_t_cutoff(int n);

// Flat torus, periodic box of side 2 pi.
ZooEntry make_flat_torus(int n);

// Fubini-Study metric on the complex projective plane (real dimension 4),
// affine chart. Einstein with R = 12 in this normalization, |W|^2 = 24,
// volume 2 pi^2, Euler characteristic 3.
ZooEntry make_fubini_study();

// Pointwise conformal change g -> factor * g. The factor must be positive on
// the domain (spot-checked). Conformal flatness is preserved; the other
// structural flags and the exact data are dropped.
ZooEntry make_conformal(const ZooEntry& base, std::function<double(const Point&)> factor,
                        const std::string& suffix);

// Homothety g -> c2 * g (c2 > 0). Flags are preserved and exact data and
// callbacks are rescaled.
ZooEntry make_homothety(const ZooEntry& base, double c2);

// Seeded periodic perturbation of the flat metric, g = delta + amplitude * P
// with P a fixed small set of Fourier modes scaled so positive definiteness
// holds for amplitude < 1. Carries analytic first metric derivatives.
ZooEntry make_perturbed_flat(int n, double amplitude, std::uint64_t seed);

// The catalogue behind `zoo-list`, ordered by label.
std::vector<ZooEntry> standard_zoo();

// Parses labels of the form round-sphere:n=4:r=1, s1xs:n=6:t=0.1:normalized,
// flat-torus:n=5, fubini-study, perturbed-flat:n=4:amp=0.1:seed=42.
// Returns nullopt for an unknown kind or malformed parameters.
std::optional<ZooEntry> parse_zoo_label(const std::string& label);

}  // namespace curvtk
