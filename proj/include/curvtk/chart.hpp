#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "curvtk/tensor.hpp"

namespace curvtk {

// One coordinate axis of a chart domain. Line axes cover all of R (charts
// such as stereographic projection), Periodic axes identify x ~ x + length.
struct Axis {
  enum class Kind { Line, Periodic, Interval };
  Kind kind = Kind::Line;
  double a = 0.0;       // Interval lower bound / Periodic origin
  double b = 0.0;       // Interval upper bound
  double length = 0.0;  // Periodic only

  static Axis line() { return Axis{Kind::Line, 0, 0, 0}; }
  static Axis periodic(double length) { return Axis{Kind::Periodic, 0, 0, length}; }
  static Axis interval(double a, double b) { return Axis{Kind::Interval, a, b, 0}; }
};

// A coordinate-chart metric: the dimension, the domain box and a positive
// definite metric evaluator, plus optional closed-form curvature callbacks
// and the structural flags the audits rely on. Charts are immutable after
// construction and all evaluators must be reentrant.
struct MetricChart {
  int n = 0;
  std::string label;
  std::vector<Axis> axes;

  // required
  std::function<void(const Point&, Sym2&)> metric_at;

  // optional analytic callbacks (null when absent)
  std::function<void(const Point&, int axis, Sym2&)> dmetric_at;  // d_a g
  std::function<void(const Point&, Curv4&)> riemann_at;           // all indices lowered
  std::function<void(const Point&, Sym2&)> ricci_at;
  std::function<double(const Point&)> scalar_at;

  bool is_einstein = false;
  bool is_conformally_flat = false;
  bool is_constant_scalar = false;
  bool metric_is_diagonal = false;  // performance hint for quadrature

  Sym2 metric(const Point& x) const {
    Sym2 g(n);
    metric_at(x, g);
    return g;
  }
};

// Radical-inverse (van der Corput) value of index i in the given base.
inline double radical_inverse(std::uint64_t i, int base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

// Halton low-discrepancy point mapped into the chart domain: periodic axes
// scale to [0, length), line axes map through tan(pi (u - 1/2)), intervals
// interpolate linearly. Index 0 is skipped by convention (use i >= 1).
inline Point halton_point(const MetricChart& chart, std::uint64_t index) {
  static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
  Point x(chart.n);
  for (int a = 0; a < chart.n; ++a) {
    double u = radical_inverse(index, primes[a % 10]);
    const Axis& ax = chart.axes[a];
    switch (ax.kind) {
      case Axis::Kind::Periodic:
        x[a] = u * ax.length;
        break;
      case Axis::Kind::Interval:
        x[a] = ax.a + (ax.b - ax.a) * u;
        break;
      case Axis::Kind::Line:
        x[a] = std::tan(M_PI * (u - 0.5));
        break;
    }
  }
  return x;
}

}  // namespace curvtk
