#include "curvtk/zoo.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "curvtk/rng.hpp"

namespace curvtk {

namespace {

std::string fmt_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

double sq(double v) { return v * v; }

}  // namespace

double unit_sphere_volume(int n) {
  return 2.0 * std::pow(M_PI, (n + 1) / 2.0) / std::tgamma((n + 1) / 2.0);
}

double product_small_t_cutoff(int n) { return 0.5 / std::sqrt(double(n - 2)); }

ZooEntry make_round_sphere(int n, double r) {
  if (n < 3 || r <= 0.0) throw std::invalid_argument("make_round_sphere: need n >= 3, r > 0");
  ZooEntry e;
  e.label = "round-sphere:n=" + std::to_string(n) + ":r=" + fmt_num(r);

  MetricChart& c = e.chart;
  c.n = n;
  c.label = e.label;
  c.axes.assign(n, Axis::line());
  c.metric_is_diagonal = true;
  c.is_einstein = true;
  c.is_conformally_flat = true;
  c.is_constant_scalar = true;

  auto conf = [n, r](const Point& x) {
    double r2 = 0.0;
    for (int a = 0; a < n; ++a) r2 += x[a] * x[a];
    return 2.0 * r / (1.0 + r2);
  };
  c.metric_at = [n, conf](const Point& x, Sym2& g) {
    g.resize(n);
    const double u2 = sq(conf(x));
    for (int i = 0; i < n; ++i) g(i, i) = u2;
  };
  const double K = 1.0 / (r * r);
  c.riemann_at = [n, conf, K](const Point& x, Curv4& rm) {
    rm.resize(n);
    const double u2 = sq(conf(x));
    const double c4 = K * u2 * u2;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        rm(i, j, i, j) += c4;
        rm(i, j, j, i) -= c4;
      }
  };
  c.ricci_at = [n, conf, K](const Point& x, Sym2& ric) {
    ric.resize(n);
    const double v = (n - 1) * K * sq(conf(x));
    for (int i = 0; i < n; ++i) ric(i, i) = v;
  };
  c.scalar_at = [n, K](const Point&) { return n * (n - 1) * K; };

  e.exact.scalar = n * (n - 1) * K;
  e.exact.ric0_sq = 0.0;
  e.exact.weyl_sq = 0.0;
  e.exact.volume = std::pow(r, n) * unit_sphere_volume(n);
  e.exact.yamabe = n * (n - 1) * std::pow(unit_sphere_volume(n), 2.0 / n);
  e.yamabe_cert = YamabeCert::RoundSphere;
  if (n == 4) e.exact.euler = 2;
  return e;
}

ZooEntry make_product_circle_sphere(int n, double t, bool normalize_volume) {
  if (n < 4 || t <= 0.0)
    throw std::invalid_argument("make_product_circle_sphere: need n >= 4, t > 0");
  ZooEntry e;
  e.label = "s1xs:n=" + std::to_string(n) + ":t=" + fmt_num(t) +
            (normalize_volume ? ":normalized" : "");

  const double vol0 = 2.0 * M_PI * t * unit_sphere_volume(n - 1);
  const double c2 = normalize_volume ? std::pow(vol0, -2.0 / n) : 1.0;
  const double k_eff = 1.0 / c2;  // sectional curvature of the scaled sphere factor

  MetricChart& c = e.chart;
  c.n = n;
  c.label = e.label;
  c.axes.push_back(Axis::periodic(2.0 * M_PI * t));
  for (int a = 1; a < n; ++a) c.axes.push_back(Axis::line());
  c.metric_is_diagonal = true;
  c.is_conformally_flat = true;
  c.is_constant_scalar = true;

  auto conf = [n](const Point& x) {
    double r2 = 0.0;
    for (int a = 1; a < n; ++a) r2 += x[a] * x[a];
    return 2.0 / (1.0 + r2);
  };
  c.metric_at = [n, conf, c2](const Point& x, Sym2& g) {
    g.resize(n);
    g(0, 0) = c2;
    const double u2 = c2 * sq(conf(x));
    for (int i = 1; i < n; ++i) g(i, i) = u2;
  };
  c.riemann_at = [n, conf, c2, k_eff](const Point& x, Curv4& rm) {
    rm.resize(n);
    const double u2 = c2 * sq(conf(x));
    const double c4 = k_eff * u2 * u2;
    for (int i = 1; i < n; ++i)
      for (int j = 1; j < n; ++j) {
        if (i == j) continue;
        rm(i, j, i, j) += c4;
        rm(i, j, j, i) -= c4;
      }
  };
  c.ricci_at = [n, conf, c2, k_eff](const Point& x, Sym2& ric) {
    ric.resize(n);
    const double v = (n - 2) * k_eff * c2 * sq(conf(x));
    for (int i = 1; i < n; ++i) ric(i, i) = v;
  };
  const double scalar = (n - 1) * (n - 2) * k_eff;
  c.scalar_at = [scalar](const Point&) { return scalar; };

  e.exact.scalar = scalar;
  e.exact.weyl_sq = 0.0;
  // Ricci eigenvalues are 0 and (n-2) k_eff, so |Ric0|^2 = R^2 / (n(n-1)).
  e.exact.ric0_sq = scalar * scalar / (n * (n - 1.0));
  e.exact.volume = normalize_volume ? 1.0 : vol0;
  if (n == 4) e.exact.euler = 0;
  if (normalize_volume && t <= product_small_t_cutoff(n)) {
    e.exact.yamabe = scalar;  // R Vol^{2/n} at unit volume
    e.yamabe_cert = YamabeCert::ProductSmallT;
  }
  return e;
}

ZooEntry make_flat_torus(int n) {
  if (n < 3) throw std::invalid_argument("make_flat_torus: need n >= 3");
  ZooEntry e;
  e.label = "flat-torus:n=" + std::to_string(n);
  MetricChart& c = e.chart;
  c.n = n;
  c.label = e.label;
  c.axes.assign(n, Axis::periodic(2.0 * M_PI));
  c.metric_is_diagonal = true;
  c.is_einstein = true;  // Ricci-flat
  c.is_conformally_flat = true;
  c.is_constant_scalar = true;
  c.metric_at = [n](const Point&, Sym2& g) {
    g.resize(n);
    for (int i = 0; i < n; ++i) g(i, i) = 1.0;
  };
  c.dmetric_at = [n](const Point&, int, Sym2& d) { d.resize(n); };
  c.riemann_at = [n](const Point&, Curv4& rm) { rm.resize(n); };
  c.ricci_at = [n](const Point&, Sym2& ric) { ric.resize(n); };
  c.scalar_at = [](const Point&) { return 0.0; };
  e.exact.scalar = 0.0;
  e.exact.ric0_sq = 0.0;
  e.exact.weyl_sq = 0.0;
  e.exact.volume = std::pow(2.0 * M_PI, n);
  if (n == 4) e.exact.euler = 0;
  return e;
}

ZooEntry make_fubini_study() {
  ZooEntry e;
  e.label = "fubini-study";
  MetricChart& c = e.chart;
  c.n = 4;
  c.label = e.label;
  c.axes.assign(4, Axis::line());
  c.is_einstein = true;
  c.is_constant_scalar = true;

  // Affine chart of CP^2 with Kahler potential log(1 + |z|^2); the real
  // metric is g(u, v) = 2 Re h(u, v) under (x0, x1, x2, x3) ~ (z1, z2).
  c.metric_at = [](const Point& x, Sym2& g) {
    using C = std::complex<double>;
    g.resize(4);
    const C z[2] = {C(x[0], x[1]), C(x[2], x[3])};
    const double w = 1.0 + std::norm(z[0]) + std::norm(z[1]);
    C h[2][2];
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        h[i][j] = ((i == j) ? 1.0 / w : 0.0) - std::conj(z[i]) * z[j] / (w * w);
    const C basis[4][2] = {{C(1, 0), C(0, 0)},
                           {C(0, 1), C(0, 0)},
                           {C(0, 0), C(1, 0)},
                           {C(0, 0), C(0, 1)}};
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        C s = 0.0;
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) s += h[i][j] * basis[a][i] * std::conj(basis[b][j]);
        g(a, b) = 2.0 * s.real();
      }
  };
  c.ricci_at = [metric = c.metric_at](const Point& x, Sym2& ric) {
    metric(x, ric);
    for (double& v : ric.a) v *= 3.0;  // Einstein: Ric = 3 g
  };
  c.scalar_at = [](const Point&) { return 12.0; };

  e.exact.scalar = 12.0;
  e.exact.ric0_sq = 0.0;
  e.exact.weyl_sq = 24.0;
  e.exact.volume = 2.0 * M_PI * M_PI;
  e.exact.euler = 3;
  return e;
}

ZooEntry make_conformal(const ZooEntry& base, std::function<double(const Point&)> factor,
                        const std::string& suffix) {
  for (int i = 1; i <= 20; ++i) {
    Point x = halton_point(base.chart, i);
    if (!(factor(x) > 0.0))
      throw std::domain_error("make_conformal: factor is not positive on the domain");
  }
  ZooEntry e;
  e.label = base.label + ":" + suffix;
  e.chart.n = base.chart.n;
  e.chart.label = e.label;
  e.chart.axes = base.chart.axes;
  e.chart.is_conformally_flat = base.chart.is_conformally_flat;
  e.chart.metric_is_diagonal = base.chart.metric_is_diagonal;
  e.chart.metric_at = [base_metric = base.chart.metric_at, factor](const Point& x, Sym2& g) {
    base_metric(x, g);
    const double f = factor(x);
    for (double& v : g.a) v *= f;
  };
  return e;
}

ZooEntry make_homothety(const ZooEntry& base, double c2) {
  if (!(c2 > 0.0)) throw std::invalid_argument("make_homothety: need c2 > 0");
  ZooEntry e;
  e.label = base.label + ":scaled=" + fmt_num(c2);
  MetricChart& c = e.chart;
  const MetricChart& b = base.chart;
  c.n = b.n;
  c.label = e.label;
  c.axes = b.axes;
  c.is_einstein = b.is_einstein;
  c.is_conformally_flat = b.is_conformally_flat;
  c.is_constant_scalar = b.is_constant_scalar;
  c.metric_is_diagonal = b.metric_is_diagonal;
  c.metric_at = [m = b.metric_at, c2](const Point& x, Sym2& g) {
    m(x, g);
    for (double& v : g.a) v *= c2;
  };
  if (b.dmetric_at)
    c.dmetric_at = [d = b.dmetric_at, c2](const Point& x, int a, Sym2& out) {
      d(x, a, out);
      for (double& v : out.a) v *= c2;
    };
  if (b.riemann_at)
    c.riemann_at = [r = b.riemann_at, c2](const Point& x, Curv4& rm) {
      r(x, rm);
      for (double& v : rm.a) v *= c2;  // (0,4) tensor scales with the metric
    };
  if (b.ricci_at) c.ricci_at = b.ricci_at;  // Ricci is scale invariant
  if (b.scalar_at)
    c.scalar_at = [s = b.scalar_at, c2](const Point& x) { return s(x) / c2; };

  const int n = b.n;
  if (base.exact.scalar) e.exact.scalar = *base.exact.scalar / c2;
  if (base.exact.ric0_sq) e.exact.ric0_sq = *base.exact.ric0_sq / (c2 * c2);
  if (base.exact.weyl_sq) e.exact.weyl_sq = *base.exact.weyl_sq / (c2 * c2);
  if (base.exact.volume) e.exact.volume = *base.exact.volume * std::pow(c2, n / 2.0);
  e.exact.yamabe = base.exact.yamabe;  // conformal invariant
  e.exact.euler = base.exact.euler;
  e.yamabe_cert = base.yamabe_cert;
  return e;
}

ZooEntry make_perturbed_flat(int n, double amplitude, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("make_perturbed_flat: need n >= 3");
  if (amplitude < 0.0 || amplitude >= 0.5)
    throw std::invalid_argument("make_perturbed_flat: amplitude must be in [0, 0.5)");

  constexpr int kModes = 3;
  GaussianRng rng(seed);
  std::vector<std::vector<int>> waves(kModes, std::vector<int>(n));
  std::vector<Sym2> amp(kModes, Sym2(n)), phase(kModes, Sym2(n));
  for (int m = 0; m < kModes; ++m) {
    bool nonzero = false;
    while (!nonzero)
      for (int a = 0; a < n; ++a) {
        waves[m][a] = int(rng.raw() % 5) - 2;
        nonzero = nonzero || waves[m][a] != 0;
      }
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        amp[m].set(i, j, rng.gaussian());
        phase[m].set(i, j, 2.0 * M_PI * rng.uniform());
      }
  }
  // Gershgorin bound so the perturbation stays below `amplitude` in spectrum.
  double bound = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j)
      for (int m = 0; m < kModes; ++m) row += std::abs(amp[m](i, j));
    bound = std::max(bound, row);
  }
  const double scale = (bound > 0.0) ? amplitude / bound : 0.0;

  ZooEntry e;
  e.label = "perturbed-flat:n=" + std::to_string(n) + ":amp=" + fmt_num(amplitude) +
            ":seed=" + std::to_string(seed);
  MetricChart& c = e.chart;
  c.n = n;
  c.label = e.label;
  c.axes.assign(n, Axis::periodic(2.0 * M_PI));
  c.metric_at = [n, waves, amp, phase, scale](const Point& x, Sym2& g) {
    g.resize(n);
    for (int i = 0; i < n; ++i) g(i, i) = 1.0;
    for (int m = 0; m < kModes; ++m) {
      double kx = 0.0;
      for (int a = 0; a < n; ++a) kx += waves[m][a] * x[a];
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          const double v = scale * amp[m](i, j) * std::sin(kx + phase[m](i, j));
          g(i, j) += v;
          if (i != j) g(j, i) += v;
        }
    }
  };
  c.dmetric_at = [n, waves, amp, phase, scale](const Point& x, int a, Sym2& d) {
    d.resize(n);
    for (int m = 0; m < kModes; ++m) {
      if (waves[m][a] == 0) continue;
      double kx = 0.0;
      for (int q = 0; q < n; ++q) kx += waves[m][q] * x[q];
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          const double v =
              scale * amp[m](i, j) * waves[m][a] * std::cos(kx + phase[m](i, j));
          d(i, j) += v;
          if (i != j) d(j, i) += v;
        }
    }
  };
  return e;
}

std::vector<ZooEntry> standard_zoo() {
  std::vector<ZooEntry> zoo;
  for (int n : {4, 5, 6}) zoo.push_back(make_round_sphere(n, 1.0));
  for (int n : {4, 5, 6}) zoo.push_back(make_product_circle_sphere(n, 0.1, true));
  zoo.push_back(make_flat_torus(4));
  zoo.push_back(make_flat_torus(5));
  zoo.push_back(make_fubini_study());
  zoo.push_back(make_perturbed_flat(4, 0.1, 42));
  std::sort(zoo.begin(), zoo.end(),
            [](const ZooEntry& a, const ZooEntry& b) { return a.label < b.label; });
  return zoo;
}

namespace {

bool parse_params(const std::vector<std::string>& parts, std::size_t from,
                  std::vector<std::pair<std::string, std::string>>& kv,
                  std::vector<std::string>& flags) {
  for (std::size_t i = from; i < parts.size(); ++i) {
    auto eq = parts[i].find('=');
    if (eq == std::string::npos)
      flags.push_back(parts[i]);
    else
      kv.emplace_back(parts[i].substr(0, eq), parts[i].substr(eq + 1));
  }
  return true;
}

}  // namespace

std::optional<ZooEntry> parse_zoo_label(const std::string& label) {
  std::vector<std::string> parts;
  std::stringstream ss(label);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.empty()) return std::nullopt;

  std::vector<std::pair<std::string, std::string>> kv;
  std::vector<std::string> flags;
  parse_params(parts, 1, kv, flags);
  auto get = [&kv](const std::string& key) -> std::optional<std::string> {
    for (auto& [k, v] : kv)
      if (k == key) return v;
    return std::nullopt;
  };
  auto has_flag = [&flags](const std::string& f) {
    for (auto& v : flags)
      if (v == f) return true;
    return false;
  };

  try {
    const std::string& kind = parts[0];
    if (kind == "round-sphere") {
      auto n = get("n"), r = get("r");
      if (!n) return std::nullopt;
      return make_round_sphere(std::stoi(*n), r ? std::stod(*r) : 1.0);
    }
    if (kind == "s1xs") {
      auto n = get("n"), t = get("t");
      if (!n || !t) return std::nullopt;
      return make_product_circle_sphere(std::stoi(*n), std::stod(*t), has_flag("normalized"));
    }
    if (kind == "flat-torus") {
      auto n = get("n");
      if (!n) return std::nullopt;
      return make_flat_torus(std::stoi(*n));
    }
    if (kind == "fubini-study") return make_fubini_study();
    if (kind == "perturbed-flat") {
      auto n = get("n"), amp = get("amp"), seed = get("seed");
      if (!n || !amp) return std::nullopt;
      return make_perturbed_flat(std::stoi(*n), std::stod(*amp),
                                 seed ? std::stoull(*seed) : 0);
    }
  } catch (const std::exception&) {
    return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace curvtk
