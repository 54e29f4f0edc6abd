#include "curvtk/inequality.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include <Eigen/Dense>

#include "curvtk/rng.hpp"

namespace curvtk {

namespace {

constexpr int kShards = 64;
const double kNan = std::numeric_limits<double>::quiet_NaN();

double frobenius(const Sym2& t) { return std::sqrt(norm_sq(t)); }

void require_trace_free(const Sym2& t, const char* what) {
  double tr = 0.0;
  for (int i = 0; i < t.n; ++i) tr += t(i, i);
  if (std::abs(tr) > 1e-12 * std::max(frobenius(t), 1e-300))
    throw std::invalid_argument(std::string(what) + ": input is not trace-free");
}

}  // namespace

double cubic_trace_ratio(const Sym2& t) {
  require_trace_free(t, "cubic_trace_ratio");
  const int m = t.n;
  const double nrm = frobenius(t);
  if (nrm == 0.0) return kNan;
  double tr3 = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) tr3 += t(i, j) * t(j, k) * t(k, i);
  const double bound = (m - 2.0) / std::sqrt(double(m) * (m - 1.0)) * nrm * nrm * nrm;
  return tr3 / bound;
}

double eigen_bound_ratio(const Sym2& t) {
  require_trace_free(t, "eigen_bound_ratio");
  const int m = t.n;
  const double nrm = frobenius(t);
  if (nrm == 0.0) return kNan;
  Eigen::MatrixXd mat(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) mat(i, j) = t(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(mat, Eigen::EigenvaluesOnly);
  const double lmax = solver.eigenvalues().maxCoeff();
  return lmax / (std::sqrt((m - 1.0) / m) * nrm);
}

namespace {

double weyl_ricci_pairing(const Curv4& w, const Sym2& s) {
  const int n = w.n;
  double acc = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) acc += w(i, j, k, l) * s(i, k) * s(j, l);
  return acc;
}

double trace_cubed(const Sym2& s) {
  double tr3 = 0.0;
  for (int i = 0; i < s.n; ++i)
    for (int j = 0; j < s.n; ++j)
      for (int k = 0; k < s.n; ++k) tr3 += s(i, j) * s(j, k) * s(k, i);
  return tr3;
}

}  // namespace

double huisken_ratio(const Curv4& weyl, const Sym2& ric0) {
  if (weyl.n != ric0.n) throw std::invalid_argument("huisken_ratio: dimension mismatch");
  const int n = weyl.n;
  const double wn = std::sqrt(norm_sq(weyl));
  const double s2 = norm_sq(ric0);
  if (wn * s2 == 0.0) return kNan;
  const double num = std::abs(weyl_ricci_pairing(weyl, ric0));
  return num / (std::sqrt((n - 2.0) / (2.0 * (n - 1.0))) * wn * s2);
}

double general_weyl_ricci_ratio(const Curv4& weyl, const Sym2& ric0, double k) {
  if (weyl.n != ric0.n)
    throw std::invalid_argument("general_weyl_ricci_ratio: dimension mismatch");
  const int n = weyl.n;
  const double w2 = norm_sq(weyl);
  const double s2 = norm_sq(ric0);
  const double den = std::sqrt((n - 2.0) / (2.0 * (n - 1.0))) * s2 *
                     std::sqrt(w2 + 2.0 * (n - 2.0) * k * k / n * s2);
  if (den == 0.0) return kNan;
  const double num = std::abs(-weyl_ricci_pairing(weyl, ric0) + k * trace_cubed(ric0));
  return num / den;
}

ContractionRatios contraction_ratios(const Curv4& rm0) {
  const int n = rm0.n;
  const double t2 = norm_sq(rm0);
  if (t2 == 0.0) return {kNan, kNan};
  const double t1 = std::sqrt(t2);

  double triple1 = 0.0;  // T_ijlk T_ihlm T_hjmk
  double triple2 = 0.0;  // T_ijkl T_ijhm T_hmkl
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int h = 0; h < n; ++h)
        for (int l = 0; l < n; ++l)
          for (int m = 0; m < n; ++m) {
            double a = 0.0;
            for (int k = 0; k < n; ++k) a += rm0(i, j, l, k) * rm0(h, j, m, k);
            triple1 += a * rm0(i, h, l, m);
          }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int h = 0; h < n; ++h)
        for (int m = 0; m < n; ++m) {
          double a = 0.0;
          for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) a += rm0(i, j, k, l) * rm0(h, m, k, l);
          // a = T_ijkl T_hmkl; contract against T_ijhm
          triple2 += a * rm0(i, j, h, m);
        }

  const double nn = n;
  const double bound1 = (2.0 * (nn * nn - 2.0) / (nn * std::sqrt(nn * nn - 1.0)) +
                         (nn * nn - nn - 4.0) /
                             (2.0 * std::sqrt((nn - 2.0) * nn * (nn * nn - 1.0)))) *
                        t1 * t1 * t1;
  const double q1 = std::abs(2.0 * triple1 + 0.5 * triple2);

  Sym2 ric0 = ricci_contraction(rm0);
  const double rnorm = std::sqrt(norm_sq(ric0));
  double q2 = 0.0;
  for (int h = 0; h < n; ++h)
    for (int l = 0; l < n; ++l) {
      double a = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k) a += rm0(i, j, k, l) * rm0(i, j, k, h);
      q2 += a * ric0(h, l);
    }
  ContractionRatios out;
  out.triple = q1 / bound1;
  out.ricci_cubic =
      (rnorm == 0.0) ? kNan : std::abs(q2) / (std::sqrt((nn - 1.0) / nn) * rnorm * t2);
  return out;
}

double ricci_rm_ratio(const Curv4& rm0) {
  const int n = rm0.n;
  const double t2 = norm_sq(rm0);
  if (t2 == 0.0) return kNan;
  Sym2 ric0 = ricci_contraction(rm0);
  return norm_sq(ric0) / ((n - 2.0) / 4.0 * t2);
}

Sym2 sample_trace_free(int n, GaussianRng& rng, Distribution dist) {
  if (dist == Distribution::Gaussian) return random_trace_free(n, rng);

  // Spiked: random rotation of diag(m-1, -1, ..., -1) (the equality witness
  // of both matrix bounds) plus a small trace-free Gaussian cloud.
  Eigen::MatrixXd gauss(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gauss(i, j) = rng.gaussian();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(gauss);
  Eigen::MatrixXd q = qr.householderQ();
  Eigen::VectorXd d(n);
  d.setConstant(-1.0);
  d(0) = n - 1.0;
  Eigen::MatrixXd spike = q * d.asDiagonal() * q.transpose();

  Sym2 noise = random_trace_free(n, rng);
  const double noise_scale = 0.03 * spike.norm() / std::max(frobenius(noise), 1e-300);
  Sym2 out(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      out.set(i, j, 0.5 * (spike(i, j) + spike(j, i)) + noise_scale * noise(i, j));
  double tr = 0.0;
  for (int i = 0; i < n; ++i) tr += out(i, i);
  for (int i = 0; i < n; ++i) out(i, i) -= tr / n;
  return out;
}

Curv4 sample_weyl(int n, GaussianRng& rng) {
  Curv4 rm = random_curvature(n, rng);
  return decompose(rm, Sym2::identity(n)).weyl;
}

Curv4 sample_rm0(int n, GaussianRng& rng) {
  Curv4 rm = random_curvature(n, rng);
  return decompose(rm, Sym2::identity(n)).rm0;
}

std::vector<std::string> campaign_ids() {
  return {"cubic-trace",      "eigen-bound",      "huisken", "weyl-ricci-k",
          "contraction-triple", "contraction-ricci", "ric-rm-bound"};
}

namespace {

enum class Kind { CubicTrace, EigenBound, Huisken, WeylRicciK, ContrTriple, ContrRicci, RicRm };

Kind parse_kind(const std::string& id) {
  if (id == "cubic-trace") return Kind::CubicTrace;
  if (id == "eigen-bound") return Kind::EigenBound;
  if (id == "huisken") return Kind::Huisken;
  if (id == "weyl-ricci-k") return Kind::WeylRicciK;
  if (id == "contraction-triple") return Kind::ContrTriple;
  if (id == "contraction-ricci") return Kind::ContrRicci;
  if (id == "ric-rm-bound") return Kind::RicRm;
  throw std::invalid_argument("unknown inequality id: " + id);
}

bool is_matrix_kind(Kind k) { return k == Kind::CubicTrace || k == Kind::EigenBound; }

struct TrialResult {
  double ratio = kNan;
  Witness witness;
};

TrialResult run_trial(Kind kind, const CampaignConfig& cfg, GaussianRng& rng,
                      bool want_witness) {
  TrialResult res;
  switch (kind) {
    case Kind::CubicTrace:
    case Kind::EigenBound: {
      Sym2 t = sample_trace_free(cfg.n, rng, cfg.dist);
      res.ratio = (kind == Kind::CubicTrace) ? cubic_trace_ratio(t) : eigen_bound_ratio(t);
      if (want_witness) {
        res.witness.names = {"matrix"};
        res.witness.ranks = {2};
        res.witness.tensors = {t.a};
      }
      break;
    }
    case Kind::Huisken:
    case Kind::WeylRicciK: {
      Curv4 w = sample_weyl(cfg.n, rng);
      Sym2 s = random_trace_free(cfg.n, rng);
      res.ratio = (kind == Kind::Huisken) ? huisken_ratio(w, s)
                                          : general_weyl_ricci_ratio(w, s, cfg.k);
      if (want_witness) {
        res.witness.names = {"weyl", "ric0"};
        res.witness.ranks = {4, 2};
        res.witness.tensors = {w.a, s.a};
      }
      break;
    }
    case Kind::ContrTriple:
    case Kind::ContrRicci: {
      Curv4 t = sample_rm0(cfg.n, rng);
      ContractionRatios r = contraction_ratios(t);
      res.ratio = (kind == Kind::ContrTriple) ? r.triple : r.ricci_cubic;
      if (want_witness) {
        res.witness.names = {"rm0"};
        res.witness.ranks = {4};
        res.witness.tensors = {t.a};
      }
      break;
    }
    case Kind::RicRm: {
      Curv4 t = sample_rm0(cfg.n, rng);
      res.ratio = ricci_rm_ratio(t);
      if (want_witness) {
        res.witness.names = {"rm0"};
        res.witness.ranks = {4};
        res.witness.tensors = {t.a};
      }
      break;
    }
  }
  return res;
}

struct ShardStats {
  long violations = 0;
  long skipped = 0;
  double max_ratio = -std::numeric_limits<double>::infinity();
  long argmax_trial = -1;
};

}  // namespace

SampleStats run_campaign(const CampaignConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("run_campaign: trials must be >= 1");
  const Kind kind = parse_kind(cfg.inequality);
  if (cfg.dist == Distribution::Spiked && !is_matrix_kind(kind))
    throw std::invalid_argument(
        "run_campaign: the spiked distribution applies to the matrix bounds only");
  const int min_n = is_matrix_kind(kind) ? 2 : 3;
  if (cfg.n < min_n) throw std::invalid_argument("run_campaign: dimension too small");

  const long block = (cfg.trials + kShards - 1) / kShards;
  std::vector<ShardStats> shard_stats(kShards);

  // Every trial draws from its own derived substream, so the argmax witness
  // can be regenerated exactly and sharding stays deterministic.
  auto run_shard = [&](int s) {
    ShardStats& st = shard_stats[s];
    const long lo = s * block;
    const long hi = std::min<long>(cfg.trials, lo + block);
    for (long trial = lo; trial < hi; ++trial) {
      GaussianRng rng = GaussianRng::stream(cfg.seed, std::uint64_t(trial));
      TrialResult r = run_trial(kind, cfg, rng, false);
      if (std::isnan(r.ratio)) {
        ++st.skipped;
        continue;
      }
      if (r.ratio > 1.0 + cfg.tol) ++st.violations;
      if (r.ratio > st.max_ratio) {
        st.max_ratio = r.ratio;
        st.argmax_trial = trial;
      }
    }
  };

  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, 8);
  if (workers <= 1 || cfg.trials < 256) {
    for (int s = 0; s < kShards; ++s) run_shard(s);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (unsigned wi = 0; wi < workers; ++wi)
      pool.emplace_back([&] {
        for (int s = next.fetch_add(1); s < kShards; s = next.fetch_add(1)) run_shard(s);
      });
    for (auto& th : pool) th.join();
  }

  SampleStats out;
  out.trials = cfg.trials;
  out.tol = cfg.tol;
  out.seed = cfg.seed;
  out.n = cfg.n;
  out.inequality = cfg.inequality;
  out.max_ratio = -std::numeric_limits<double>::infinity();
  for (const ShardStats& st : shard_stats) {
    out.violations += st.violations;
    out.skipped += st.skipped;
    if (st.argmax_trial >= 0 &&
        (st.max_ratio > out.max_ratio ||
         (st.max_ratio == out.max_ratio && st.argmax_trial < out.argmax_trial))) {
      out.max_ratio = st.max_ratio;
      out.argmax_trial = st.argmax_trial;
    }
  }
  if (out.argmax_trial >= 0) {
    GaussianRng rng = GaussianRng::stream(cfg.seed, std::uint64_t(out.argmax_trial));
    TrialResult r = run_trial(kind, cfg, rng, true);
    out.witness = std::move(r.witness);
  } else {
    out.max_ratio = kNan;
  }
  return out;
}

double replay_witness(const CampaignConfig& cfg, const Witness& w) {
  const Kind kind = parse_kind(cfg.inequality);
  auto as_sym = [&](int idx) {
    Sym2 s(cfg.n);
    s.a = w.tensors[idx];
    return s;
  };
  auto as_curv = [&](int idx) {
    Curv4 c(cfg.n);
    c.a = w.tensors[idx];
    return c;
  };
  switch (kind) {
    case Kind::CubicTrace: return cubic_trace_ratio(as_sym(0));
    case Kind::EigenBound: return eigen_bound_ratio(as_sym(0));
    case Kind::Huisken: return huisken_ratio(as_curv(0), as_sym(1));
    case Kind::WeylRicciK: return general_weyl_ricci_ratio(as_curv(0), as_sym(1), cfg.k);
    case Kind::ContrTriple: return contraction_ratios(as_curv(0)).triple;
    case Kind::ContrRicci: return contraction_ratios(as_curv(0)).ricci_cubic;
    case Kind::RicRm: return ricci_rm_ratio(as_curv(0));
  }
  throw std::invalid_argument("replay_witness: unknown inequality");
}

}  // namespace curvtk
