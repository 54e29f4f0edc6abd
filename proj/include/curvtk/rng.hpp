#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace curvtk {

// SplitMix64 stream-derivation step (Steele, Lea, Flood 2014). Used to turn
// (seed, stream index) pairs into well-separated seeds for the core engine.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed;
  std::uint64_t a = splitmix64(s);
  s = seed ^ (0x9e3779b97f4a7c15ull * (stream + 1));
  std::uint64_t b = splitmix64(s);
  return a ^ (b + 0x632be59bd9b4e019ull);
}

// Seeded Gaussian source. Core generator is std::mt19937_64 (algorithm fixed
// by the standard); normal variates come from a hand-rolled Box-Muller over
// uniform doubles so the byte stream does not depend on the standard library's
// normal_distribution implementation.
class GaussianRng {
 public:
  explicit GaussianRng(std::uint64_t seed) : gen_(seed) {}

  static GaussianRng stream(std::uint64_t seed, std::uint64_t stream_index) {
    return GaussianRng(derive_stream_seed(seed, stream_index));
  }

  double uniform() {  // in (0, 1)
    return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u = uniform();
    double v = uniform();
    double r = std::sqrt(-2.0 * std::log(u));
    double c = std::cos(2.0 * M_PI * v);
    double s = std::sin(2.0 * M_PI * v);
    spare_ = r * s;
    have_spare_ = true;
    return r * c;
  }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace curvtk
