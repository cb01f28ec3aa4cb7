#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

#include <Eigen/Core>

namespace milplan {

// SplitMix64 mixing step. Also used to derive independent substream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Stable seed for substream `index` of a master seed. Used so that e.g. each
// sampling attempt or each verification suite gets its own generator and the
// results do not depend on evaluation order.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ull));
}

inline std::uint64_t hash_label(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

// Deterministic PRNG with explicitly coded distributions. std::mt19937_64
// would do for the raw stream, but the std distributions are not required to
// be bit-identical across standard libraries, and reports produced with the
// same seed must be. SplitMix64 stepping keeps the whole chain pinned down.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(splitmix64(seed)) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Box-Muller; caches the second variate.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    while (u1 == 0.0) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  Eigen::VectorXd gaussian_vector(Eigen::Index k) {
    Eigen::VectorXd v(k);
    for (Eigen::Index i = 0; i < k; ++i) v[i] = gaussian();
    return v;
  }

  // Uniform direction on the unit sphere in R^k.
  Eigen::VectorXd unit_vector(Eigen::Index k) {
    Eigen::VectorXd v = gaussian_vector(k);
    double n = v.norm();
    while (n < 1e-12) {  // astronomically unlikely, but keep the invariant
      v = gaussian_vector(k);
      n = v.norm();
    }
    return v / n;
  }

  // Uniform point in the closed ball of the given radius in R^k.
  Eigen::VectorXd ball_point(Eigen::Index k, double radius) {
    const double r = radius * std::pow(uniform(), 1.0 / static_cast<double>(k));
    return r * unit_vector(k);
  }

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace milplan
