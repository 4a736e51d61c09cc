#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace specdiff {

// Deterministic random stream. mt19937_64 output is fully specified by the
// standard and the uniform/normal conversions below are done by hand, so a
// given seed produces the same sequence on every platform (up to libm in
// sqrt/log/cos, which are correctly rounded on the targets we care about).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // uniform in [0, 1)
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // standard normal via Box-Muller; generates pairs, caches the spare
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  void fill_normal(std::vector<double>& out) {
    for (double& v : out) v = normal();
  }

  std::vector<double> normal_vector(std::size_t n) {
    std::vector<double> out(n);
    fill_normal(out);
    return out;
  }

  // splitmix64 finalizer; use to derive independent substream seeds
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace specdiff
