#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace robin {

// Deterministic random stream. Uniforms come straight from the mt19937_64
// engine and normals from an explicit Box-Muller transform, so draws do not
// depend on the standard library's distribution implementations and runs are
// reproducible bit-for-bit from the seed.
class RngStream {
public:
  explicit RngStream(std::uint64_t seed) : eng_(seed) {}

  // uniform on the open interval (0,1)
  double uniform() {
    double u;
    do {
      u = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    } while (u == 0.0);
    return u;
  }

  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

private:
  std::mt19937_64 eng_;
};

// splitmix64-style mix for deriving independent sub-stream seeds
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace robin
