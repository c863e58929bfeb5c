#ifndef SPINFLOW_RNG_HPP
#define SPINFLOW_RNG_HPP

#include <cmath>
#include <cstdint>

#include <Eigen/Dense>

namespace spinflow {

/// splitmix64 stream keyed by (seed, stream index). Monte Carlo walkers get
/// one stream each, so results are bitwise reproducible for a given seed
/// regardless of how walkers are distributed over threads.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream)
      : state_(scramble(seed ^ scramble(stream ^ 0x6a09e667f3bcc909ULL))) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return scramble(state_);
  }

  /// Uniform in [0, 1), 53-bit resolution.
  double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

  double exponential(double mean) { return -mean * std::log1p(-next_double()); }

  /// Isotropic unit vector; dim 2 lies in the xy-plane (z = 0).
  Eigen::Vector3d direction(int dim) {
    if (dim == 2) {
      const double phi = 2.0 * M_PI * next_double();
      return {std::cos(phi), std::sin(phi), 0.0};
    }
    const double z = 2.0 * next_double() - 1.0;
    const double phi = 2.0 * M_PI * next_double();
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {r * std::cos(phi), r * std::sin(phi), z};
  }

 private:
  static std::uint64_t scramble(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace spinflow

#endif
