#ifndef SPINFLOW_TWICE_J_HPP
#define SPINFLOW_TWICE_J_HPP

#include <string>

#include "spinflow/errors.hpp"

namespace spinflow {

/// Angular momenta are stored as twice their value, so half-integer spins
/// stay integral: TwiceJ{1} is s = 1/2, TwiceJ{2} is s = 1.
///
/// Projections (m, M) and ranks are passed around in the same twice-integer
/// currency; a projection m is compatible with j only if |m| <= j and
/// j - m is even in twice units (same integer/half-integer character).
class TwiceJ {
 public:
  /// Largest spin accepted by the spin-space constructors (s = 20), keeping
  /// the Liouville dimension (2s+1)^2 <= 1681 small enough for dense solvers.
  static constexpr int kMaxTwiceSpin = 40;

  explicit TwiceJ(int twice_value) : twice_(twice_value) {
    if (twice_value < 0) {
      throw InvalidInput("TwiceJ: twice-value must be non-negative, got " +
                         std::to_string(twice_value));
    }
  }

  int twice() const { return twice_; }
  /// Hilbert-space dimension 2j + 1.
  int dimension() const { return twice_ + 1; }
  double value() const { return 0.5 * twice_; }
  /// j(j+1), exact in double for twice() <= 2^26.
  double casimir() const { return 0.25 * twice_ * (twice_ + 2); }

  bool is_half_integer() const { return twice_ % 2 != 0; }

  /// True when m (twice units) is a valid projection of this j.
  bool holds_projection(int twice_m) const {
    return std::abs(twice_m) <= twice_ && (twice_ - twice_m) % 2 == 0;
  }

  friend bool operator==(TwiceJ a, TwiceJ b) { return a.twice_ == b.twice_; }
  friend bool operator!=(TwiceJ a, TwiceJ b) { return a.twice_ != b.twice_; }

 private:
  int twice_;
};

/// Validates a spin value for the modules that build (2s+1)-dimensional
/// operators; rejects s > 20.
inline TwiceJ checked_spin(int twice_s) {
  if (twice_s > TwiceJ::kMaxTwiceSpin) {
    throw InvalidInput("spin too large: twice_s = " + std::to_string(twice_s) +
                       " exceeds the supported maximum " +
                       std::to_string(TwiceJ::kMaxTwiceSpin) + " (s = 20)");
  }
  return TwiceJ(twice_s);
}

}  // namespace spinflow

#endif
