#ifndef SPINFLOW_CLEBSCH_GORDAN_HPP
#define SPINFLOW_CLEBSCH_GORDAN_HPP

#include <gmpxx.h>

#include "spinflow/twice_j.hpp"

namespace spinflow {

/// Exact value of the form sign * sqrt(p/q) with p/q a non-negative rational.
/// Clebsch-Gordan coefficients are numbers of exactly this shape, so they can
/// be carried without rounding until a float is actually needed.
struct SqrtRational {
  int sign = 0;           // -1, 0, +1
  mpq_class radicand = 0; // canonicalized, >= 0; the value is sign * sqrt(radicand)

  double to_double() const;

  static SqrtRational zero() { return {}; }
};

/// Clebsch-Gordan coefficient <j1 j2; m1 m2 | J M> in the Condon-Shortley
/// phase convention, with all quantum numbers in twice-integer units.
struct CgCoefficient {
  TwiceJ j1, j2, J;
  int twice_m1, twice_m2, twice_M;
  SqrtRational exact;
  double value;  // float rendering of `exact`
};

/// Evaluates the coefficient by the Racah closed-form sum in exact rational
/// arithmetic. Returns an exact zero when a selection rule (m1 + m2 = M,
/// triangle inequality) fails; throws InvalidInput when a projection is
/// incompatible with its angular momentum (parity mismatch or |m| > j).
CgCoefficient clebsch_gordan(TwiceJ j1, TwiceJ j2, int twice_m1, int twice_m2,
                             TwiceJ J, int twice_M);

/// Shorthand returning only the float rendering.
double cg(TwiceJ j1, TwiceJ j2, int twice_m1, int twice_m2, TwiceJ J,
          int twice_M);

}  // namespace spinflow

#endif
