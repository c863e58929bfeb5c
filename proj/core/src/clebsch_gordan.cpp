#include "spinflow/clebsch_gordan.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <vector>

namespace spinflow {
namespace {

// Factorial table over GMP integers. Arguments stay below
// (2*kMaxTwiceSpin + kMaxTwiceSpin)/2 + 2 for any supported input, but the
// table grows on demand anyway. Guarded for concurrent first use.
const mpz_class& factorial(int n) {
  static std::vector<mpz_class>* table = [] {
    auto* t = new std::vector<mpz_class>;
    t->reserve(128);
    t->emplace_back(1);
    return t;
  }();
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<int>(table->size()) <= n) {
    table->push_back(table->back() * static_cast<int>(table->size()));
  }
  return (*table)[n];
}

// Half of a twice-integer that is known to be even.
int half(int twice) { return twice / 2; }

}  // namespace

double SqrtRational::to_double() const {
  if (sign == 0) return 0.0;
  return sign * std::sqrt(radicand.get_d());
}

CgCoefficient clebsch_gordan(TwiceJ j1, TwiceJ j2, int twice_m1, int twice_m2,
                             TwiceJ J, int twice_M) {
  if (!j1.holds_projection(twice_m1)) {
    throw InvalidInput("clebsch_gordan: m1 incompatible with j1 (parity or range)");
  }
  if (!j2.holds_projection(twice_m2)) {
    throw InvalidInput("clebsch_gordan: m2 incompatible with j2 (parity or range)");
  }
  if (!J.holds_projection(twice_M)) {
    throw InvalidInput("clebsch_gordan: M incompatible with J (parity or range)");
  }

  CgCoefficient out{j1, j2, J, twice_m1, twice_m2, twice_M,
                    SqrtRational::zero(), 0.0};

  // Selection rules: projection additivity and triangle inequality. The
  // triangle parity ((j1+j2+J) integer-valued) is implied by the projection
  // parities together with m1 + m2 = M.
  if (twice_m1 + twice_m2 != twice_M) return out;
  if (J.twice() < std::abs(j1.twice() - j2.twice()) ||
      J.twice() > j1.twice() + j2.twice()) {
    return out;
  }
  if ((j1.twice() + j2.twice() + J.twice()) % 2 != 0) return out;

  const int tj1 = j1.twice(), tj2 = j2.twice(), tJ = J.twice();
  const int tm1 = twice_m1, tm2 = twice_m2, tM = twice_M;

  // Racah sum: CG = sqrt(pref) * S with
  //   pref = (2J+1) * Delta(j1 j2 J) * prod of six projection factorials,
  //   S    = sum_k (-1)^k / [k! (j1+j2-J-k)! (j1-m1-k)! (j2+m2-k)!
  //                          (J-j2+m1+k)! (J-j1-m2+k)!].
  mpq_class pref(tJ + 1, 1);
  pref *= mpq_class(factorial(half(tj1 + tj2 - tJ)) *
                        factorial(half(tj1 - tj2 + tJ)) *
                        factorial(half(-tj1 + tj2 + tJ)),
                    factorial(half(tj1 + tj2 + tJ) + 1));
  pref *= factorial(half(tj1 + tm1));
  pref *= factorial(half(tj1 - tm1));
  pref *= factorial(half(tj2 + tm2));
  pref *= factorial(half(tj2 - tm2));
  pref *= factorial(half(tJ + tM));
  pref *= factorial(half(tJ - tM));
  pref.canonicalize();

  const int k_min = std::max({0, half(tj2 - tJ - tm1), half(tj1 - tJ + tm2)});
  const int k_max = std::min({half(tj1 + tj2 - tJ), half(tj1 - tm1), half(tj2 + tm2)});

  mpq_class sum = 0;
  for (int k = k_min; k <= k_max; ++k) {
    mpz_class denom = factorial(k);
    denom *= factorial(half(tj1 + tj2 - tJ) - k);
    denom *= factorial(half(tj1 - tm1) - k);
    denom *= factorial(half(tj2 + tm2) - k);
    denom *= factorial(half(tJ - tj2 + tm1) + k);
    denom *= factorial(half(tJ - tj1 - tm2) + k);
    mpq_class term(k % 2 == 0 ? 1 : -1, denom);
    term.canonicalize();
    sum += term;
  }

  const int sgn = sum > 0 ? 1 : (sum < 0 ? -1 : 0);
  if (sgn != 0) {
    out.exact.sign = sgn;
    out.exact.radicand = pref * sum * sum;
    out.exact.radicand.canonicalize();
    out.value = out.exact.to_double();
  }
  return out;
}

double cg(TwiceJ j1, TwiceJ j2, int twice_m1, int twice_m2, TwiceJ J,
          int twice_M) {
  return clebsch_gordan(j1, j2, twice_m1, twice_m2, J, twice_M).value;
}

}  // namespace spinflow
