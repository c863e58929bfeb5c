#include <cmath>
#include <vector>

#include <doctest.h>

#include "spinflow/clebsch_gordan.hpp"

using spinflow::cg;
using spinflow::clebsch_gordan;
using spinflow::InvalidInput;
using spinflow::TwiceJ;

namespace {

// Independent oracle: builds the coupled states |J M> numerically in the
// product basis by Gram-Schmidt on the top states (Condon-Shortley phase:
// the coefficient of |j1 j1>|j2 J-j1> is positive) followed by repeated
// lowering, then reads off <m1 m2|J M>. No Racah sum anywhere.
struct LadderOracle {
  int tj1, tj2;
  // state vectors indexed by basis (i1 * d2 + i2), i = (j - m)/2
  std::vector<std::vector<double>> states;  // one per (J, M), see index()
  std::vector<int> tJ_list;

  LadderOracle(int tj1_in, int tj2_in) : tj1(tj1_in), tj2(tj2_in) {
    const int d1 = tj1 + 1, d2 = tj2 + 1;
    auto lower = [&](const std::vector<double>& v) {
      // J- = J1- + J2- in the product basis, real arithmetic.
      std::vector<double> out(d1 * d2, 0.0);
      for (int i1 = 0; i1 < d1; ++i1) {
        for (int i2 = 0; i2 < d2; ++i2) {
          const double amp = v[i1 * d2 + i2];
          if (amp == 0.0) continue;
          const double m1 = 0.5 * tj1 - i1, m2 = 0.5 * tj2 - i2;
          const double j1 = 0.5 * tj1, j2 = 0.5 * tj2;
          if (i1 + 1 < d1) {
            out[(i1 + 1) * d2 + i2] +=
                amp * std::sqrt(j1 * (j1 + 1) - m1 * (m1 - 1));
          }
          if (i2 + 1 < d2) {
            out[i1 * d2 + (i2 + 1)] +=
                amp * std::sqrt(j2 * (j2 + 1) - m2 * (m2 - 1));
          }
        }
      }
      return out;
    };
    auto dot = [&](const std::vector<double>& a, const std::vector<double>& b) {
      double acc = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
      return acc;
    };

    std::vector<std::vector<double>> tops;  // |J J> for J = j1+j2 down to |j1-j2|
    for (int tJ = tj1 + tj2; tJ >= std::abs(tj1 - tj2); tJ -= 2) {
      // M = J subspace: product states with m1 + m2 = J.
      std::vector<double> top(d1 * d2, 0.0);
      bool fixed_sign = false;
      for (int i1 = 0; i1 < d1; ++i1) {
        const int tm1 = tj1 - 2 * i1;
        const int tm2 = tJ - tm1;
        if (std::abs(tm2) > tj2) continue;
        top[i1 * d2 + (tj2 - tm2) / 2] = fixed_sign ? 0.0 : 1.0;
        fixed_sign = true;  // seed with the highest-m1 member
      }
      // Orthogonalize against the already-built towers restricted to M = J.
      for (const auto& prev : states) {
        const double overlap = dot(top, prev);
        for (std::size_t i = 0; i < top.size(); ++i) top[i] -= overlap * prev[i];
      }
      double norm = std::sqrt(dot(top, top));
      for (auto& x : top) x /= norm;
      // Condon-Shortley: coefficient of m1 = j1 must be positive.
      const int tm2_top = tJ - tj1;
      if (std::abs(tm2_top) <= tj2) {
        const double lead = top[0 * d2 + (tj2 - tm2_top) / 2];
        if (lead < 0) {
          for (auto& x : top) x = -x;
        }
      }
      // Build the tower by lowering.
      std::vector<double> cur = top;
      for (int tM = tJ; tM >= -tJ; tM -= 2) {
        double norm2 = std::sqrt(dot(cur, cur));
        std::vector<double> normalized = cur;
        for (auto& x : normalized) x /= norm2;
        states.push_back(normalized);
        tJ_list.push_back(tJ);
        cur = lower(normalized);
      }
    }
  }

  double value(int tm1, int tm2, int tJ, int tM) const {
    const int d2 = tj2 + 1;
    for (std::size_t k = 0; k < states.size(); ++k) {
      if (tJ_list[k] != tJ) continue;
      // Find the M of entry k by counting within the tower.
      // Entries are stored J by J, M descending.
      std::size_t tower_start = k;
      while (tower_start > 0 && tJ_list[tower_start - 1] == tJ) --tower_start;
      const int tM_here = tJ - 2 * static_cast<int>(k - tower_start);
      if (tM_here != tM) continue;
      return states[k][((tj1 - tm1) / 2) * d2 + (tj2 - tm2) / 2];
    }
    return 0.0;
  }
};

}  // namespace

TEST_SUITE("clebsch_gordan") {

TEST_CASE("singlet of two spin-1/2, paper sign convention") {
  const TwiceJ half(1), zero(0);
  const auto up_down = clebsch_gordan(half, half, 1, -1, zero, 0);
  const auto down_up = clebsch_gordan(half, half, -1, 1, zero, 0);
  CHECK(up_down.value == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(down_up.value == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-15));
  // Exact representation: sign * sqrt(1/2).
  CHECK(up_down.exact.sign == 1);
  CHECK(down_up.exact.sign == -1);
  CHECK(up_down.exact.radicand == mpq_class(1, 2));
  CHECK(down_up.exact.radicand == mpq_class(1, 2));
}

TEST_CASE("<s s m -m|0 0> = (-)^(s-m)/sqrt(2s+1)") {
  for (int ts = 1; ts <= 8; ++ts) {
    const TwiceJ s(ts), zero(0);
    for (int tm = -ts; tm <= ts; tm += 2) {
      const int phase = ((ts - tm) / 2) % 2 == 0 ? 1 : -1;
      const double expected = phase / std::sqrt(ts + 1.0);
      CHECK(cg(s, s, tm, -tm, zero, 0) ==
            doctest::Approx(expected).epsilon(1e-14));
    }
  }
  // s = 1, m = 1 is the worked paper case: +1/sqrt(3).
  CHECK(cg(TwiceJ(2), TwiceJ(2), 2, -2, TwiceJ(0), 0) ==
        doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
}

TEST_CASE("selection rules give exact zeros") {
  const TwiceJ one(2);
  CHECK(clebsch_gordan(one, one, 2, 0, TwiceJ(4), 0).value == 0.0);  // m1+m2 != M
  CHECK(clebsch_gordan(one, one, 2, 0, TwiceJ(4), 0).exact.sign == 0);
  CHECK(clebsch_gordan(one, one, 0, 0, TwiceJ(6), 0).value == 0.0);  // triangle
  CHECK(clebsch_gordan(TwiceJ(1), TwiceJ(1), 1, -1, TwiceJ(2), 2).value == 0.0);
}

TEST_CASE("invalid projections are rejected") {
  CHECK_THROWS_AS(cg(TwiceJ(1), TwiceJ(1), 0, 1, TwiceJ(0), 0), InvalidInput);
  CHECK_THROWS_AS(cg(TwiceJ(1), TwiceJ(1), 3, -1, TwiceJ(1), 1), InvalidInput);
  CHECK_THROWS_AS(cg(TwiceJ(2), TwiceJ(2), 2, 0, TwiceJ(2), 1), InvalidInput);
}

TEST_CASE("Condon-Shortley positivity of the stretched coefficient") {
  for (int tj1 = 0; tj1 <= 6; ++tj1) {
    for (int tj2 = 0; tj2 <= 6; ++tj2) {
      for (int tJ = std::abs(tj1 - tj2); tJ <= tj1 + tj2; tJ += 2) {
        if (std::abs(tJ - tj1) > tj2) continue;
        const double lead = cg(TwiceJ(tj1), TwiceJ(tj2), tj1, tJ - tj1,
                               TwiceJ(tJ), tJ);
        CHECK(lead > 0.0);
      }
    }
  }
}

TEST_CASE("symmetry under argument exchange") {
  // <j1 j2 m1 m2|J M> = (-)^(j1+j2-J) <j2 j1 m2 m1|J M>
  for (int tj = 1; tj <= 5; tj += 2) {
    for (int tm = -tj; tm <= tj; tm += 2) {
      const double a = cg(TwiceJ(tj), TwiceJ(tj), tm, -tm, TwiceJ(0), 0);
      const double b = cg(TwiceJ(tj), TwiceJ(tj), -tm, tm, TwiceJ(0), 0);
      CHECK(a == doctest::Approx(-b).epsilon(1e-14));  // half-integer: antisymmetric
    }
  }
}

TEST_CASE("ladder-construction oracle agrees with the Racah sum") {
  for (int tj1 = 0; tj1 <= 4; ++tj1) {
    for (int tj2 = 0; tj2 <= 3; ++tj2) {
      const LadderOracle oracle(tj1, tj2);
      for (int tJ = std::abs(tj1 - tj2); tJ <= tj1 + tj2; tJ += 2) {
        for (int tM = -tJ; tM <= tJ; tM += 2) {
          for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2) {
            const int tm2 = tM - tm1;
            if (std::abs(tm2) > tj2) continue;
            const double expected = oracle.value(tm1, tm2, tJ, tM);
            const double got =
                cg(TwiceJ(tj1), TwiceJ(tj2), tm1, tm2, TwiceJ(tJ), tM);
            CHECK(got == doctest::Approx(expected).epsilon(1e-11));
          }
        }
      }
    }
  }
}

TEST_CASE("orthogonality and completeness for all j1, j2 <= 4") {
  for (int tj1 = 0; tj1 <= 8; ++tj1) {
    for (int tj2 = 0; tj2 <= 8; ++tj2) {
      const TwiceJ j1(tj1), j2(tj2);
      // Orthogonality: sum_{m1 m2} <..|J M><..|J' M'> = δ δ.
      for (int tJ = std::abs(tj1 - tj2); tJ <= tj1 + tj2; tJ += 2) {
        for (int tJp = std::abs(tj1 - tj2); tJp <= tj1 + tj2; tJp += 2) {
          for (int tM = -tJ; tM <= tJ; tM += 2) {
            if (std::abs(tM) > tJp) continue;
            double acc = 0.0;
            for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2) {
              const int tm2 = tM - tm1;
              if (std::abs(tm2) > tj2) continue;
              acc += cg(j1, j2, tm1, tm2, TwiceJ(tJ), tM) *
                     cg(j1, j2, tm1, tm2, TwiceJ(tJp), tM);
            }
            const double expected = tJ == tJp ? 1.0 : 0.0;
            CHECK(std::abs(acc - expected) < 1e-12);
          }
        }
      }
      // Completeness: sum_{J M} <m1 m2|J M><m1' m2'|J M> = δ δ.
      for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2) {
        for (int tm2 = -tj2; tm2 <= tj2; tm2 += 2) {
          for (int tm1p = -tj1; tm1p <= tj1; tm1p += 2) {
            const int tm2p = tm1 + tm2 - tm1p;  // only M-matching terms survive
            if (std::abs(tm2p) > tj2) continue;
            double acc = 0.0;
            for (int tJ = std::abs(tj1 - tj2); tJ <= tj1 + tj2; tJ += 2) {
              const int tM = tm1 + tm2;
              if (std::abs(tM) > tJ) continue;
              acc += cg(j1, j2, tm1, tm2, TwiceJ(tJ), tM) *
                     cg(j1, j2, tm1p, tm2p, TwiceJ(tJ), tM);
            }
            const double expected = (tm1 == tm1p && tm2 == tm2p) ? 1.0 : 0.0;
            CHECK(std::abs(acc - expected) < 1e-12);
          }
        }
      }
    }
  }
}

TEST_CASE("float rendering matches the exact form") {
  for (int tj = 1; tj <= 7; tj += 3) {
    for (int tm = -tj; tm <= tj; tm += 2) {
      const auto c = clebsch_gordan(TwiceJ(tj), TwiceJ(tj), tm, -tm,
                                    TwiceJ(2), 0);
      const double rendered = c.exact.sign * std::sqrt(c.exact.radicand.get_d());
      CHECK(c.value == rendered);
    }
  }
}

}  // TEST_SUITE
