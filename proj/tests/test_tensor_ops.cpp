#include <cmath>

#include <doctest.h>

#include "spinflow/tensor_ops.hpp"
#include "test_util.hpp"

using namespace spinflow;
using testutil::max_abs;
using testutil::random_density;
using testutil::random_matrix;

namespace {

const std::complex<double> I(0.0, 1.0);

/// Spherical components S_0 = S_z, S_{±1} = ∓(S_x ± i S_y)/sqrt(2).
Eigen::MatrixXcd spherical_component(const SpinTriple& s, int q) {
  switch (q) {
    case 0: return s.z.matrix;
    case 1: return -(s.x.matrix + I * s.y.matrix) / std::sqrt(2.0);
    default: return (s.x.matrix - I * s.y.matrix) / std::sqrt(2.0);
  }
}

}  // namespace

TEST_SUITE("tensor_ops") {

TEST_CASE("explicit spin-1/2 members") {
  const TensorOpBasis basis(TwiceJ(1));
  const SpinTriple s = spin_matrices(TwiceJ(1));
  CHECK(max_abs(basis.op(0, 0) -
                Eigen::MatrixXcd::Identity(2, 2) / std::sqrt(2.0)) < 1e-14);
  CHECK(max_abs(basis.op(1, 0) - std::sqrt(2.0) * s.z.matrix) < 1e-14);
}

TEST_CASE("rank-1 members are the normalized spherical spin components") {
  for (int ts : {1, 2, 3, 6}) {
    const TensorOpBasis basis{TwiceJ(ts)};
    const SpinTriple s = spin_matrices(TwiceJ(ts));
    const double c_s = TwiceJ(ts).casimir() * (ts + 1) / 3.0;
    for (int q = -1; q <= 1; ++q) {
      CHECK(max_abs(basis.op(1, q) -
                    spherical_component(s, q) / std::sqrt(c_s)) < 1e-13);
    }
  }
}

TEST_CASE("traceless above rank zero; monopole is the scaled identity") {
  for (int ts : {1, 2, 5}) {
    const TensorOpBasis basis{TwiceJ(ts)};
    const int d = ts + 1;
    CHECK(max_abs(basis.op(0, 0) - Eigen::MatrixXcd::Identity(d, d) /
                                       std::sqrt(double(d))) < 1e-14);
    for (int K = 1; K <= basis.max_rank(); ++K)
      for (int Q = -K; Q <= K; ++Q)
        CHECK(std::abs(basis.op(K, Q).trace()) < 1e-14);
  }
}

TEST_CASE("orthonormality under the trace scalar product") {
  for (int ts = 1; ts <= 20; ts += (ts < 6 ? 1 : 7)) {
    const TensorOpBasis basis{TwiceJ(ts)};
    CHECK(basis.size() == (ts + 1) * (ts + 1));
    double worst = 0.0;
    for (int K = 0; K <= basis.max_rank(); ++K)
      for (int Q = -K; Q <= K; ++Q)
        for (int Kp = 0; Kp <= basis.max_rank(); ++Kp)
          for (int Qp = -Kp; Qp <= Kp; ++Qp) {
            const std::complex<double> g =
                (basis.op(K, Q).adjoint() * basis.op(Kp, Qp)).trace();
            const double expected = (K == Kp && Q == Qp) ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(g - expected));
          }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("Hermitian conjugation (T^K_Q)^† = (-)^Q T^K_{-Q}") {
  for (int ts : {1, 3, 4}) {
    const TensorOpBasis basis{TwiceJ(ts)};
    for (int K = 0; K <= basis.max_rank(); ++K)
      for (int Q = -K; Q <= K; ++Q) {
        const double phase = Q % 2 == 0 ? 1.0 : -1.0;
        CHECK(max_abs(basis.op(K, Q).adjoint() - phase * basis.op(K, -Q)) <
              1e-13);
      }
  }
}

TEST_CASE("infinitesimal rotation covariance (ITO commutators)") {
  CHECK(check_ito_commutators(TensorOpBasis{TwiceJ(1)}) < 1e-13);
  CHECK(check_ito_commutators(TensorOpBasis{TwiceJ(10)}) < 1e-12);
  for (int ts = 1; ts <= 20; ++ts) {
    CHECK(check_ito_commutators(TensorOpBasis{TwiceJ(ts)}) < 1e-11);
  }
  // The scalar member commutes with every generator exactly.
  const TensorOpBasis basis{TwiceJ(4)};
  const SpinTriple s = spin_matrices(TwiceJ(4));
  for (const auto& gen : {s.x.matrix, s.y.matrix, s.z.matrix}) {
    CHECK(max_abs(gen * basis.op(0, 0) - basis.op(0, 0) * gen) < 1e-15);
  }
}

TEST_CASE("decompose: monopole of the complete mixture") {
  for (int ts : {1, 2, 7}) {
    const int d = ts + 1;
    const TensorOpBasis basis{TwiceJ(ts)};
    const MultipoleDecomposition dec =
        decompose({TwiceJ(ts), Eigen::MatrixXcd::Identity(d, d) / double(d)},
                  basis);
    CHECK(std::abs(dec.at(basis, 0, 0) - 1.0 / std::sqrt(double(d))) < 1e-14);
    for (int K = 1; K <= basis.max_rank(); ++K)
      for (int Q = -K; Q <= K; ++Q)
        CHECK(std::abs(dec.at(basis, K, Q)) < 1e-14);
  }
}

TEST_CASE("decompose: polarized spin-1/2 state") {
  const TensorOpBasis basis{TwiceJ(1)};
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(2, 2);
  rho(0, 0) = 1.0;
  const MultipoleDecomposition dec = decompose({TwiceJ(1), rho}, basis);
  CHECK(std::abs(dec.at(basis, 0, 0) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(dec.at(basis, 1, 0) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(dec.at(basis, 1, 1)) < 1e-15);
  CHECK(std::abs(dec.at(basis, 1, -1)) < 1e-15);
}

TEST_CASE("recompose inverts decompose") {
  for (int ts : {1, 2, 5}) {
    const TensorOpBasis basis{TwiceJ(ts)};
    const SpinOperator a{TwiceJ(ts), random_matrix(ts + 1, ts + 1, 31 + ts)};
    const SpinOperator back = recompose(decompose(a, basis), basis);
    CHECK(max_abs(back.matrix - a.matrix) < 1e-12);
  }
}

TEST_CASE("Hermitian sources have rho_K,-Q = (-)^Q conj(rho_KQ)") {
  for (int ts : {2, 3}) {
    const TensorOpBasis basis{TwiceJ(ts)};
    const SpinOperator rho{TwiceJ(ts), random_density(ts + 1, 17 + ts)};
    const MultipoleDecomposition dec = decompose(rho, basis);
    for (int K = 0; K <= basis.max_rank(); ++K)
      for (int Q = -K; Q <= K; ++Q) {
        const double phase = Q % 2 == 0 ? 1.0 : -1.0;
        CHECK(std::abs(dec.at(basis, K, -Q) -
                       phase * std::conj(dec.at(basis, K, Q))) < 1e-12);
      }
  }
}

TEST_CASE("rank projectors: orthogonal resolution of the identity") {
  for (int ts : {1, 2, 4}) {
    const TensorOpBasis basis{TwiceJ(ts)};
    const std::vector<SuperOp> proj = rank_projectors(basis);
    const int dd = (ts + 1) * (ts + 1);
    REQUIRE(static_cast<int>(proj.size()) == ts + 1);

    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dd, dd);
    for (int K = 0; K <= ts; ++K) {
      sum += proj[K].matrix;
      // Rank equals the sector dimension 2K+1.
      CHECK(proj[K].matrix.trace().real() == doctest::Approx(2 * K + 1).epsilon(1e-13));
      for (int Kp = 0; Kp <= ts; ++Kp) {
        const Eigen::MatrixXcd prod = proj[K].matrix * proj[Kp].matrix;
        if (K == Kp) {
          CHECK(max_abs(prod - proj[K].matrix) < 1e-12);
        } else {
          CHECK(max_abs(prod) < 1e-12);
        }
      }
    }
    CHECK(max_abs(sum - Eigen::MatrixXcd::Identity(dd, dd)) < 1e-12);
  }
}

TEST_CASE("out-of-range inputs are rejected") {
  CHECK_THROWS_AS(TensorOpBasis{TwiceJ(42)}, InvalidInput);
  const TensorOpBasis basis{TwiceJ(2)};
  CHECK_THROWS_AS(basis.op(3, 0), InvalidInput);
  CHECK_THROWS_AS(basis.op(1, 2), InvalidInput);
  const SpinOperator wrong{TwiceJ(4), random_matrix(5, 5, 2)};
  CHECK_THROWS_AS(decompose(wrong, basis), InvalidInput);
}

}  // TEST_SUITE
