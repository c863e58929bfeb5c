#include "spinflow/tensor_ops.hpp"

#include <cmath>

#include "spinflow/clebsch_gordan.hpp"

namespace spinflow {

TensorOpBasis::TensorOpBasis(TwiceJ s_in) : s_(checked_spin(s_in.twice())) {
  const int d = s_.dimension();
  const int ts = s_.twice();
  ops_.reserve(d * d);
  for (int K = 0; K <= ts; ++K) {
    for (int Q = -K; Q <= K; ++Q) {
      Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(d, d);
      // m runs over projections; the ket projection is m' = m + Q.
      for (int tm = -ts; tm <= ts; tm += 2) {
        const int tmp = tm + 2 * Q;
        if (std::abs(tmp) > ts) continue;
        const double c = cg(s_, s_, tmp, -tm, TwiceJ(2 * K), 2 * Q);
        if (c == 0.0) continue;
        const int phase = ((ts - tm) / 2) % 2 == 0 ? 1 : -1;
        t(basis_index(s_, tmp), basis_index(s_, tm)) = phase * c;
      }
      ops_.push_back(std::move(t));
    }
  }
}

int TensorOpBasis::flat_index(int K, int Q) const {
  if (K < 0 || K > max_rank() || std::abs(Q) > K) {
    throw InvalidInput("TensorOpBasis: (K, Q) out of range");
  }
  return K * K + (Q + K);
}

const Eigen::MatrixXcd& TensorOpBasis::op(int K, int Q) const {
  return ops_[flat_index(K, Q)];
}

double check_ito_commutators(const TensorOpBasis& basis) {
  const SpinTriple s = spin_matrices(basis.s());
  const Eigen::MatrixXcd jp = spin_plus(basis.s()).matrix;
  const Eigen::MatrixXcd jm = spin_minus(basis.s()).matrix;

  double worst = 0.0;
  auto track = [&worst](const Eigen::MatrixXcd& diff) {
    worst = std::max(worst, diff.cwiseAbs().maxCoeff());
  };

  for (int K = 0; K <= basis.max_rank(); ++K) {
    for (int Q = -K; Q <= K; ++Q) {
      const Eigen::MatrixXcd& t = basis.op(K, Q);
      track(s.z.matrix * t - t * s.z.matrix - double(Q) * t);

      const Eigen::MatrixXcd up = jp * t - t * jp;
      if (Q + 1 <= K) {
        track(up - std::sqrt(double(K * (K + 1) - Q * (Q + 1))) * basis.op(K, Q + 1));
      } else {
        track(up);
      }
      const Eigen::MatrixXcd down = jm * t - t * jm;
      if (Q - 1 >= -K) {
        track(down - std::sqrt(double(K * (K + 1) - Q * (Q - 1))) * basis.op(K, Q - 1));
      } else {
        track(down);
      }
    }
  }
  return worst;
}

MultipoleDecomposition decompose(const SpinOperator& rho,
                                 const TensorOpBasis& basis) {
  if (rho.s != basis.s()) throw InvalidInput("decompose: spin mismatch");
  const int d = rho.s.dimension();
  if (rho.matrix.rows() != d || rho.matrix.cols() != d) {
    throw InvalidInput("decompose: matrix dimension mismatch");
  }
  MultipoleDecomposition dec{rho.s, {}};
  dec.components.reserve(basis.size());
  for (int K = 0; K <= basis.max_rank(); ++K) {
    for (int Q = -K; Q <= K; ++Q) {
      dec.components.push_back((basis.op(K, Q).adjoint() * rho.matrix).trace());
    }
  }
  return dec;
}

SpinOperator recompose(const MultipoleDecomposition& dec,
                       const TensorOpBasis& basis) {
  if (dec.s != basis.s()) throw InvalidInput("recompose: spin mismatch");
  const int d = dec.s.dimension();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  for (int K = 0; K <= basis.max_rank(); ++K) {
    for (int Q = -K; Q <= K; ++Q) {
      out += dec.components.at(basis.flat_index(K, Q)) * basis.op(K, Q);
    }
  }
  return {dec.s, out};
}

std::vector<SuperOp> rank_projectors(const TensorOpBasis& basis) {
  const int d = basis.s().dimension();
  std::vector<SuperOp> projectors;
  projectors.reserve(basis.max_rank() + 1);
  for (int K = 0; K <= basis.max_rank(); ++K) {
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(d * d, d * d);
    for (int Q = -K; Q <= K; ++Q) {
      const Eigen::VectorXcd v = vectorize({basis.s(), basis.op(K, Q)}).coeffs;
      p += v * v.adjoint();
    }
    projectors.push_back({basis.s(), std::move(p)});
  }
  return projectors;
}

}  // namespace spinflow
