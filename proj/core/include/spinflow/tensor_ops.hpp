#ifndef SPINFLOW_TENSOR_OPS_HPP
#define SPINFLOW_TENSOR_OPS_HPP

#include <vector>

#include "spinflow/liouville.hpp"

namespace spinflow {

/// Orthonormal basis of irreducible tensor operators T^K_Q on the spin-s
/// space, K = 0..2s, Q = -K..K, built from Clebsch-Gordan coefficients:
///   T^K_Q = sum_m (-)^(s-m) <s s m' -m | K Q> |s m'><s m|.
/// Orthonormal under tr{(T^K_Q)† T^K'_Q'} = δ δ; T^0_0 = 1/sqrt(2s+1);
/// (T^K_Q)† = (-)^Q T^K_{-Q}; all K >= 1 members traceless.
class TensorOpBasis {
 public:
  explicit TensorOpBasis(TwiceJ s);

  TwiceJ s() const { return s_; }
  /// Highest rank, 2s.
  int max_rank() const { return s_.twice(); }
  int size() const { return static_cast<int>(ops_.size()); }

  const Eigen::MatrixXcd& op(int K, int Q) const;
  SpinOperator spin_op(int K, int Q) const { return {s_, op(K, Q)}; }

  /// Flat index of (K, Q): ranks stacked in increasing K, Q ascending inside.
  int flat_index(int K, int Q) const;

 private:
  TwiceJ s_;
  std::vector<Eigen::MatrixXcd> ops_;
};

inline TensorOpBasis build_tensor_basis(TwiceJ s) { return TensorOpBasis(s); }

/// Largest residual of the defining infinitesimal-rotation relations
///   [J±, T^K_Q] = sqrt(K(K+1) - Q(Q±1)) T^K_{Q±1},
///   [J_z, T^K_Q] = Q T^K_Q
/// over all (K, Q), max-abs matrix norm. This is the rotation-covariance
/// check used in place of finite rotations.
double check_ito_commutators(const TensorOpBasis& basis);

/// State multipoles of an operator: components rho_KQ = tr{(T^K_Q)† rho}.
struct MultipoleDecomposition {
  TwiceJ s;
  std::vector<std::complex<double>> components;  // flat_index order

  std::complex<double> at(const TensorOpBasis& basis, int K, int Q) const {
    return components.at(basis.flat_index(K, Q));
  }
};

MultipoleDecomposition decompose(const SpinOperator& rho,
                                 const TensorOpBasis& basis);
SpinOperator recompose(const MultipoleDecomposition& dec,
                       const TensorOpBasis& basis);

/// Orthogonal projectors T^(K) = sum_Q |KQ)(KQ| onto the rank-K subspaces of
/// Liouville space; idempotent, mutually orthogonal, summing to the identity.
std::vector<SuperOp> rank_projectors(const TensorOpBasis& basis);

}  // namespace spinflow

#endif
