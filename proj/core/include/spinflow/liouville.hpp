#ifndef SPINFLOW_LIOUVILLE_HPP
#define SPINFLOW_LIOUVILLE_HPP

#include <vector>

#include <Eigen/Dense>

#include "spinflow/spin_ops.hpp"

namespace spinflow {

/// Operator vectorized over the dyadic basis |m)(n|.
///
/// Index convention (fixed for the whole library): with the descending-m
/// basis of spin_ops.hpp, the dyad |m><n| sits at index
/// (s - m) * d_s + (s - n), i.e. vectorization is the row-major flattening
/// of the operator matrix. The Liouville inner product is then the plain
/// component-wise one: <vec A, vec B> = tr(A† B).
struct LiouvilleVec {
  TwiceJ s;
  Eigen::VectorXcd coeffs;  // length d_s²
};

/// Linear map on Liouville space, stored as a dense d_s² x d_s² matrix acting
/// on LiouvilleVec coefficients.
///
/// Sign conventions (see also spin_relax.hpp):
///  - liouvillian(H) returns the bare commutator map L = [H, ·]; unitary
///    evolution is d/dt rho = -i L rho.
///  - dissipative Lindbladians are generators in their own right:
///    d/dt rho = L rho, evolved by evolve() below as exp(L t).
struct SuperOp {
  TwiceJ s;
  Eigen::MatrixXcd matrix;
};

LiouvilleVec vectorize(const SpinOperator& a);
SpinOperator devectorize(const LiouvilleVec& v);

/// tr(A† B) via vectorized coefficients.
std::complex<double> trace_inner(const LiouvilleVec& a, const LiouvilleVec& b);

/// Kronecker product, row-major blocks of a(i,j) * b.
Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

/// Superoperator of the map rho -> A rho B under the row-major vectorization:
/// kron(A, B^T).
SuperOp sandwich_superop(const SpinOperator& a, const Eigen::MatrixXcd& b);

/// Commutator map L = [H, ·] for Hermitian H (matrix elements
/// H_mm' δ_nn' - H_n'n δ_mm'); rejects non-Hermitian input (residual 1e-12).
SuperOp liouvillian(const SpinOperator& h);

struct SuperOpSpectrum {
  Eigen::VectorXcd eigenvalues;       // sorted: Re desc, then Im asc
  std::vector<LiouvilleVec> eigenvectors;
};

/// Dense eigendecomposition with a deterministic order: eigenvalues by
/// (Re desc, Im asc), exact ties broken lexicographically on the
/// phase-normalized eigenvector entries.
SuperOpSpectrum superop_spectrum(const SuperOp& op);

/// exp(L t) as a superoperator; t may have either sign (raw matrix
/// exponential, no semigroup contract).
SuperOp exp_superop(const SuperOp& generator, double t);

/// Semigroup evolution rho(t) = exp(L t) rho0 for a generator L in the
/// d/dt rho = L rho convention. Rejects t < 0: dissipative generators are
/// not invertible as CP maps.
SpinOperator evolve(const SuperOp& generator, const SpinOperator& rho0, double t);

}  // namespace spinflow

#endif
