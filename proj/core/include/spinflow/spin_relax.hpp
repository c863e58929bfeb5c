#ifndef SPINFLOW_SPIN_RELAX_HPP
#define SPINFLOW_SPIN_RELAX_HPP

#include <vector>

#include "spinflow/tensor_ops.hpp"

namespace spinflow {

/// Isotropic spin relaxation of a spin s in a fluctuating field, fully
/// parametrized by the relaxation rate gamma_s = s(s+1) omega0² tau_c.
struct RelaxationModel {
  TwiceJ s;
  double gamma_s;

  RelaxationModel(TwiceJ s_in, double gamma)
      : s(checked_spin(s_in.twice())), gamma_s(gamma) {
    if (s.twice() < 1) throw InvalidInput("RelaxationModel: need s >= 1/2");
    if (!(gamma > 0)) throw InvalidInput("RelaxationModel: gamma_s must be > 0");
  }

  /// From the field-noise parameters: effective Larmor frequency omega0 and
  /// noise correlation time tau_c.
  static RelaxationModel from_field_noise(TwiceJ s, double omega0, double tau_c) {
    return RelaxationModel(s, s.casimir() * omega0 * omega0 * tau_c);
  }

  /// Decay rate of the rank-K multipole sector, gamma_K = |lambda_K|.
  double gamma_K(int K) const {
    return gamma_s * K * (K + 1) / (2.0 * s.casimir());
  }
  /// Orientation (K=1) relaxation time tau_1 = s(s+1)/gamma_s.
  double tau_1() const { return 1.0 / gamma_K(1); }
};

/// Pure-relaxation Lindbladian L rho = -(gamma_s/2) sum_i [Ŝ_i,[Ŝ_i, rho]],
/// returned in the d/dt rho = L rho convention. Built both from the double
/// commutator and from the elementwise formula
///   L_(mn),(m'n') = gamma_s (Ŝ_mm' · Ŝ_n'n - δ_mm' δ_nn');
/// the two constructions must agree to 1e-13 or NumericalError is thrown.
SuperOp lindbladian(const RelaxationModel& model);

struct RelaxationEigenvalue {
  int K;
  double lambda;   // -gamma_s K(K+1) / (2 s(s+1))
  int degeneracy;  // 2K+1
};

/// Closed-form spectrum, one entry per rank K = 0..2s.
std::vector<RelaxationEigenvalue> exact_eigenvalues(const RelaxationModel& model);

/// Cross-checks three routes to the spectrum — dense diagonalization,
/// projections (KQ|L|KQ) for every Q, and the closed form — plus the
/// eigenoperator property L T^K_Q = lambda_K T^K_Q and the Q-independence of
/// the projections. Returns the worst deviation relative to gamma_s.
double verify_spectrum(const RelaxationModel& model);

/// Closed-form evolution by per-sector exponential decay,
/// rho(t) = sum_KQ exp(-gamma_K t) rho_KQ(0) T^K_Q.
/// rho0 must be a density matrix (Hermitian, unit trace, PSD to 1e-12).
SpinOperator multipole_decay(const RelaxationModel& model,
                             const SpinOperator& rho0, double t);

struct CptpReport {
  double trace_residual;       // max |sum_i W_i† W_i - 1| (or Choi marginal)
  double choi_min_eigenvalue;  // >= -1e-10 for a completely positive map
};

/// Quantum channel as Kraus operators plus superoperator rendering.
struct ChannelSpec {
  std::vector<Eigen::MatrixXcd> kraus;
  SuperOp superop;
  CptpReport cptp_report;
};

/// Finite-time Kraus representation of exp(L t), known in closed form for
/// s = 1/2 only:
///   W_0 = sqrt(1 + 3 e^(-t/tau1))/2 * 1,  W_i = sqrt(1 - e^(-t/tau1))/2 * sigma_i.
/// Rejects s != 1/2 (no finite-time Kraus set is known for higher spin).
ChannelSpec qubit_kraus(const RelaxationModel& model, double t);

struct ChoiReport {
  Eigen::MatrixXcd matrix;  // d² x d² Choi-Jamiolkowski matrix
  double min_eigenvalue;
  double trace_preservation_residual;  // max |tr M(E_ij) - δ_ij|
};

/// Choi matrix of a channel superoperator: block (i,j) holds M(|i><j|).
/// Complete positivity <=> PSD.
ChoiReport choi_matrix(const SuperOp& channel);

/// Single-step comparison of the classical white-noise derivation:
/// (1 - gamma dt) rho + gamma dt sum_i Ŝ_i rho Ŝ_i versus exp(L dt), as
/// channel matrices (max-abs difference over the full operator basis).
/// gamma_s = s(s+1) omega0² tau_c; requires gamma_s * dt < 0.01.
double microscopic_check_classical(TwiceJ s, double omega0, double tau_c,
                                   double dt);

/// Exact two-spin derivation: evolves rho ⊗ 1/2 under H = -J S·tau for dt,
/// traces out the impurity and compares with the channel above using
/// gamma_s = s(s+1) J² dt. Returns the max-abs channel difference divided by
/// gamma_s dt (residual relative to the leading correction). Requires
/// J * dt < 0.1.
double microscopic_check_quantum(TwiceJ s, double coupling_J, double dt);

}  // namespace spinflow

#endif
