#include "spinflow/spin_relax.hpp"

#include <cmath>
#include <complex>

#include <unsupported/Eigen/MatrixFunctions>

namespace spinflow {

using std::complex;

namespace {

Eigen::MatrixXcd identity_superop(int d) {
  return Eigen::MatrixXcd::Identity(d * d, d * d);
}

/// Superoperator of rho -> sum_i S_i rho S_i for a Cartesian triple.
Eigen::MatrixXcd spin_sandwich(const SpinTriple& s) {
  Eigen::MatrixXcd out = kron(s.x.matrix, s.x.matrix.transpose());
  out += kron(s.y.matrix, s.y.matrix.transpose());
  out += kron(s.z.matrix, s.z.matrix.transpose());
  return out;
}

void check_density_matrix(const SpinOperator& rho) {
  const double herm = (rho.matrix - rho.matrix.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-12) throw InvalidInput("density matrix not Hermitian");
  if (std::abs(rho.matrix.trace() - complex<double>(1.0)) > 1e-12) {
    throw InvalidInput("density matrix trace != 1");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.matrix);
  if (es.eigenvalues().minCoeff() < -1e-12) {
    throw InvalidInput("density matrix not positive semidefinite");
  }
}

}  // namespace

SuperOp lindbladian(const RelaxationModel& model) {
  const SpinTriple shat = normalized_spin(model.s);
  const int d = model.s.dimension();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);

  // Route 1: L = -(gamma/2) sum_i [Ŝ_i, [Ŝ_i, ·]]
  //        = gamma (sum_i Ŝ_i·Ŝ_i sandwich - 1), using sum_i Ŝ_i² = 1.
  Eigen::MatrixXcd sq = shat.x.matrix * shat.x.matrix +
                        shat.y.matrix * shat.y.matrix +
                        shat.z.matrix * shat.z.matrix;
  Eigen::MatrixXcd dc = kron(sq, id) + kron(id, sq.transpose()) -
                        2.0 * spin_sandwich(shat);
  dc *= -0.5 * model.gamma_s;

  // Route 2: elementwise L_(mn),(m'n') = gamma (Ŝ_mm'·Ŝ_n'n - δδ).
  Eigen::MatrixXcd ew = Eigen::MatrixXcd::Zero(d * d, d * d);
  for (int m = 0; m < d; ++m)
    for (int n = 0; n < d; ++n)
      for (int mp = 0; mp < d; ++mp)
        for (int np = 0; np < d; ++np) {
          complex<double> dot = shat.x.matrix(m, mp) * shat.x.matrix(np, n) +
                                shat.y.matrix(m, mp) * shat.y.matrix(np, n) +
                                shat.z.matrix(m, mp) * shat.z.matrix(np, n);
          if (m == mp && n == np) dot -= 1.0;
          ew(m * d + n, mp * d + np) = model.gamma_s * dot;
        }

  const double mismatch = (dc - ew).cwiseAbs().maxCoeff();
  if (mismatch > 1e-13 * std::abs(model.gamma_s)) {
    throw NumericalError("lindbladian: construction routes disagree by " +
                         std::to_string(mismatch));
  }
  return {model.s, std::move(ew)};
}

std::vector<RelaxationEigenvalue> exact_eigenvalues(const RelaxationModel& model) {
  std::vector<RelaxationEigenvalue> out;
  out.reserve(model.s.twice() + 1);
  for (int K = 0; K <= model.s.twice(); ++K) {
    out.push_back({K, K == 0 ? 0.0 : -model.gamma_K(K), 2 * K + 1});
  }
  return out;
}

double verify_spectrum(const RelaxationModel& model) {
  const SuperOp lind = lindbladian(model);
  const TensorOpBasis basis(model.s);
  const auto exact = exact_eigenvalues(model);
  const double scale = model.gamma_s;
  double worst = 0.0;

  // Dense diagonalization against the closed form, as sorted multisets.
  const SuperOpSpectrum spec = superop_spectrum(lind);
  std::vector<double> dense;
  dense.reserve(spec.eigenvalues.size());
  for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
    worst = std::max(worst, std::abs(spec.eigenvalues(i).imag()) / scale);
    dense.push_back(spec.eigenvalues(i).real());
  }
  std::sort(dense.begin(), dense.end());
  std::vector<double> closed;
  for (const auto& e : exact)
    for (int i = 0; i < e.degeneracy; ++i) closed.push_back(e.lambda);
  std::sort(closed.begin(), closed.end());
  for (std::size_t i = 0; i < dense.size(); ++i) {
    worst = std::max(worst, std::abs(dense[i] - closed[i]) / scale);
  }

  // Projections (KQ|L|KQ) for every Q, their Q-independence, and the
  // eigenoperator property.
  for (const auto& e : exact) {
    for (int Q = -e.K; Q <= e.K; ++Q) {
      const Eigen::VectorXcd v = vectorize(basis.spin_op(e.K, Q)).coeffs;
      const complex<double> proj = v.dot(lind.matrix * v);
      worst = std::max(worst, std::abs(proj - e.lambda) / scale);
      const Eigen::VectorXcd resid = lind.matrix * v - e.lambda * v;
      worst = std::max(worst, resid.cwiseAbs().maxCoeff() / scale);
    }
  }
  return worst;
}

SpinOperator multipole_decay(const RelaxationModel& model,
                             const SpinOperator& rho0, double t) {
  if (t < 0) throw InvalidInput("multipole_decay: t must be >= 0");
  if (rho0.s != model.s) throw InvalidInput("multipole_decay: spin mismatch");
  check_density_matrix(rho0);

  const TensorOpBasis basis(model.s);
  MultipoleDecomposition dec = decompose(rho0, basis);
  for (int K = 0; K <= basis.max_rank(); ++K) {
    const double factor = std::exp(-model.gamma_K(K) * t);
    for (int Q = -K; Q <= K; ++Q) {
      dec.components[basis.flat_index(K, Q)] *= factor;
    }
  }
  return recompose(dec, basis);
}

ChannelSpec qubit_kraus(const RelaxationModel& model, double t) {
  if (model.s.twice() != 1) {
    throw InvalidInput(
        "qubit_kraus: finite-time Kraus operators are only known for s = 1/2");
  }
  if (t < 0) throw InvalidInput("qubit_kraus: t must be >= 0");

  const double decay = std::exp(-t / model.tau_1());
  const double w0 = 0.5 * std::sqrt(1.0 + 3.0 * decay);
  const double wi = 0.5 * std::sqrt(1.0 - decay);

  const SpinTriple s = spin_matrices(model.s);  // sigma_i / 2
  std::vector<Eigen::MatrixXcd> kraus;
  kraus.push_back(w0 * Eigen::MatrixXcd::Identity(2, 2));
  kraus.push_back(wi * 2.0 * s.x.matrix);
  kraus.push_back(wi * 2.0 * s.y.matrix);
  kraus.push_back(wi * 2.0 * s.z.matrix);

  Eigen::MatrixXcd super = Eigen::MatrixXcd::Zero(4, 4);
  Eigen::MatrixXcd ktk = Eigen::MatrixXcd::Zero(2, 2);
  for (const auto& w : kraus) {
    super += kron(w, w.conjugate());
    ktk += w.adjoint() * w;
  }

  ChannelSpec spec{std::move(kraus), {model.s, std::move(super)}, {}};
  const ChoiReport choi = choi_matrix(spec.superop);
  spec.cptp_report.trace_residual =
      (ktk - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff();
  spec.cptp_report.choi_min_eigenvalue = choi.min_eigenvalue;
  return spec;
}

ChoiReport choi_matrix(const SuperOp& channel) {
  const int d = channel.s.dimension();
  ChoiReport report;
  report.matrix.resize(d * d, d * d);
  report.trace_preservation_residual = 0.0;

  Eigen::VectorXcd basis_vec = Eigen::VectorXcd::Zero(d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      basis_vec(i * d + j) = 1.0;
      const Eigen::VectorXcd image = channel.matrix * basis_vec;
      basis_vec(i * d + j) = 0.0;
      const SpinOperator block = devectorize({channel.s, image});
      report.matrix.block(i * d, j * d, d, d) = block.matrix;
      const complex<double> expected = i == j ? 1.0 : 0.0;
      report.trace_preservation_residual =
          std::max(report.trace_preservation_residual,
                   std::abs(block.matrix.trace() - expected));
    }
  }

  // A Hermiticity-preserving channel has a Hermitian Choi matrix; symmetrize
  // away solver noise before the eigensolve.
  Eigen::MatrixXcd herm = 0.5 * (report.matrix + report.matrix.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
  if (es.info() != Eigen::Success) {
    throw NumericalError("choi_matrix: eigensolver did not converge");
  }
  report.min_eigenvalue = es.eigenvalues().minCoeff();
  return report;
}

double microscopic_check_classical(TwiceJ s, double omega0, double tau_c,
                                   double dt) {
  const RelaxationModel model = RelaxationModel::from_field_noise(s, omega0, tau_c);
  if (!(model.gamma_s * dt < 0.01)) {
    throw InvalidInput("microscopic_check_classical: step too large, need gamma_s*dt < 0.01");
  }
  if (dt == 0.0) return 0.0;

  const SpinTriple shat = normalized_spin(model.s);
  const int d = model.s.dimension();
  const double p = model.gamma_s * dt;
  const Eigen::MatrixXcd single_step =
      (1.0 - p) * identity_superop(d) + p * spin_sandwich(shat);
  const SuperOp exact = exp_superop(lindbladian(model), dt);
  return (single_step - exact.matrix).cwiseAbs().maxCoeff();
}

double microscopic_check_quantum(TwiceJ s_in, double coupling_J, double dt) {
  const TwiceJ s = checked_spin(s_in.twice());
  if (s.twice() < 1) throw InvalidInput("microscopic_check_quantum: need s >= 1/2");
  if (!(std::abs(coupling_J) * dt < 0.1)) {
    throw InvalidInput("microscopic_check_quantum: step too large, need J*dt < 0.1");
  }
  const int d = s.dimension();
  if (dt == 0.0) return 0.0;

  const SpinTriple spin = spin_matrices(s);
  const SpinTriple tau = spin_matrices(TwiceJ(1));  // Pauli / 2

  // H = -J S·tau on H_s ⊗ C², with tau the Pauli matrices.
  Eigen::MatrixXcd h = kron(spin.x.matrix, 2.0 * tau.x.matrix);
  h += kron(spin.y.matrix, 2.0 * tau.y.matrix);
  h += kron(spin.z.matrix, 2.0 * tau.z.matrix);
  h *= -coupling_J;

  const complex<double> minus_i(0.0, -1.0);
  const Eigen::MatrixXcd u = (minus_i * dt * h).exp();
  const Eigen::MatrixXcd udag = u.adjoint();

  const double gamma_dt = s.casimir() * coupling_J * coupling_J * dt * dt;
  const SpinTriple shat = normalized_spin(s);
  const Eigen::MatrixXcd model_step =
      (1.0 - gamma_dt) * identity_superop(d) + gamma_dt * spin_sandwich(shat);

  // Apply the exact two-spin evolution to every dyad E_ij ⊗ 1/2, trace out
  // the impurity and compare against the model channel, dyad by dyad.
  double residual = 0.0;
  Eigen::MatrixXcd dyad = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      dyad(i, j) = 1.0;
      const Eigen::MatrixXcd big =
          u * kron(dyad, 0.5 * Eigen::MatrixXcd::Identity(2, 2)) * udag;
      const Eigen::VectorXcd model_image = model_step * vectorize({s, dyad}).coeffs;
      dyad(i, j) = 0.0;

      Eigen::MatrixXcd reduced(d, d);
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
          reduced(a, b) = big(2 * a, 2 * b) + big(2 * a + 1, 2 * b + 1);

      const SpinOperator model_op = devectorize({s, model_image});
      residual = std::max(residual,
                          (reduced - model_op.matrix).cwiseAbs().maxCoeff());
    }
  }
  return residual / gamma_dt;
}

}  // namespace spinflow
