#include "spinflow/liouville.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include <unsupported/Eigen/MatrixFunctions>

namespace spinflow {

using std::complex;

namespace {

void check_square(const Eigen::MatrixXcd& m, TwiceJ s, const char* where) {
  const int d = s.dimension();
  if (m.rows() != d || m.cols() != d) {
    throw InvalidInput(std::string(where) + ": matrix dimension mismatch");
  }
}

}  // namespace

LiouvilleVec vectorize(const SpinOperator& a) {
  check_square(a.matrix, a.s, "vectorize");
  const int d = a.s.dimension();
  Eigen::VectorXcd v(d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) v(i * d + j) = a.matrix(i, j);
  return {a.s, v};
}

SpinOperator devectorize(const LiouvilleVec& v) {
  const int d = v.s.dimension();
  if (v.coeffs.size() != d * d) {
    throw InvalidInput("devectorize: coefficient length mismatch");
  }
  Eigen::MatrixXcd m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = v.coeffs(i * d + j);
  return {v.s, m};
}

complex<double> trace_inner(const LiouvilleVec& a, const LiouvilleVec& b) {
  if (a.s != b.s) throw InvalidInput("trace_inner: spin mismatch");
  return a.coeffs.dot(b.coeffs);  // Eigen dot conjugates the left argument
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

SuperOp sandwich_superop(const SpinOperator& a, const Eigen::MatrixXcd& b) {
  check_square(a.matrix, a.s, "sandwich_superop");
  check_square(b, a.s, "sandwich_superop");
  return {a.s, kron(a.matrix, b.transpose())};
}

SuperOp liouvillian(const SpinOperator& h) {
  check_square(h.matrix, h.s, "liouvillian");
  const double herm_residual =
      (h.matrix - h.matrix.adjoint()).cwiseAbs().maxCoeff();
  if (herm_residual > 1e-12) {
    throw InvalidInput("liouvillian: H not Hermitian (residual " +
                       std::to_string(herm_residual) + ")");
  }
  const int d = h.s.dimension();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
  return {h.s, kron(h.matrix, id) - kron(id, h.matrix.transpose())};
}

SuperOpSpectrum superop_spectrum(const SuperOp& op) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(op.matrix);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("superop_spectrum: eigensolver did not converge");
  }
  const int n = static_cast<int>(op.matrix.rows());

  // Phase-normalize eigenvectors (largest-modulus entry real positive) so the
  // tie-break below and the returned vectors are deterministic.
  std::vector<Eigen::VectorXcd> vecs(n);
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXcd v = solver.eigenvectors().col(k);
    int imax = 0;
    for (int i = 1; i < n; ++i)
      if (std::abs(v(i)) > std::abs(v(imax))) imax = i;
    if (std::abs(v(imax)) > 0) v *= std::abs(v(imax)) / v(imax);
    vecs[k] = v;
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  const auto& ev = solver.eigenvalues();
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (ev(a).real() != ev(b).real()) return ev(a).real() > ev(b).real();
    if (ev(a).imag() != ev(b).imag()) return ev(a).imag() < ev(b).imag();
    for (int i = 0; i < n; ++i) {
      const complex<double>&va = vecs[a](i), &vb = vecs[b](i);
      if (va.real() != vb.real()) return va.real() < vb.real();
      if (va.imag() != vb.imag()) return va.imag() < vb.imag();
    }
    return false;
  });

  SuperOpSpectrum out;
  out.eigenvalues.resize(n);
  out.eigenvectors.reserve(n);
  for (int k = 0; k < n; ++k) {
    out.eigenvalues(k) = ev(order[k]);
    out.eigenvectors.push_back({op.s, vecs[order[k]]});
  }
  return out;
}

SuperOp exp_superop(const SuperOp& generator, double t) {
  Eigen::MatrixXcd scaled = generator.matrix * t;
  return {generator.s, scaled.exp()};
}

SpinOperator evolve(const SuperOp& generator, const SpinOperator& rho0, double t) {
  if (t < 0) {
    throw InvalidInput("evolve: t must be >= 0 (semigroup has no inverse)");
  }
  if (generator.s != rho0.s) throw InvalidInput("evolve: spin mismatch");
  const LiouvilleVec v = vectorize(rho0);
  const SuperOp propagator = exp_superop(generator, t);
  return devectorize({rho0.s, propagator.matrix * v.coeffs});
}

}  // namespace spinflow
