#ifndef SPINFLOW_TESTS_TEST_UTIL_HPP
#define SPINFLOW_TESTS_TEST_UTIL_HPP

#include <complex>

#include <Eigen/Dense>

#include "spinflow/rng.hpp"

namespace testutil {

inline double max_abs(const Eigen::MatrixXcd& m) {
  return m.cwiseAbs().maxCoeff();
}

/// Deterministic random complex matrix with entries in the unit square.
inline Eigen::MatrixXcd random_matrix(int rows, int cols, std::uint64_t stream) {
  spinflow::Rng rng(0xc0ffee, stream);
  Eigen::MatrixXcd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      m(i, j) = std::complex<double>(2.0 * rng.next_double() - 1.0,
                                     2.0 * rng.next_double() - 1.0);
  return m;
}

inline Eigen::MatrixXcd random_hermitian(int n, std::uint64_t stream) {
  Eigen::MatrixXcd a = random_matrix(n, n, stream);
  return 0.5 * (a + a.adjoint());
}

/// Random density matrix: A A† normalized to unit trace.
inline Eigen::MatrixXcd random_density(int n, std::uint64_t stream) {
  Eigen::MatrixXcd a = random_matrix(n, n, stream);
  Eigen::MatrixXcd rho = a * a.adjoint();
  return rho / rho.trace().real();
}

}  // namespace testutil

#endif
