#include "spinflow/spin_ops.hpp"

#include <cmath>
#include <complex>

namespace spinflow {

using std::complex;

SpinOperator spin_plus(TwiceJ s_in) {
  const TwiceJ s = checked_spin(s_in.twice());
  const int d = s.dimension();
  Eigen::MatrixXcd sp = Eigen::MatrixXcd::Zero(d, d);
  // Column i holds m = s - i; S+ maps it to m + 1 at row i - 1.
  for (int i = 1; i < d; ++i) {
    const double m = s.value() - i;
    sp(i - 1, i) = std::sqrt(s.casimir() - m * (m + 1.0));
  }
  return {s, sp};
}

SpinOperator spin_minus(TwiceJ s_in) {
  SpinOperator sp = spin_plus(s_in);
  return {sp.s, sp.matrix.adjoint()};
}

SpinTriple spin_matrices(TwiceJ s_in) {
  const SpinOperator sp = spin_plus(s_in);
  const Eigen::MatrixXcd& p = sp.matrix;
  const Eigen::MatrixXcd m = p.adjoint();
  const TwiceJ s = sp.s;
  const int d = s.dimension();

  Eigen::MatrixXcd sz = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 0; i < d; ++i) sz(i, i) = s.value() - i;

  const complex<double> half(0.5, 0.0);
  const complex<double> half_over_i(0.0, -0.5);
  return {{s, half * (p + m)}, {s, half_over_i * (p - m)}, {s, sz}};
}

SpinTriple normalized_spin(TwiceJ s_in) {
  if (s_in.twice() == 0) {
    throw InvalidInput("normalized_spin: s = 0 carries no spin dynamics");
  }
  SpinTriple t = spin_matrices(s_in);
  const double scale = 1.0 / std::sqrt(t.z.s.casimir());
  t.x.matrix *= scale;
  t.y.matrix *= scale;
  t.z.matrix *= scale;
  return t;
}

}  // namespace spinflow
