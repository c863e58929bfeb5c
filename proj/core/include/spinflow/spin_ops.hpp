#ifndef SPINFLOW_SPIN_OPS_HPP
#define SPINFLOW_SPIN_OPS_HPP

#include <Eigen/Dense>

#include "spinflow/twice_j.hpp"

namespace spinflow {

/// Dense operator on the (2s+1)-dimensional spin Hilbert space.
///
/// Basis convention used throughout the library: descending magnetic quantum
/// number, |s, s>, |s, s-1>, ..., |s, -s>. Row/column i holds m = s - i.
struct SpinOperator {
  TwiceJ s;
  Eigen::MatrixXcd matrix;
};

struct SpinTriple {
  SpinOperator x, y, z;
};

/// Basis index of the projection m (twice units) in the descending-m basis.
inline int basis_index(TwiceJ s, int twice_m) {
  if (!s.holds_projection(twice_m)) {
    throw InvalidInput("basis_index: projection incompatible with spin");
  }
  return (s.twice() - twice_m) / 2;
}

/// Cartesian spin matrices (S_x, S_y, S_z), dimensionless (hbar = 1), built
/// from the ladder construction S±|s m> = sqrt(s(s+1) - m(m±1)) |s m±1>.
SpinTriple spin_matrices(TwiceJ s);

/// Ladder operators S+ = S_x + i S_y and S- = S_x - i S_y.
SpinOperator spin_plus(TwiceJ s);
SpinOperator spin_minus(TwiceJ s);

/// Normalised spin operators Ŝ_i = S_i / sqrt(s(s+1)), satisfying
/// sum_i Ŝ_i² = 1. Rejects s = 0.
SpinTriple normalized_spin(TwiceJ s);

}  // namespace spinflow

#endif
