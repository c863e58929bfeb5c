#ifndef SPINFLOW_WEAK_LOC_HPP
#define SPINFLOW_WEAK_LOC_HPP

#include <limits>
#include <vector>

#include "spinflow/twice_j.hpp"

namespace spinflow {

constexpr double kInfiniteTime = std::numeric_limits<double>::infinity();

/// Weak-localization correction parameters (hbar = 1 units).
///
/// The q-integral is cut off in the UV by a hard sphere q <= 1/ell_el; the
/// infrared is regularized per spin channel by the total dephasing rate
/// 1/tau_c(K) + 1/tau_phi (rates add), with the system size as the fallback
/// cutoff q_min = 1/L_sys for channels with no dephasing at all in d <= 2.
/// Absolute magnitudes are cutoff-scheme dependent; ratios, signs and log
/// slopes are the meaningful outputs.
struct WLParams {
  int dim;           // 1, 2 or 3
  double D0;         // classical diffusion constant
  double dos_nu;     // density of states, overall prefactor 1/(pi nu)
  double ell_el;     // UV cutoff length
  double L_phi = kInfiniteTime;   // external dephasing length sqrt(D0 tau_phi)
  double L_sys = kInfiniteTime;   // system size
  double tau_sf = kInfiniteTime;  // spin-flip time
  int twice_s = 0;   // spin of the carriers; 0 = spin-less single channel

  void validate() const;
};

/// Spin-channel weights w_K = (-)^(2s+K) (2K+1)/(2s+1), K = 0..2s.
std::vector<double> channel_weights(TwiceJ s);

/// Per-channel coherence times from the spin-flip time:
/// 1/tau_c(K) = (2/tau_sf)(1 - K(K+1)/(4 s(s+1))). tau_sf may be infinite.
std::vector<double> coherence_times(TwiceJ s, double tau_sf);

struct WLChannel {
  int K;
  double weight;
  double tau_c;
  double contribution;  // closed form
};

struct WLResult {
  double delta_D_over_D0;  // sum of the channel contributions
  double quadrature_total;  // independent adaptive-quadrature evaluation
  std::vector<WLChannel> per_channel;
};

/// Evaluates Delta D / D0 = -(1/(pi nu)) int d^dq/(2pi)^d sum_K
/// w_K / (D0 q² + 1/tau_c(K)), both in closed form and by adaptive
/// quadrature; the two must agree to 1e-8 relative or NumericalError is
/// thrown. Throws InvalidInput naming the missing cutoff when the integral
/// diverges (d <= 2 with no dephasing and no system size).
WLResult wl_correction(const WLParams& params);

}  // namespace spinflow

#endif
