#ifndef SPINFLOW_SPIN_DIFFUSION_HPP
#define SPINFLOW_SPIN_DIFFUSION_HPP

#include "spinflow/spin_relax.hpp"
#include "spinflow/transport.hpp"

namespace spinflow {

/// Medium with elastic and spin-flip scattering off freely orientable
/// magnetic impurities. Rates add (Matthiessen); the diffusion constant is
/// built from the total momentum relaxation rate.
struct SpinMediumParams {
  MediumParams medium;
  double gamma_sf;
  TwiceJ s;

  SpinMediumParams(MediumParams medium_in, double gamma_sf_in, TwiceJ s_in)
      : medium(medium_in), gamma_sf(gamma_sf_in), s(checked_spin(s_in.twice())) {
    if (gamma_sf < 0) throw InvalidInput("SpinMediumParams: gamma_sf must be >= 0");
    if (s.twice() < 1) throw InvalidInput("SpinMediumParams: need s >= 1/2");
  }

  double gamma_total() const { return medium.gamma_el + gamma_sf; }
  double tau() const { return 1.0 / gamma_total(); }
  /// D0 with the total momentum relaxation time.
  double D0() const { return medium.v * medium.v * tau() / medium.dim; }
  double tau_sf() const { return 1.0 / gamma_sf; }
  /// Spin relaxation length sqrt(2 D0 tau_sf).
  double lambda_sf() const { return std::sqrt(2.0 * D0() * tau_sf()); }
  /// Rank-K spin relaxation rate gamma_K = gamma_sf K(K+1)/(2 s(s+1)).
  double gamma_K(int K) const {
    return gamma_sf * K * (K + 1) / (2.0 * s.casimir());
  }
  double tau_1() const { return 1.0 / gamma_K(1); }
};

/// Rank-K sector density n_q^(K)(t) = exp(-D0 q² t) exp(-gamma_K t) n0:
/// diffusive decay with the Matthiessen D0 times the spin-sector decay.
std::complex<double> sector_density(const SpinMediumParams& params, int K,
                                    double q, double t,
                                    std::complex<double> n0 = 1.0);

struct SectorTerm {
  int K;
  double gamma_K;
  double weight;  // contribution of rank K to p_up at t = 0
};

struct TransmissionResult {
  double L;
  double t;  // transmission time L²/(2 D0)
  double D0;
  double tau1;
  double p_up;
  double p_down;
  double pi;  // (p_up - p_down)/(p_up + p_down)
  std::vector<SectorTerm> per_sector;
};

/// Polarization surviving diffusive transmission through length L, starting
/// from the fully polarized state |s, +s>. The spin state is evolved through
/// the full multipole machinery for the transmission time t = L²/(2 D0);
/// p_up(t) = sum_K weight_K exp(-gamma_K t) with computed weights (the K=0
/// weight is the equilibrium value 1/(2s+1)).
TransmissionResult transmitted_polarization(const SpinMediumParams& params,
                                            double L);

/// Spin-flip superoperator assembled from the Born-averaged spin-spin
/// contraction sum_i S_i rho S_i (raw spin operators, explicit
/// normalization), which must reproduce lindbladian() with gamma_s ->
/// gamma_sf; equality to 1e-13 is asserted internally — this is the module's
/// consistency theorem.
SuperOp spinflip_superoperator(TwiceJ s, double gamma_sf);

struct SpinWalkResult {
  double t;
  double p_up;
  double p_down;
  double pi;
  double pi_stderr;  // batch standard error
};

/// Monte Carlo oracle for the diffusion x spin factorization: walkers carry a
/// density matrix, scatter at the total rate, and each spin-flip event
/// (thinned to rate gamma_sf) applies the single-event channel
/// rho -> sum_i Ŝ_i rho Ŝ_i. Reports the transmitted polarization at time t.
SpinWalkResult spin_walk_polarization(const SpinMediumParams& params, double t,
                                      std::int64_t n_walkers, std::uint64_t seed,
                                      int n_threads = 0);

}  // namespace spinflow

#endif
