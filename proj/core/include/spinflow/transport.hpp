#ifndef SPINFLOW_TRANSPORT_HPP
#define SPINFLOW_TRANSPORT_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spinflow/errors.hpp"

namespace spinflow {

/// Disordered medium for spin-less kinetic transport: dimension, particle
/// speed and elastic scattering rate. The rate is the primitive; the
/// microscopic triple (density of states, impurity density, potential
/// strength) reduces to it via gamma_el = 2 pi nu n v0².
struct MediumParams {
  int dim;          // 2 or 3 (the kinetic solver assumes isotropy averages)
  double v;         // particle speed
  double gamma_el;  // elastic scattering rate

  MediumParams(int dim_in, double v_in, double gamma)
      : dim(dim_in), v(v_in), gamma_el(gamma) {
    if (dim != 2 && dim != 3) throw InvalidInput("MediumParams: dim must be 2 or 3");
    if (!(v > 0)) throw InvalidInput("MediumParams: v must be > 0");
    if (!(gamma_el > 0)) throw InvalidInput("MediumParams: gamma_el must be > 0");
  }

  static MediumParams from_microscopic(int dim, double v, double dos_nu,
                                       double impurity_density, double v0) {
    return MediumParams(dim, v, 2.0 * M_PI * dos_nu * impurity_density * v0 * v0);
  }

  double tau_el() const { return 1.0 / gamma_el; }
  double ell_el() const { return v / gamma_el; }
};

/// Directions with quadrature weights summing to 1, so that <f> = w·f is the
/// normalised angular average. d=2: uniform points on the circle; d=3:
/// spherical Fibonacci points with equal weights (the collision operator is
/// a rank-1 projector onto <f>, so grid quality only enters the ballistic
/// phase term).
struct AngularGrid {
  int dim;
  std::vector<Eigen::Vector3d> directions;
  Eigen::VectorXd weights;

  int size() const { return static_cast<int>(directions.size()); }

  static AngularGrid uniform_circle(int n);
  static AngularGrid fibonacci_sphere(int n);
  /// Default resolution: 64 (d=2) / 256 (d=3) when n == 0.
  static AngularGrid make(int dim, int n = 0);
};

/// Angular distribution at fixed energy, tagged with a spatial Fourier
/// vector q.
struct KineticState {
  AngularGrid grid;
  Eigen::VectorXcd f;
  Eigen::Vector3d q;

  std::complex<double> mean() const;      // <f>
  Eigen::Vector3cd current(double v) const;  // v <n f>
};

/// One explicit RK4 step of the isotropisation equation
/// d/dt f = -gamma_el (f - <f>) at q = 0. Requires gamma_el*dt <= 0.1.
KineticState isotropise_step(const KineticState& state,
                             const MediumParams& medium, double dt);

/// Time series of the density and current moments of a Fourier mode.
struct FourierModeSeries {
  Eigen::Vector3d q;
  std::vector<double> times;
  std::vector<std::complex<double>> n_q;
  std::vector<Eigen::Vector3cd> j_q;
  double max_continuity_residual;  // max |d_t n_q + i q·j_q| over samples
  std::string warning;             // non-empty when q ell_el > 0.2
};

/// Integrates d/dt f = -i v (q·n) f - gamma_el (f - <f>) with RK4,
/// dt = min(0.05 tau_el, 0.05/(q v)), recording every step.
FourierModeSeries fourier_mode_evolution(const KineticState& initial,
                                         const MediumParams& medium,
                                         double t_end);

enum class DiffusionMethod { chapman_enskog, fourier_decay, monte_carlo };

struct DiffusionResult {
  double D;
  DiffusionMethod method;
  double uncertainty;  // standard error for Monte Carlo, 0 otherwise
};

/// Boltzmann diffusion constant for isotropic point scatterers,
/// D0 = v² tau_el / d = v ell_el / d.
DiffusionResult chapman_enskog_D(const MediumParams& medium);

/// Extracts D from the asymptotic decay n_q(t) ~ exp(-D q² t): linear
/// regression of log|n_q| on t in [5 tau_el, 50 tau_el] (clipped to the
/// series range) after discarding transients.
DiffusionResult fit_fourier_decay(const FourierModeSeries& series,
                                  const MediumParams& medium);

struct RandomWalkResult {
  DiffusionResult diffusion;
  std::vector<double> times;
  std::vector<double> mean_r2;
};

/// Monte Carlo oracle: ballistic flights of exponentially distributed length
/// (mean ell_el) with isotropic redirection; fits <r²> = r0² + 2 d D t on
/// t in [10 tau_el, t_end]. Requires t_end >= 20 tau_el. Walkers use
/// per-index RNG streams; results are bitwise reproducible for any thread
/// count. n_walkers >= 1e4 is needed for the 2% default tolerance.
RandomWalkResult random_walk_D(const MediumParams& medium, std::int64_t n_walkers,
                               double t_end, std::uint64_t seed,
                               int n_threads = 0);

}  // namespace spinflow

#endif
