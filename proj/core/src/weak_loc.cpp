#include "spinflow/weak_loc.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace spinflow {

namespace {

bool finite(double x) { return std::isfinite(x); }

/// Angular prefactor of the isotropic measure d^dq/(2pi)^d = c_d q^(d-1) dq.
double angular_prefactor(int dim) {
  switch (dim) {
    case 1: return 1.0 / M_PI;           // two half-lines
    case 2: return 1.0 / (2.0 * M_PI);
    default: return 1.0 / (2.0 * M_PI * M_PI);
  }
}

/// x - atan(x) without cancellation for small x.
double x_minus_atan(double x) {
  if (std::abs(x) < 0.1) {
    const double x2 = x * x;
    return x * x2 *
           (1.0 / 3.0 + x2 * (-1.0 / 5.0 + x2 * (1.0 / 7.0 + x2 * (-1.0 / 9.0 + x2 / 11.0))));
  }
  return x - std::atan(x);
}

/// Closed form of int_{qmin}^{qmax} c_d q^(d-1) / (D q² + m) dq, m >= 0.
double cooperon_integral_closed(int dim, double D, double m, double q_min,
                                double q_max) {
  const double c = angular_prefactor(dim);
  switch (dim) {
    case 1: {
      if (m == 0.0) return c / D * (1.0 / q_min - 1.0 / q_max);
      const double kappa = std::sqrt(m / D);  // inverse dephasing length
      return c / std::sqrt(D * m) *
             (std::atan(q_max / kappa) - std::atan(q_min / kappa));
    }
    case 2:
      return c / (2.0 * D) *
             std::log1p(D * (q_max * q_max - q_min * q_min) /
                        (D * q_min * q_min + m));
    default: {
      if (m == 0.0) return c / D * (q_max - q_min);
      const double kappa = std::sqrt(m / D);
      return c / D * kappa *
             (x_minus_atan(q_max / kappa) - x_minus_atan(q_min / kappa));
    }
  }
}

double cooperon_integral_quadrature(int dim, double D, double m, double q_min,
                                    double q_max) {
  const double c = angular_prefactor(dim);
  auto integrand = [&](double q) {
    return c * std::pow(q, dim - 1) / (D * q * q + m);
  };
  auto integrate = [&](double a, double b) {
    if (!(b > a)) return 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        integrand, a, b, 20, 1e-11);
  };
  // Split at the dephasing knee kappa so the adaptive rule resolves narrow
  // Lorentzian peaks sitting in a long integration interval.
  const double kappa = m > 0.0 ? std::sqrt(m / D) : 0.0;
  if (kappa > q_min && kappa < q_max) {
    return integrate(q_min, kappa) + integrate(kappa, q_max);
  }
  return integrate(q_min, q_max);
}

}  // namespace

void WLParams::validate() const {
  if (dim < 1 || dim > 3) throw InvalidInput("WLParams: dim must be 1, 2 or 3");
  if (!(D0 > 0)) throw InvalidInput("WLParams: D0 must be > 0");
  if (!(dos_nu > 0)) throw InvalidInput("WLParams: dos_nu must be > 0");
  if (!(ell_el > 0)) throw InvalidInput("WLParams: ell_el must be > 0");
  if (!(L_phi > 0) || !(L_sys > 0) || !(tau_sf > 0)) {
    throw InvalidInput("WLParams: lengths and times must be > 0");
  }
  if (finite(L_phi) && ell_el >= L_phi) {
    throw InvalidInput("WLParams: need ell_el < L_phi");
  }
  if (finite(L_sys) && ell_el >= L_sys) {
    throw InvalidInput("WLParams: need ell_el < L_sys");
  }
  checked_spin(twice_s);
}

std::vector<double> channel_weights(TwiceJ s) {
  const int ts = checked_spin(s.twice()).twice();
  std::vector<double> w;
  w.reserve(ts + 1);
  for (int K = 0; K <= ts; ++K) {
    const double sign = (ts + K) % 2 == 0 ? 1.0 : -1.0;
    w.push_back(sign * (2.0 * K + 1.0) / (ts + 1.0));
  }
  return w;
}

std::vector<double> coherence_times(TwiceJ s, double tau_sf) {
  const int ts = checked_spin(s.twice()).twice();
  if (!(tau_sf > 0)) throw InvalidInput("coherence_times: tau_sf must be > 0");
  std::vector<double> tc;
  tc.reserve(ts + 1);
  for (int K = 0; K <= ts; ++K) {
    // s = 0: no spin structure, a single channel with no spin-flip dephasing.
    if (!finite(tau_sf) || ts == 0) {
      tc.push_back(kInfiniteTime);
      continue;
    }
    // 1/tau_c = (2/tau_sf)(1 - K(K+1)/(4 s(s+1))); 4 s(s+1) = ts(ts+2), so
    // the bracket is the exact integer ratio (ts(ts+2) - K(K+1))/(ts(ts+2)).
    const int denom4s = ts * (ts + 2);
    tc.push_back(tau_sf * denom4s / (2.0 * (denom4s - K * (K + 1))));
  }
  return tc;
}

WLResult wl_correction(const WLParams& params) {
  params.validate();
  const TwiceJ s(params.twice_s);
  const std::vector<double> weights = channel_weights(s);
  const std::vector<double> tau_c = coherence_times(s, params.tau_sf);

  const double q_max = 1.0 / params.ell_el;
  const double rate_phi =
      finite(params.L_phi) ? params.D0 / (params.L_phi * params.L_phi) : 0.0;

  WLResult result;
  result.delta_D_over_D0 = 0.0;
  result.quadrature_total = 0.0;

  for (std::size_t K = 0; K < weights.size(); ++K) {
    const double rate_c = finite(tau_c[K]) ? 1.0 / tau_c[K] : 0.0;
    const double m = rate_c + rate_phi;

    double q_min = 0.0;
    if (m == 0.0 && params.dim <= 2) {
      if (!finite(params.L_sys)) {
        throw InvalidInput(
            "wl_correction: the q-integral diverges for small q in d = " +
            std::to_string(params.dim) + " for channel K = " + std::to_string(K) +
            "; provide a phase-coherence length L_phi, a spin-flip time "
            "tau_sf, or a system size L_sys as infrared cutoff");
      }
      q_min = 1.0 / params.L_sys;
    }

    const double prefactor = -weights[K] / (M_PI * params.dos_nu);
    const double closed =
        prefactor * cooperon_integral_closed(params.dim, params.D0, m, q_min, q_max);
    const double quad =
        prefactor * cooperon_integral_quadrature(params.dim, params.D0, m, q_min, q_max);

    const double scale = std::max(std::abs(closed), std::abs(quad));
    if (scale > 0 && std::abs(closed - quad) > 1e-8 * scale) {
      throw NumericalError(
          "wl_correction: closed form and quadrature disagree for K = " +
          std::to_string(K) + " (" + std::to_string(closed) + " vs " +
          std::to_string(quad) + ")");
    }

    result.per_channel.push_back(
        {static_cast<int>(K), weights[K], tau_c[K], closed});
    result.delta_D_over_D0 += closed;
    result.quadrature_total += quad;
  }
  return result;
}

}  // namespace spinflow
