#include "spinflow/spin_diffusion.hpp"

#include <cmath>

#include "spinflow/detail/parallel.hpp"
#include "spinflow/rng.hpp"

namespace spinflow {

using std::complex;

complex<double> sector_density(const SpinMediumParams& params, int K, double q,
                               double t, complex<double> n0) {
  if (K < 0 || K > params.s.twice()) {
    throw InvalidInput("sector_density: K out of range 0..2s");
  }
  if (t < 0) throw InvalidInput("sector_density: t must be >= 0");
  return std::exp(-params.D0() * q * q * t) * std::exp(-params.gamma_K(K) * t) * n0;
}

TransmissionResult transmitted_polarization(const SpinMediumParams& params,
                                            double L) {
  if (!(L > 0)) throw InvalidInput("transmitted_polarization: L must be > 0");
  if (!(params.gamma_sf > 0)) {
    throw InvalidInput("transmitted_polarization: gamma_sf must be > 0");
  }

  TransmissionResult out;
  out.L = L;
  out.D0 = params.D0();
  out.t = L * L / (2.0 * out.D0);
  out.tau1 = params.tau_1();

  const int d = params.s.dimension();
  Eigen::MatrixXcd rho0 = Eigen::MatrixXcd::Zero(d, d);
  rho0(0, 0) = 1.0;  // |s, +s><s, +s| in the descending-m basis

  const RelaxationModel model(params.s, params.gamma_sf);
  const SpinOperator rho_t = multipole_decay(model, {params.s, rho0}, out.t);
  out.p_up = rho_t.matrix(0, 0).real();
  out.p_down = rho_t.matrix(d - 1, d - 1).real();
  out.pi = (out.p_up - out.p_down) / (out.p_up + out.p_down);

  // Per-sector weights of p_up(t) = sum_K w_K exp(-gamma_K t), computed from
  // the multipole components of the initial state (only Q = 0 survives on
  // the diagonal).
  const TensorOpBasis basis(params.s);
  const MultipoleDecomposition dec = decompose({params.s, rho0}, basis);
  out.per_sector.reserve(basis.max_rank() + 1);
  for (int K = 0; K <= basis.max_rank(); ++K) {
    const complex<double> w =
        dec.components[basis.flat_index(K, 0)] * basis.op(K, 0)(0, 0);
    out.per_sector.push_back({K, params.gamma_K(K), w.real()});
  }
  return out;
}

SuperOp spinflip_superoperator(TwiceJ s_in, double gamma_sf) {
  const TwiceJ s = checked_spin(s_in.twice());
  if (s.twice() < 1) throw InvalidInput("spinflip_superoperator: need s >= 1/2");
  if (!(gamma_sf > 0)) {
    throw InvalidInput("spinflip_superoperator: gamma_sf must be > 0");
  }

  // Born-averaged spin-flip vertex: <sigma1| V rho |sigma4> =
  // sum_i S_i,(sigma1 sigma2) S_i,(sigma3 sigma4) rho_(sigma2 sigma3), i.e.
  // the sandwich map rho -> sum_i S_i rho S_i built from the raw spin
  // operators; the Lindbladian follows with the explicit normalization
  // gamma_sf/s(s+1) and the trace-conserving counterterm.
  const SpinTriple spin = spin_matrices(s);
  const int d = s.dimension();
  Eigen::MatrixXcd vertex = Eigen::MatrixXcd::Zero(d * d, d * d);
  for (int s1 = 0; s1 < d; ++s1)
    for (int s4 = 0; s4 < d; ++s4)
      for (int s2 = 0; s2 < d; ++s2)
        for (int s3 = 0; s3 < d; ++s3) {
          vertex(s1 * d + s4, s2 * d + s3) =
              spin.x.matrix(s1, s2) * spin.x.matrix(s3, s4) +
              spin.y.matrix(s1, s2) * spin.y.matrix(s3, s4) +
              spin.z.matrix(s1, s2) * spin.z.matrix(s3, s4);
        }

  Eigen::MatrixXcd lind =
      (gamma_sf / s.casimir()) * vertex -
      gamma_sf * Eigen::MatrixXcd::Identity(d * d, d * d);

  const SuperOp reference = lindbladian(RelaxationModel(s, gamma_sf));
  const double mismatch = (lind - reference.matrix).cwiseAbs().maxCoeff();
  if (mismatch > 1e-13 * gamma_sf) {
    throw NumericalError(
        "spinflip_superoperator: disagrees with the relaxation Lindbladian by " +
        std::to_string(mismatch));
  }
  return {s, std::move(lind)};
}

SpinWalkResult spin_walk_polarization(const SpinMediumParams& params, double t,
                                      std::int64_t n_walkers, std::uint64_t seed,
                                      int n_threads) {
  if (n_walkers < 1) throw InvalidInput("spin_walk_polarization: need walkers");
  if (!(t >= 0)) throw InvalidInput("spin_walk_polarization: t must be >= 0");
  if (!(params.gamma_sf > 0)) {
    throw InvalidInput("spin_walk_polarization: gamma_sf must be > 0");
  }

  const SpinTriple shat = normalized_spin(params.s);
  const int d = params.s.dimension();
  const double tau = params.tau();
  const double p_flip = params.gamma_sf * tau;

  constexpr std::int64_t kBatch = 256;
  const std::int64_t n_batches = (n_walkers + kBatch - 1) / kBatch;
  std::vector<double> batch_up(n_batches, 0.0), batch_down(n_batches, 0.0);
  std::vector<std::int64_t> batch_counts(n_batches, 0);

  detail::parallel_chunks(n_batches, n_threads, [&](std::int64_t b0, std::int64_t b1) {
    for (std::int64_t b = b0; b < b1; ++b) {
      const std::int64_t w0 = b * kBatch;
      const std::int64_t w1 = std::min(n_walkers, w0 + kBatch);
      batch_counts[b] = w1 - w0;
      for (std::int64_t w = w0; w < w1; ++w) {
        Rng rng(seed, static_cast<std::uint64_t>(w));
        Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
        rho(0, 0) = 1.0;
        double t_now = rng.exponential(tau);
        while (t_now <= t) {
          // Collision: momentum redirection is irrelevant for the spin
          // moments; thin to spin-flip events and apply the single-event
          // channel rho -> sum_i Ŝ_i rho Ŝ_i.
          if (rng.next_double() < p_flip) {
            rho = shat.x.matrix * rho * shat.x.matrix +
                  shat.y.matrix * rho * shat.y.matrix +
                  shat.z.matrix * rho * shat.z.matrix;
          }
          t_now += rng.exponential(tau);
        }
        batch_up[b] += rho(0, 0).real();
        batch_down[b] += rho(d - 1, d - 1).real();
      }
    }
  });

  double up = 0.0, down = 0.0;
  for (std::int64_t b = 0; b < n_batches; ++b) {
    up += batch_up[b];
    down += batch_down[b];
  }
  up /= static_cast<double>(n_walkers);
  down /= static_cast<double>(n_walkers);

  SpinWalkResult out;
  out.t = t;
  out.p_up = up;
  out.p_down = down;
  out.pi = (up - down) / (up + down);
  out.pi_stderr = 0.0;
  if (n_batches > 1) {
    double mean = 0.0, m2 = 0.0;
    std::vector<double> batch_pi(n_batches);
    for (std::int64_t b = 0; b < n_batches; ++b) {
      const double bu = batch_up[b] / batch_counts[b];
      const double bd = batch_down[b] / batch_counts[b];
      batch_pi[b] = (bu - bd) / (bu + bd);
      mean += batch_pi[b];
    }
    mean /= static_cast<double>(n_batches);
    for (std::int64_t b = 0; b < n_batches; ++b) {
      m2 += (batch_pi[b] - mean) * (batch_pi[b] - mean);
    }
    out.pi_stderr = std::sqrt(m2 / (n_batches - 1) / n_batches);
  }
  return out;
}

}  // namespace spinflow
