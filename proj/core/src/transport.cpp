#include "spinflow/transport.hpp"

#include <algorithm>
#include <cmath>

#include "spinflow/detail/parallel.hpp"
#include "spinflow/rng.hpp"

namespace spinflow {

using std::complex;

AngularGrid AngularGrid::uniform_circle(int n) {
  if (n < 2) throw InvalidInput("AngularGrid: need at least 2 directions");
  AngularGrid g;
  g.dim = 2;
  g.directions.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double phi = 2.0 * M_PI * i / n;
    g.directions.emplace_back(std::cos(phi), std::sin(phi), 0.0);
  }
  g.weights = Eigen::VectorXd::Constant(n, 1.0 / n);
  return g;
}

AngularGrid AngularGrid::fibonacci_sphere(int n) {
  if (n < 2) throw InvalidInput("AngularGrid: need at least 2 directions");
  AngularGrid g;
  g.dim = 3;
  g.directions.reserve(n);
  const double golden_angle = M_PI * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / n;  // midpoint rule in cos(theta)
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * i;
    g.directions.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  g.weights = Eigen::VectorXd::Constant(n, 1.0 / n);
  return g;
}

AngularGrid AngularGrid::make(int dim, int n) {
  if (dim == 2) return uniform_circle(n == 0 ? 64 : n);
  if (dim == 3) return fibonacci_sphere(n == 0 ? 256 : n);
  throw InvalidInput("AngularGrid: dim must be 2 or 3");
}

complex<double> KineticState::mean() const {
  complex<double> acc = 0.0;
  for (int i = 0; i < grid.size(); ++i) acc += grid.weights(i) * f(i);
  return acc;
}

Eigen::Vector3cd KineticState::current(double v) const {
  Eigen::Vector3cd acc = Eigen::Vector3cd::Zero();
  for (int i = 0; i < grid.size(); ++i) {
    acc += grid.weights(i) * f(i) * grid.directions[i].cast<complex<double>>();
  }
  return v * acc;
}

namespace {

void check_state(const KineticState& state, const MediumParams& medium,
                 const char* where) {
  if (state.grid.dim != medium.dim) {
    throw InvalidInput(std::string(where) + ": grid/medium dimension mismatch");
  }
  if (state.f.size() != state.grid.size()) {
    throw InvalidInput(std::string(where) + ": f length != grid size");
  }
}

/// RHS of the kinetic mode equation: -i v (q·n) f - gamma (f - <f>).
Eigen::VectorXcd kinetic_rhs(const KineticState& state, const MediumParams& medium,
                             const Eigen::VectorXd& phase) {
  complex<double> mean = 0.0;
  for (int i = 0; i < state.grid.size(); ++i) {
    mean += state.grid.weights(i) * state.f(i);
  }
  Eigen::VectorXcd out(state.f.size());
  const complex<double> minus_i(0.0, -1.0);
  for (int i = 0; i < state.grid.size(); ++i) {
    out(i) = minus_i * phase(i) * state.f(i) -
             medium.gamma_el * (state.f(i) - mean);
  }
  return out;
}

Eigen::VectorXcd rk4_step(const KineticState& state, const MediumParams& medium,
                          const Eigen::VectorXd& phase, double dt) {
  KineticState tmp = state;
  const Eigen::VectorXcd k1 = kinetic_rhs(state, medium, phase);
  tmp.f = state.f + 0.5 * dt * k1;
  const Eigen::VectorXcd k2 = kinetic_rhs(tmp, medium, phase);
  tmp.f = state.f + 0.5 * dt * k2;
  const Eigen::VectorXcd k3 = kinetic_rhs(tmp, medium, phase);
  tmp.f = state.f + dt * k3;
  const Eigen::VectorXcd k4 = kinetic_rhs(tmp, medium, phase);
  return state.f + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Eigen::VectorXd ballistic_phase(const KineticState& state, const MediumParams& medium) {
  Eigen::VectorXd phase(state.grid.size());
  for (int i = 0; i < state.grid.size(); ++i) {
    phase(i) = medium.v * state.q.dot(state.grid.directions[i]);
  }
  return phase;
}

}  // namespace

KineticState isotropise_step(const KineticState& state,
                             const MediumParams& medium, double dt) {
  check_state(state, medium, "isotropise_step");
  if (state.q.norm() != 0.0) {
    throw InvalidInput("isotropise_step: requires q = 0");
  }
  if (!(medium.gamma_el * dt <= 0.1)) {
    throw InvalidInput("isotropise_step: step too large, need gamma_el*dt <= 0.1");
  }
  KineticState out = state;
  out.f = rk4_step(state, medium, Eigen::VectorXd::Zero(state.grid.size()), dt);
  return out;
}

FourierModeSeries fourier_mode_evolution(const KineticState& initial,
                                         const MediumParams& medium,
                                         double t_end) {
  check_state(initial, medium, "fourier_mode_evolution");
  if (!(t_end > 0)) throw InvalidInput("fourier_mode_evolution: t_end must be > 0");

  const double qnorm = initial.q.norm();
  FourierModeSeries series;
  series.q = initial.q;
  if (qnorm * medium.ell_el() > 0.2) {
    series.warning = "q ell_el = " + std::to_string(qnorm * medium.ell_el()) +
                     " outside the hydrodynamic regime (q ell_el <= 0.2); "
                     "diffusive fits are unreliable";
  }

  double dt = 0.05 * medium.tau_el();
  if (qnorm > 0) dt = std::min(dt, 0.05 / (qnorm * medium.v));
  const auto n_steps = static_cast<std::int64_t>(std::ceil(t_end / dt));
  dt = t_end / static_cast<double>(n_steps);

  const Eigen::VectorXd phase = ballistic_phase(initial, medium);
  KineticState state = initial;
  series.max_continuity_residual = 0.0;

  const complex<double> unit_i(0.0, 1.0);
  auto record = [&](double t) {
    const complex<double> n = state.mean();
    const Eigen::Vector3cd j = state.current(medium.v);
    // d/dt n evaluated from the RHS; the collision term drops out exactly.
    KineticState probe = state;
    const Eigen::VectorXcd rhs = kinetic_rhs(probe, medium, phase);
    complex<double> dn = 0.0;
    for (int i = 0; i < state.grid.size(); ++i) dn += state.grid.weights(i) * rhs(i);
    const complex<double> qdotj =
        state.q(0) * j(0) + state.q(1) * j(1) + state.q(2) * j(2);
    series.max_continuity_residual =
        std::max(series.max_continuity_residual, std::abs(dn + unit_i * qdotj));
    series.times.push_back(t);
    series.n_q.push_back(n);
    series.j_q.push_back(j);
  };

  record(0.0);
  for (std::int64_t step = 1; step <= n_steps; ++step) {
    state.f = rk4_step(state, medium, phase, dt);
    record(static_cast<double>(step) * dt);
  }
  return series;
}

DiffusionResult chapman_enskog_D(const MediumParams& medium) {
  return {medium.v * medium.v * medium.tau_el() / medium.dim,
          DiffusionMethod::chapman_enskog, 0.0};
}

DiffusionResult fit_fourier_decay(const FourierModeSeries& series,
                                  const MediumParams& medium) {
  const double qnorm = series.q.norm();
  if (qnorm == 0.0) {
    throw InvalidInput("fit_fourier_decay: q = 0 mode does not decay");
  }
  const double t_lo = 5.0 * medium.tau_el();
  const double t_hi = 50.0 * medium.tau_el();
  std::vector<double> ts, logn;
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    if (series.times[i] >= t_lo && series.times[i] <= t_hi) {
      ts.push_back(series.times[i]);
      logn.push_back(std::log(std::abs(series.n_q[i])));
    }
  }
  if (ts.size() < 8) {
    throw InvalidInput("fit_fourier_decay: series too short, need samples in "
                       "[5 tau_el, 50 tau_el]");
  }
  const auto fit = detail::linear_fit(ts, logn, ts.size());
  return {-fit.slope / (qnorm * qnorm), DiffusionMethod::fourier_decay, 0.0};
}

RandomWalkResult random_walk_D(const MediumParams& medium, std::int64_t n_walkers,
                               double t_end, std::uint64_t seed, int n_threads) {
  if (n_walkers < 1) throw InvalidInput("random_walk_D: need at least one walker");
  const double tau = medium.tau_el();
  if (!(t_end >= 20.0 * tau)) {
    throw InvalidInput("random_walk_D: insufficient range, need t_end >= 20 tau_el");
  }

  // Sample grid: log-spaced early points resolve the ballistic regime, a
  // uniform segment on [10 tau, t_end] feeds the diffusive fit.
  std::vector<double> times;
  constexpr int kEarly = 16, kFit = 48;
  for (int i = 0; i < kEarly; ++i) {
    times.push_back(0.01 * tau * std::pow(1000.0, i / double(kEarly)));
  }
  for (int i = 0; i < kFit; ++i) {
    times.push_back(10.0 * tau + (t_end - 10.0 * tau) * i / double(kFit - 1));
  }
  const std::size_t n_samples = times.size();

  // Fixed micro-batches make the reduction independent of the thread count.
  constexpr std::int64_t kBatch = 256;
  const std::int64_t n_batches = (n_walkers + kBatch - 1) / kBatch;
  std::vector<double> batch_sums(n_batches * n_samples, 0.0);
  std::vector<std::int64_t> batch_counts(n_batches, 0);

  detail::parallel_chunks(n_batches, n_threads, [&](std::int64_t b0, std::int64_t b1) {
    std::vector<double> r2(n_samples);
    for (std::int64_t b = b0; b < b1; ++b) {
      const std::int64_t w0 = b * kBatch;
      const std::int64_t w1 = std::min(n_walkers, w0 + kBatch);
      batch_counts[b] = w1 - w0;
      for (std::int64_t w = w0; w < w1; ++w) {
        Rng rng(seed, static_cast<std::uint64_t>(w));
        Eigen::Vector3d pos = Eigen::Vector3d::Zero();
        Eigen::Vector3d dir = rng.direction(medium.dim);
        double t_now = 0.0;
        double t_coll = rng.exponential(tau);
        for (std::size_t k = 0; k < n_samples; ++k) {
          while (t_coll <= times[k]) {
            pos += dir * medium.v * (t_coll - t_now);
            t_now = t_coll;
            dir = rng.direction(medium.dim);
            t_coll = t_now + rng.exponential(tau);
          }
          r2[k] = (pos + dir * medium.v * (times[k] - t_now)).squaredNorm();
        }
        for (std::size_t k = 0; k < n_samples; ++k) {
          batch_sums[b * n_samples + k] += r2[k];
        }
      }
    }
  });

  RandomWalkResult result;
  result.times = times;
  result.mean_r2.assign(n_samples, 0.0);
  for (std::int64_t b = 0; b < n_batches; ++b) {
    for (std::size_t k = 0; k < n_samples; ++k) {
      result.mean_r2[k] += batch_sums[b * n_samples + k];
    }
  }
  for (std::size_t k = 0; k < n_samples; ++k) {
    result.mean_r2[k] /= static_cast<double>(n_walkers);
  }

  // <r²> = r0² + 2 d D t on the uniform segment.
  const auto fit_D = [&](const double* sums, double count) {
    std::vector<double> ts, ys;
    for (std::size_t k = kEarly; k < n_samples; ++k) {
      ts.push_back(times[k]);
      ys.push_back(sums[k] / count);
    }
    const auto fit = detail::linear_fit(ts, ys, ts.size());
    return fit.slope / (2.0 * medium.dim);
  };

  std::vector<double> total(n_samples, 0.0);
  for (std::int64_t b = 0; b < n_batches; ++b)
    for (std::size_t k = 0; k < n_samples; ++k)
      total[k] += batch_sums[b * n_samples + k];
  const double d_hat = fit_D(total.data(), static_cast<double>(n_walkers));

  double stderr_D = 0.0;
  if (n_batches > 1) {
    double mean = 0.0, m2 = 0.0;
    std::vector<double> batch_d(n_batches);
    for (std::int64_t b = 0; b < n_batches; ++b) {
      batch_d[b] = fit_D(&batch_sums[b * n_samples],
                         static_cast<double>(batch_counts[b]));
      mean += batch_d[b];
    }
    mean /= static_cast<double>(n_batches);
    for (std::int64_t b = 0; b < n_batches; ++b) {
      m2 += (batch_d[b] - mean) * (batch_d[b] - mean);
    }
    stderr_D = std::sqrt(m2 / (n_batches - 1) / n_batches);
  }

  result.diffusion = {d_hat, DiffusionMethod::monte_carlo, stderr_D};
  return result;
}

}  // namespace spinflow
