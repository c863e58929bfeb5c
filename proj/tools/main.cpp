// spinflow: spin relaxation spectra, quantum channels, kinetic transport,
// spin-polarized transmission and weak-localization corrections.
//
// Exit codes: 0 success, 2 invalid input/config, 3 numerical failure.

#include <cmath>
#include <complex>
#include <cstdlib>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spinflow/liouville.hpp"
#include "spinflow/spin_diffusion.hpp"
#include "spinflow/spin_relax.hpp"
#include "spinflow/transport.hpp"
#include "spinflow/weak_loc.hpp"
#include "output.hpp"

namespace {

using nlohmann::ordered_json;
using namespace spinflow;
using namespace spinflow_cli;

struct CommonOpts {
  std::string format = "json";
  std::string output = "-";
  bool dry_run = false;
};

void add_common(CLI::App* cmd, CommonOpts& common,
                const std::vector<std::string>& formats) {
  cmd->add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember(formats))
      ->capture_default_str();
  cmd->add_option("--output", common.output, "Output path ('-' = stdout)")
      ->capture_default_str();
  cmd->add_flag("--dry-run", common.dry_run,
                "Validate, print the resolved config and exit");
  cmd->set_config("--config", "", "Config file with key=value lines");
  cmd->allow_config_extras(CLI::config_extras_mode::error);
}

/// Worker cap from SPINFLOW_THREADS (0 or unset = auto).
int thread_cap() {
  const char* env = std::getenv("SPINFLOW_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == nullptr || *end != '\0' || v < 0) {
    throw InvalidInput("SPINFLOW_THREADS must be a non-negative integer");
  }
  return static_cast<int>(v);
}

ordered_json config_json(const ConfigEcho& echo) {
  ordered_json j = ordered_json::object();
  for (const auto& [key, value] : echo) j[key] = value;
  return j;
}

void emit_json(const CommonOpts& common, const ordered_json& payload) {
  Sink sink(common.output);
  sink.stream() << payload.dump(2) << "\n";
}

/// Prints the resolved config and reports whether execution should stop.
bool handle_dry_run(const CommonOpts& common, const std::string& command,
                    const ConfigEcho& echo) {
  if (!common.dry_run) return false;
  ordered_json j;
  j["command"] = command;
  j["config"] = config_json(echo);
  Sink sink(common.output);
  sink.stream() << j.dump(2) << "\n";
  return true;
}

ConfigEcho common_echo(const CommonOpts& common) {
  return {{"format", common.format}, {"output", common.output}};
}

// ---------------------------------------------------------------- relax ----

struct RelaxOpts {
  int twice_s = 1;
  double gamma_s = 0.0;
  double omega0 = 0.0;
  double tau_c = 0.0;
  double t_max = 0.0;
  int n_steps = 200;
  CommonOpts common;
};

RelaxationModel resolve_model(int twice_s, double gamma_s, double omega0,
                              double tau_c) {
  if (gamma_s > 0.0 && (omega0 > 0.0 || tau_c > 0.0)) {
    throw InvalidInput("give either gamma-s or the pair omega0 + tau-c");
  }
  if (gamma_s > 0.0) return RelaxationModel(TwiceJ(twice_s), gamma_s);
  if (omega0 > 0.0 && tau_c > 0.0) {
    return RelaxationModel::from_field_noise(TwiceJ(twice_s), omega0, tau_c);
  }
  throw InvalidInput("a relaxation rate is required: gamma-s, or omega0 + tau-c");
}

void run_relax(const RelaxOpts& opts) {
  const RelaxationModel model =
      resolve_model(opts.twice_s, opts.gamma_s, opts.omega0, opts.tau_c);
  const double t_max = opts.t_max > 0.0 ? opts.t_max : 5.0 * model.tau_1();

  ConfigEcho echo{{"command", "relax"},
                  {"twice_s", std::to_string(opts.twice_s)},
                  {"gamma_s", format_double(model.gamma_s)},
                  {"t_max", format_double(t_max)},
                  {"n_steps", std::to_string(opts.n_steps)}};
  for (auto& kv : common_echo(opts.common)) echo.push_back(kv);
  if (handle_dry_run(opts.common, "relax", echo)) return;

  const auto spectrum = exact_eigenvalues(model);
  const double residual = verify_spectrum(model);

  if (opts.common.format == "json") {
    ordered_json j;
    j["command"] = "relax";
    j["config"] = config_json(echo);
    j["lambda"] = ordered_json::array();
    for (const auto& e : spectrum) {
      j["lambda"].push_back(
          {{"K", e.K}, {"value", e.lambda}, {"degeneracy", e.degeneracy}});
    }
    j["verify_residual"] = residual;
    emit_json(opts.common, j);
  } else if (opts.common.format == "csv") {
    Sink sink(opts.common.output);
    CsvWriter csv(sink.stream(), echo);
    csv.header({"K", "lambda", "degeneracy"});
    for (const auto& e : spectrum) {
      csv.raw_row({std::to_string(e.K), format_double(e.lambda),
                   std::to_string(e.degeneracy)});
    }
  } else {
    std::vector<SvgSeries> series;
    for (const auto& e : spectrum) {
      SvgSeries s;
      s.label = "K = " + std::to_string(e.K);
      for (int i = 0; i <= opts.n_steps; ++i) {
        const double t = t_max * i / opts.n_steps;
        s.x.push_back(t);
        s.y.push_back(std::exp(e.lambda * t));
      }
      series.push_back(std::move(s));
    }
    Sink sink(opts.common.output);
    write_svg_plot(sink.stream(), echo, "multipole decay exp(lambda_K t)", "t",
                   "sector amplitude", series, false);
  }
}

// -------------------------------------------------------------- channel ----

struct ChannelOpts {
  int twice_s = 1;
  double gamma_s = 0.0;
  double omega0 = 0.0;
  double tau_c = 0.0;
  double t = 1.0;
  CommonOpts common;
};

ordered_json matrix_json(const Eigen::MatrixXcd& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back({m(i, j).real(), m(i, j).imag()});
    }
    rows.push_back(row);
  }
  return rows;
}

void run_channel(const ChannelOpts& opts) {
  const RelaxationModel model =
      resolve_model(opts.twice_s, opts.gamma_s, opts.omega0, opts.tau_c);
  if (opts.t < 0) throw InvalidInput("t must be >= 0 (semigroup)");

  ConfigEcho echo{{"command", "channel"},
                  {"twice_s", std::to_string(opts.twice_s)},
                  {"gamma_s", format_double(model.gamma_s)},
                  {"t", format_double(opts.t)}};
  for (auto& kv : common_echo(opts.common)) echo.push_back(kv);
  if (handle_dry_run(opts.common, "channel", echo)) return;

  const SuperOp propagator = exp_superop(lindbladian(model), opts.t);
  const ChoiReport choi = choi_matrix(propagator);

  if (opts.common.format == "json") {
    ordered_json j;
    j["command"] = "channel";
    j["config"] = config_json(echo);
    j["trace_preservation_residual"] = choi.trace_preservation_residual;
    j["choi_min_eigenvalue"] = choi.min_eigenvalue;
    if (model.s.twice() == 1) {
      const ChannelSpec spec = qubit_kraus(model, opts.t);
      j["p2"] = 1.0 - std::exp(-opts.t / model.tau_1());
      j["kraus"] = ordered_json::array();
      for (const auto& w : spec.kraus) j["kraus"].push_back(matrix_json(w));
      j["kraus_trace_residual"] = spec.cptp_report.trace_residual;
    }
    emit_json(opts.common, j);
  } else {  // csv: Choi spectrum
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
        0.5 * (choi.matrix + choi.matrix.adjoint()));
    Sink sink(opts.common.output);
    CsvWriter csv(sink.stream(), echo);
    csv.header({"index", "choi_eigenvalue"});
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      csv.raw_row({std::to_string(i), format_double(es.eigenvalues()(i))});
    }
  }
}

// -------------------------------------------------------------- diffuse ----

struct DiffuseOpts {
  int dim = 3;
  double v = 1.0;
  double gamma_el = 1.0;
  std::string mode = "ce";
  double q = 0.0;  // default 0.01 / ell_el
  double t_max = 0.0;
  int grid_n = 0;
  std::int64_t walkers = 100000;
  std::uint64_t seed = 1;
  bool log_y = false;
  CommonOpts common;
};

void run_diffuse(const DiffuseOpts& opts) {
  const MediumParams medium(opts.dim, opts.v, opts.gamma_el);
  const double q = opts.q > 0.0 ? opts.q : 0.01 / medium.ell_el();
  const double t_max =
      opts.t_max > 0.0 ? opts.t_max : 50.0 * medium.tau_el();

  ConfigEcho echo{{"command", "diffuse"},
                  {"d", std::to_string(opts.dim)},
                  {"v", format_double(opts.v)},
                  {"gamma_el", format_double(opts.gamma_el)},
                  {"mode", opts.mode}};
  if (opts.mode == "fourier") {
    echo.push_back({"q", format_double(q)});
    echo.push_back({"grid_n", std::to_string(opts.grid_n)});
  }
  if (opts.mode != "ce") echo.push_back({"t_max", format_double(t_max)});
  if (opts.mode == "mc") {
    echo.push_back({"walkers", std::to_string(opts.walkers)});
    echo.push_back({"seed", std::to_string(opts.seed)});
  }
  for (auto& kv : common_echo(opts.common)) echo.push_back(kv);
  if (handle_dry_run(opts.common, "diffuse", echo)) return;

  const DiffusionResult ce = chapman_enskog_D(medium);

  if (opts.mode == "ce") {
    if (opts.common.format == "svg") {
      throw InvalidInput("svg output is not available for mode ce");
    }
    if (opts.common.format == "json") {
      ordered_json j;
      j["command"] = "diffuse";
      j["config"] = config_json(echo);
      j["method"] = "chapman_enskog";
      j["D"] = ce.D;
      emit_json(opts.common, j);
    } else {
      Sink sink(opts.common.output);
      CsvWriter csv(sink.stream(), echo);
      csv.header({"method", "D"});
      csv.raw_row({"chapman_enskog", format_double(ce.D)});
    }
    return;
  }

  if (opts.mode == "fourier") {
    const AngularGrid grid = AngularGrid::make(opts.dim, opts.grid_n);
    Eigen::Vector3d qvec(0, 0, q);
    if (opts.dim == 2) qvec = Eigen::Vector3d(q, 0, 0);
    const KineticState initial{grid,
                               Eigen::VectorXcd::Constant(grid.size(), 1.0),
                               qvec};
    const FourierModeSeries series =
        fourier_mode_evolution(initial, medium, t_max);
    const DiffusionResult fit = fit_fourier_decay(series, medium);
    const Eigen::Vector3d qhat = qvec / q;

    if (opts.common.format == "json") {
      ordered_json j;
      j["command"] = "diffuse";
      j["config"] = config_json(echo);
      j["method"] = "fourier_decay";
      j["D"] = fit.D;
      j["D_chapman_enskog"] = ce.D;
      j["max_continuity_residual"] = series.max_continuity_residual;
      if (!series.warning.empty()) j["warning"] = series.warning;
      emit_json(opts.common, j);
    } else if (opts.common.format == "csv") {
      Sink sink(opts.common.output);
      CsvWriter csv(sink.stream(), echo);
      csv.header({"t", "re_n_q", "im_n_q", "re_j_q", "im_j_q"});
      for (std::size_t k = 0; k < series.times.size(); ++k) {
        const std::complex<double> jq =
            qhat(0) * series.j_q[k](0) + qhat(1) * series.j_q[k](1) +
            qhat(2) * series.j_q[k](2);
        csv.row({series.times[k], series.n_q[k].real(), series.n_q[k].imag(),
                 jq.real(), jq.imag()});
      }
    } else {
      SvgSeries s;
      s.label = "|n_q(t)|";
      for (std::size_t k = 0; k < series.times.size(); ++k) {
        s.x.push_back(series.times[k]);
        s.y.push_back(std::abs(series.n_q[k]));
      }
      Sink sink(opts.common.output);
      write_svg_plot(sink.stream(), echo, "Fourier mode decay", "t", "|n_q|",
                     {s}, opts.log_y);
    }
    return;
  }

  // mode == "mc"
  const RandomWalkResult walk =
      random_walk_D(medium, opts.walkers, t_max, opts.seed, thread_cap());
  if (opts.common.format == "json") {
    ordered_json j;
    j["command"] = "diffuse";
    j["config"] = config_json(echo);
    j["method"] = "monte_carlo";
    j["D"] = walk.diffusion.D;
    j["stderr"] = walk.diffusion.uncertainty;
    j["D_chapman_enskog"] = ce.D;
    emit_json(opts.common, j);
  } else if (opts.common.format == "csv") {
    Sink sink(opts.common.output);
    CsvWriter csv(sink.stream(), echo);
    csv.header({"t", "mean_r2"});
    for (std::size_t k = 0; k < walk.times.size(); ++k) {
      csv.row({walk.times[k], walk.mean_r2[k]});
    }
  } else {
    SvgSeries s;
    s.label = "<r^2>(t)";
    s.x = walk.times;
    s.y = walk.mean_r2;
    Sink sink(opts.common.output);
    write_svg_plot(sink.stream(), echo, "random-walk mean square displacement",
                   "t", "<r^2>", {s}, opts.log_y);
  }
}

// ------------------------------------------------------------- transmit ----

struct TransmitOpts {
  int twice_s = 1;
  double gamma_el = 10.0;
  double gamma_sf = 0.1;
  double v = 1.0;
  int dim = 3;
  double L = 1.0;
  bool with_mc = false;
  std::int64_t walkers = 100000;
  std::uint64_t seed = 1;
  CommonOpts common;
};

void run_transmit(const TransmitOpts& opts) {
  const SpinMediumParams params(MediumParams(opts.dim, opts.v, opts.gamma_el),
                                opts.gamma_sf, TwiceJ(opts.twice_s));

  ConfigEcho echo{{"command", "transmit"},
                  {"twice_s", std::to_string(opts.twice_s)},
                  {"gamma_el", format_double(opts.gamma_el)},
                  {"gamma_sf", format_double(opts.gamma_sf)},
                  {"v", format_double(opts.v)},
                  {"d", std::to_string(opts.dim)},
                  {"L", format_double(opts.L)}};
  if (opts.with_mc) {
    echo.push_back({"walkers", std::to_string(opts.walkers)});
    echo.push_back({"seed", std::to_string(opts.seed)});
  }
  for (auto& kv : common_echo(opts.common)) echo.push_back(kv);
  if (handle_dry_run(opts.common, "transmit", echo)) return;

  const TransmissionResult r = transmitted_polarization(params, opts.L);

  if (opts.common.format == "json") {
    ordered_json j;
    j["command"] = "transmit";
    j["config"] = config_json(echo);
    j["L"] = r.L;
    j["t"] = r.t;
    j["D0"] = r.D0;
    j["tau1"] = r.tau1;
    j["p_up"] = r.p_up;
    j["p_down"] = r.p_down;
    j["pi"] = r.pi;
    j["per_sector"] = ordered_json::array();
    for (const auto& s : r.per_sector) {
      j["per_sector"].push_back(
          {{"K", s.K}, {"gamma_K", s.gamma_K}, {"weight", s.weight}});
    }
    if (opts.with_mc) {
      const SpinWalkResult mc = spin_walk_polarization(
          params, r.t, opts.walkers, opts.seed, thread_cap());
      j["mc"] = {{"pi", mc.pi},
                 {"pi_stderr", mc.pi_stderr},
                 {"p_up", mc.p_up},
                 {"p_down", mc.p_down}};
    }
    emit_json(opts.common, j);
  } else if (opts.common.format == "csv") {
    ConfigEcho full = echo;
    full.push_back({"t", format_double(r.t)});
    full.push_back({"D0", format_double(r.D0)});
    full.push_back({"tau1", format_double(r.tau1)});
    full.push_back({"p_up", format_double(r.p_up)});
    full.push_back({"p_down", format_double(r.p_down)});
    full.push_back({"pi", format_double(r.pi)});
    Sink sink(opts.common.output);
    CsvWriter csv(sink.stream(), full);
    csv.header({"K", "gamma_K", "weight"});
    for (const auto& s : r.per_sector) {
      csv.raw_row({std::to_string(s.K), format_double(s.gamma_K),
                   format_double(s.weight)});
    }
  } else {
    SvgSeries s;
    s.label = "pi(L)";
    for (int i = 1; i <= 64; ++i) {
      const double L = opts.L * i / 64.0;
      const TransmissionResult point = transmitted_polarization(params, L);
      s.x.push_back(L);
      s.y.push_back(point.pi);
    }
    Sink sink(opts.common.output);
    write_svg_plot(sink.stream(), echo, "transmitted polarization", "L", "pi",
                   {s}, false);
  }
}

// ------------------------------------------------------------------- wl ----

struct WlOpts {
  int dim = 3;
  int twice_s = 0;
  double D0 = 1.0;
  double nu = 1.0;
  double ell = 0.01;
  double L_phi = kInfiniteTime;
  double L_sys = kInfiniteTime;
  double tau_sf = kInfiniteTime;
  std::string sweep;
  double sweep_from = 0.0;
  double sweep_to = 0.0;
  int sweep_points = 25;
  CommonOpts common;
};

WLParams wl_params(const WlOpts& opts) {
  WLParams p;
  p.dim = opts.dim;
  p.D0 = opts.D0;
  p.dos_nu = opts.nu;
  p.ell_el = opts.ell;
  p.L_phi = opts.L_phi;
  p.L_sys = opts.L_sys;
  p.tau_sf = opts.tau_sf;
  p.twice_s = opts.twice_s;
  return p;
}

ordered_json wl_result_json(const WLResult& r) {
  ordered_json j;
  j["per_channel"] = ordered_json::array();
  for (const auto& c : r.per_channel) {
    ordered_json ch;
    ch["K"] = c.K;
    ch["weight"] = c.weight;
    if (std::isfinite(c.tau_c)) {
      ch["tau_c"] = c.tau_c;
    } else {
      ch["tau_c"] = "inf";
    }
    ch["contribution"] = c.contribution;
    j["per_channel"].push_back(ch);
  }
  j["delta_D_over_D0"] = r.delta_D_over_D0;
  return j;
}

void run_wl(const WlOpts& opts) {
  ConfigEcho echo{{"command", "wl"},
                  {"d", std::to_string(opts.dim)},
                  {"twice_s", std::to_string(opts.twice_s)},
                  {"D0", format_double(opts.D0)},
                  {"nu", format_double(opts.nu)},
                  {"ell", format_double(opts.ell)},
                  {"L_phi", format_double(opts.L_phi)},
                  {"L_sys", format_double(opts.L_sys)},
                  {"tau_sf", format_double(opts.tau_sf)}};
  if (!opts.sweep.empty()) {
    echo.push_back({"sweep", opts.sweep});
    echo.push_back({"sweep_from", format_double(opts.sweep_from)});
    echo.push_back({"sweep_to", format_double(opts.sweep_to)});
    echo.push_back({"sweep_points", std::to_string(opts.sweep_points)});
  }
  for (auto& kv : common_echo(opts.common)) echo.push_back(kv);

  if (opts.common.format == "svg") {
    throw InvalidInput("svg output is not available for wl");
  }

  if (opts.sweep.empty()) {
    const WLParams params = wl_params(opts);
    params.validate();
    if (handle_dry_run(opts.common, "wl", echo)) return;
    const WLResult r = wl_correction(params);
    if (opts.common.format == "json") {
      ordered_json j;
      j["command"] = "wl";
      j["config"] = config_json(echo);
      j.update(wl_result_json(r));
      emit_json(opts.common, j);
    } else {
      ConfigEcho full = echo;
      full.push_back({"delta_D_over_D0", format_double(r.delta_D_over_D0)});
      Sink sink(opts.common.output);
      CsvWriter csv(sink.stream(), full);
      csv.header({"K", "weight", "tau_c", "contribution"});
      for (const auto& c : r.per_channel) {
        csv.raw_row({std::to_string(c.K), format_double(c.weight),
                     format_double(c.tau_c), format_double(c.contribution)});
      }
    }
    return;
  }

  // Sweep mode: log-spaced values of one parameter.
  if (!(opts.sweep_from > 0) || !(opts.sweep_to > opts.sweep_from) ||
      opts.sweep_points < 2) {
    throw InvalidInput("sweep needs 0 < sweep-from < sweep-to and >= 2 points");
  }
  if (handle_dry_run(opts.common, "wl", echo)) return;

  std::vector<double> values;
  for (int i = 0; i < opts.sweep_points; ++i) {
    const double f = static_cast<double>(i) / (opts.sweep_points - 1);
    values.push_back(opts.sweep_from *
                     std::pow(opts.sweep_to / opts.sweep_from, f));
  }

  std::vector<WLResult> results;
  for (double value : values) {
    WlOpts point = opts;
    if (opts.sweep == "L-phi") {
      point.L_phi = value;
    } else if (opts.sweep == "tau-sf") {
      point.tau_sf = value;
    } else {
      point.ell = value;
    }
    const WLParams params = wl_params(point);
    params.validate();
    results.push_back(wl_correction(params));
  }

  if (opts.common.format == "json") {
    ordered_json j;
    j["command"] = "wl";
    j["config"] = config_json(echo);
    j["sweep"] = ordered_json::array();
    for (std::size_t i = 0; i < values.size(); ++i) {
      ordered_json point;
      point[opts.sweep] = values[i];
      point.update(wl_result_json(results[i]));
      j["sweep"].push_back(point);
    }
    emit_json(opts.common, j);
  } else {
    Sink sink(opts.common.output);
    CsvWriter csv(sink.stream(), echo);
    std::vector<std::string> header{opts.sweep, "delta_D_over_D0"};
    for (const auto& c : results.front().per_channel) {
      header.push_back("contribution_K" + std::to_string(c.K));
    }
    csv.header(header);
    for (std::size_t i = 0; i < values.size(); ++i) {
      std::vector<std::string> row{format_double(values[i]),
                                   format_double(results[i].delta_D_over_D0)};
      for (const auto& c : results[i].per_channel) {
        row.push_back(format_double(c.contribution));
      }
      csv.raw_row(row);
    }
  }
}

void report_error(const char* kind, const std::string& message) {
  ordered_json j;
  j["error"] = kind;
  j["message"] = message;
  std::cerr << j.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spin relaxation and diffusive spin transport toolkit"};
  app.require_subcommand(1);

  RelaxOpts relax;
  CLI::App* relax_cmd = app.add_subcommand(
      "relax", "Relaxation spectrum lambda_K of the isotropic Lindbladian");
  relax_cmd->add_option("--twice-s", relax.twice_s, "2s (1 = spin 1/2)")
      ->required();
  relax_cmd->add_option("--gamma-s", relax.gamma_s, "Spin relaxation rate");
  relax_cmd->add_option("--omega0", relax.omega0, "Effective Larmor frequency");
  relax_cmd->add_option("--tau-c", relax.tau_c, "Field correlation time");
  relax_cmd->add_option("--t-max", relax.t_max, "Plot horizon (svg)");
  relax_cmd->add_option("--n-steps", relax.n_steps, "Plot samples (svg)")
      ->check(CLI::PositiveNumber);
  add_common(relax_cmd, relax.common, {"json", "csv", "svg"});

  ChannelOpts channel;
  CLI::App* channel_cmd = app.add_subcommand(
      "channel", "Finite-time quantum channel exp(L t) and its CPTP report");
  channel_cmd->add_option("--twice-s", channel.twice_s, "2s")->required();
  channel_cmd->add_option("--gamma-s", channel.gamma_s, "Spin relaxation rate");
  channel_cmd->add_option("--omega0", channel.omega0, "Effective Larmor frequency");
  channel_cmd->add_option("--tau-c", channel.tau_c, "Field correlation time");
  channel_cmd->add_option("--t", channel.t, "Evolution time")->required();
  add_common(channel_cmd, channel.common, {"json", "csv"});

  DiffuseOpts diffuse;
  CLI::App* diffuse_cmd = app.add_subcommand(
      "diffuse", "Diffusion constant: Chapman-Enskog, Fourier decay or Monte Carlo");
  diffuse_cmd->add_option("--d", diffuse.dim, "Dimension (2 or 3)")->required();
  diffuse_cmd->add_option("--v", diffuse.v, "Particle speed")->required();
  diffuse_cmd->add_option("--gamma-el", diffuse.gamma_el, "Elastic rate")
      ->required();
  diffuse_cmd->add_option("--mode", diffuse.mode, "ce | fourier | mc")
      ->check(CLI::IsMember({"ce", "fourier", "mc"}))
      ->capture_default_str();
  diffuse_cmd->add_option("--q", diffuse.q, "Fourier wavenumber (fourier mode)");
  diffuse_cmd->add_option("--t-max", diffuse.t_max, "Integration horizon");
  diffuse_cmd->add_option("--grid-n", diffuse.grid_n, "Angular grid size");
  diffuse_cmd->add_option("--walkers", diffuse.walkers, "Monte Carlo walkers")
      ->check(CLI::PositiveNumber);
  diffuse_cmd->add_option("--seed", diffuse.seed, "Monte Carlo seed");
  diffuse_cmd->add_flag("--log-y", diffuse.log_y, "Log ordinate (svg)");
  add_common(diffuse_cmd, diffuse.common, {"json", "csv", "svg"});

  TransmitOpts transmit;
  CLI::App* transmit_cmd = app.add_subcommand(
      "transmit", "Spin polarization transmitted through a diffusive sample");
  transmit_cmd->add_option("--twice-s", transmit.twice_s, "2s")->required();
  transmit_cmd->add_option("--gamma-el", transmit.gamma_el, "Elastic rate")
      ->required();
  transmit_cmd->add_option("--gamma-sf", transmit.gamma_sf, "Spin-flip rate")
      ->required();
  transmit_cmd->add_option("--v", transmit.v, "Particle speed")->required();
  transmit_cmd->add_option("--d", transmit.dim, "Dimension (2 or 3)")->required();
  transmit_cmd->add_option("--L", transmit.L, "Sample length")->required();
  transmit_cmd->add_flag("--mc", transmit.with_mc,
                         "Cross-check with the Monte Carlo spin walker");
  transmit_cmd->add_option("--walkers", transmit.walkers, "Monte Carlo walkers")
      ->check(CLI::PositiveNumber);
  transmit_cmd->add_option("--seed", transmit.seed, "Monte Carlo seed");
  add_common(transmit_cmd, transmit.common, {"json", "csv", "svg"});

  WlOpts wl;
  CLI::App* wl_cmd = app.add_subcommand(
      "wl", "Weak-localization correction with spin-flip dephasing");
  wl_cmd->add_option("--d", wl.dim, "Dimension (1, 2 or 3)")->required();
  wl_cmd->add_option("--twice-s", wl.twice_s, "2s (0 = spin-less)")
      ->capture_default_str();
  wl_cmd->add_option("--D0", wl.D0, "Classical diffusion constant")->required();
  wl_cmd->add_option("--nu", wl.nu, "Density of states")->capture_default_str();
  wl_cmd->add_option("--ell", wl.ell, "Elastic mean free path (UV cutoff)")
      ->required();
  wl_cmd->add_option("--L-phi", wl.L_phi, "Phase coherence length");
  wl_cmd->add_option("--L-sys", wl.L_sys, "System size");
  wl_cmd->add_option("--tau-sf", wl.tau_sf, "Spin-flip time");
  wl_cmd->add_option("--sweep", wl.sweep, "Sweep parameter")
      ->check(CLI::IsMember({"L-phi", "tau-sf", "ell"}));
  wl_cmd->add_option("--sweep-from", wl.sweep_from, "Sweep start");
  wl_cmd->add_option("--sweep-to", wl.sweep_to, "Sweep end");
  wl_cmd->add_option("--sweep-points", wl.sweep_points, "Sweep points")
      ->capture_default_str();
  add_common(wl_cmd, wl.common, {"json", "csv"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("validation", e.what());
    return 2;
  }

  try {
    if (relax_cmd->parsed()) run_relax(relax);
    if (channel_cmd->parsed()) run_channel(channel);
    if (diffuse_cmd->parsed()) run_diffuse(diffuse);
    if (transmit_cmd->parsed()) run_transmit(transmit);
    if (wl_cmd->parsed()) run_wl(wl);
  } catch (const InvalidInput& e) {
    report_error("validation", e.what());
    return 2;
  } catch (const NumericalError& e) {
    report_error("numerical", e.what());
    return 3;
  } catch (const std::exception& e) {
    report_error("numerical", e.what());
    return 3;
  }
  return 0;
}
