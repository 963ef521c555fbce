#include "fluxatom/dispatch.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "fluxatom/corpus.hpp"
#include "fluxatom/jump.hpp"
#include "fluxatom/version.hpp"

namespace fluxatom {

namespace {

constexpr std::size_t kMaxRows = 5000;

std::vector<std::size_t> row_picks(std::size_t n) {
  std::vector<std::size_t> idx;
  if (n == 0) return idx;
  const std::size_t stride = std::max<std::size_t>(1, (n + kMaxRows - 1) / kMaxRows);
  for (std::size_t i = 0; i < n; i += stride) idx.push_back(i);
  if (idx.back() != n - 1) idx.push_back(n - 1);
  return idx;
}

const HPModel& need_generic(const RunConfig& cfg, const std::string& command) {
  if (cfg.is_spherical) fail(Errc::SchemaError, command + " needs model.generic");
  return cfg.generic;
}

const SphericalModel& need_spherical(const RunConfig& cfg, const std::string& command) {
  if (!cfg.is_spherical) fail(Errc::SchemaError, command + " needs model.spherical");
  return cfg.spherical;
}

double horizon(const RunConfig& cfg, double per_decay) {
  if (cfg.run.t_end > 0.0) return cfg.run.t_end;
  return per_decay / cfg.generic.alpha.squaredNorm();
}

CommandResult run_steady(const RunConfig& cfg) {
  ResultTable table({"u_inf", "v_inf_re", "v_inf_im", "rho_ee", "rho_eg_re", "rho_eg_im", "rho_gg"},
                    {"1", "1", "1", "1", "1", "1", "1"});
  if (!cfg.is_spherical) {
    const GSystem gs = g_system(cfg.generic, cfg.drive);
    const SteadyState st = steady_state(gs);
    table.add_row({st.u_inf, st.v_inf.real(), st.v_inf.imag(), st.rho_eq(0, 0).real(),
                   st.rho_eq(0, 1).real(), st.rho_eq(0, 1).imag(), st.rho_eq(1, 1).real()});
    table.set_summary("alpha_norm2", gs.alpha_norm2);
    table.set_summary("lambda_norm2", gs.lambda_norm2);
    table.set_summary("kappa2", gs.kappa2);
    table.set_summary("mu2", gs.mu2);
    table.set_summary("Gamma2", gs.Gamma2);
    table.set_summary("delta_omega", gs.delta_omega);
  } else {
    if (cfg.has_scan) fail(Errc::SchemaError, "steady needs drive.omega, not drive.omega_scan");
    const auto [u, v] = steady_state_spherical(cfg.spherical);
    BlochState st;
    st.u = u;
    st.v = v;
    const Mat2 rho = st.rho();
    table.add_row({u, v.real(), v.imag(), rho(0, 0).real(), rho(0, 1).real(), rho(0, 1).imag(),
                   rho(1, 1).real()});
    const SphericalScalars sc = spherical_scalars(cfg.spherical);
    table.set_summary("kappa2", sc.kappa2);
    table.set_summary("mu2", sc.mu2);
    table.set_summary("Gamma2", sc.Gamma2);
    table.set_summary("delta_omega", sc.delta_omega);
    table.set_summary("epsilon", sc.epsilon);
  }
  return {std::move(table), 0};
}

CommandResult run_evolve(const RunConfig& cfg) {
  const HPModel& m = need_generic(cfg, "evolve");
  const double t_end = horizon(cfg, 20.0);
  const auto states = evolve(m, cfg.drive, cfg.run.initial, t_end, cfg.run.h);
  ResultTable table({"t", "u", "v_re", "v_im"}, {"time", "1", "1", "1"});
  for (std::size_t i : row_picks(states.size()))
    table.add_row({states[i].t, states[i].u, states[i].v.real(), states[i].v.imag()});
  const SteadyState st = steady_state(m, cfg.drive);
  table.set_summary("u_inf", st.u_inf);
  table.set_summary("v_inf_re", st.v_inf.real());
  table.set_summary("v_inf_im", st.v_inf.imag());
  table.set_summary("h", cfg.run.h > 0.0 ? cfg.run.h : default_step(m, cfg.drive));
  table.set_summary("n_steps", static_cast<double>(states.size() - 1));
  return {std::move(table), 0};
}

CommandResult run_count(const RunConfig& cfg) {
  const HPModel& m = need_generic(cfg, "count");
  const double t_end = horizon(cfg, 20.0);
  const CountingRecord rec = photon_count(m, cfg.drive, cfg.run.initial, t_end, cfg.run.h);
  ResultTable table({"t", "rate", "n_mean", "balance"}, {"time", "1/time", "1", "1"});
  for (std::size_t i : row_picks(rec.t.size()))
    table.add_row({rec.t[i], rec.emission_rate[i], rec.n_mean[i], rec.balance[i]});
  double worst = 0.0;
  for (double b : rec.balance) worst = std::max(worst, std::abs(b));
  table.set_summary("max_abs_balance", worst);
  table.set_summary("n_final", rec.n_mean.back());
  return {std::move(table), 0};
}

CommandResult run_flux(const RunConfig& cfg) {
  const HPModel& m = need_generic(cfg, "flux");
  const double t_end = horizon(cfg, 20.0);
  const auto samples = flux_ratio(m, cfg.drive, cfg.run.initial, t_end, cfg.run.h);
  ResultTable table({"t", "ratio", "bound"}, {"time", "1", "1"});
  double excess = -1.0;
  for (const auto& s : samples) excess = std::max(excess, std::abs(s.ratio - 1.0) - s.bound);
  for (std::size_t i : row_picks(samples.size()))
    table.add_row({samples[i].t, samples[i].ratio, samples[i].bound});
  table.set_summary("lambda_norm2", cfg.drive.lambda.squaredNorm());
  table.set_summary("max_excess", excess);
  return {std::move(table), 0};
}

CommandResult run_lineshape(const RunConfig& cfg) {
  const SphericalModel& sm = need_spherical(cfg, "lineshape");
  if (!cfg.has_scan) fail(Errc::SchemaError, "lineshape needs drive.omega_scan");
  const LineScan scan = lineshape_scan(sm, cfg.scan.min, cfg.scan.max, cfg.scan.points, cfg.scan.in_x);
  ResultTable table({"omega", "delta_omega", "x", "sigma_hat", "sigma_tot", "u_inf", "v_inf_re", "v_inf_im"},
                    {"1/time", "1/time", "1", "1", "area", "1", "1", "1"});
  for (std::size_t i : row_picks(scan.rows.size())) {
    const LineScanRow& r = scan.rows[i];
    table.add_row({r.omega, r.delta_omega, r.x, r.sigma_hat, r.sigma_tot, r.u_inf, r.v_inf.real(),
                   r.v_inf.imag()});
  }
  table.set_summary("A", scan.line.A);
  table.set_summary("B", scan.line.B);
  table.set_summary("C", scan.line.C);
  table.set_summary("Gamma", scan.line.Gamma);
  table.set_summary("epsilon", scan.line.epsilon);
  table.set_summary("resonance_omega", scan.line.resonance_omega);
  table.set_summary("steepest_omega", scan.steepest_omega);
  table.set_summary("positive", scan.line.positive ? "yes" : "no");
  return {std::move(table), 0};
}

CommandResult run_diffxs(const RunConfig& cfg) {
  const SphericalModel& sm = need_spherical(cfg, "diffxs");
  if (cfg.has_scan) fail(Errc::SchemaError, "diffxs needs drive.omega, not drive.omega_scan");
  const ThetaGrid& grid = cfg.run.theta;
  ResultTable table({"theta", "sigma"}, {"rad", "area"});
  for (int i = 0; i < grid.points; ++i) {
    const double theta = grid.min + (grid.max - grid.min) * i / (grid.points - 1);
    table.add_row({theta, differential_cross_section(sm, theta)});
  }
  const TotalCrossSection tot = total_cross_section(sm);
  table.set_summary("sigma_tot", tot.sigma_tot);
  table.set_summary("sigma_hat", tot.sigma_hat);
  table.set_summary("u_inf", steady_state_spherical(sm).first);
  return {std::move(table), 0};
}

CommandResult run_oracle(const RunConfig& cfg, std::uint64_t seed) {
  const HPModel& m = need_generic(cfg, "oracle");
  const double t_end = cfg.run.t_end > 0.0 ? cfg.run.t_end : 4.0 / m.alpha.squaredNorm();
  const double dt = cfg.run.dt > 0.0 ? cfg.run.dt : default_jump_dt(m, cfg.drive);
  const TrajectoryEnsemble ens = jump_monte_carlo(m, cfg.drive, cfg.run.initial, t_end, dt,
                                                  cfg.run.n_traj, seed, cfg.run.n_samples);
  const double bound = 4.0 / std::sqrt(static_cast<double>(ens.n_traj));

  ResultTable table({"t", "trace_distance", "bound", "u_mc", "u_ode", "jumps_mean", "n_mean_ode"},
                    {"time", "1", "1", "1", "1", "1", "1"});
  double worst = 0.0;
  double n_ode_final = 0.0;
  for (std::size_t k = 0; k < ens.t.size(); ++k) {
    const auto states = evolve(m, cfg.drive, cfg.run.initial, ens.t[k], cfg.run.h);
    const BlochState& ode = states.back();
    const CountingRecord rec = photon_count(m, cfg.drive, cfg.run.initial, ens.t[k], cfg.run.h);
    const double td = trace_distance(ens.rho[k], ode.rho());
    worst = std::max(worst, td);
    n_ode_final = rec.n_mean.back();
    table.add_row({ens.t[k], td, bound, ens.rho[k](0, 0).real(), ode.u, ens.jumps_total[k],
                   n_ode_final});
  }
  const double gap = std::abs(ens.jumps_total.back() - n_ode_final);
  const bool ok = worst <= bound && gap <= bound;
  table.set_summary("max_trace_distance", worst);
  table.set_summary("bound", bound);
  table.set_summary("jumps_total", ens.jumps_total.back());
  table.set_summary("n_mean_ode", n_ode_final);
  table.set_summary("count_gap", gap);
  table.set_summary("dt", ens.dt);
  table.set_summary("verdict", ok ? "ok" : "mismatch");
  return {std::move(table), ok ? 0 : 3};
}

struct IdentityResiduals {
  double det_res = 0.0;
  double gamma_res = 0.0;
  double steady_res = 0.0;
  double det_g = 0.0;    // real part; the identity keeps it strictly negative
  double gamma2 = 0.0;
};

IdentityResiduals identity_residuals(const HPModel& m, const Drive& d) {
  IdentityResiduals r;
  const GSystem gs = g_system(m, d, false);
  const cx det = gs.G.determinant();
  const double target = -gs.alpha_norm2 * (gs.delta_omega * gs.delta_omega + 0.25 * gs.Gamma2);
  r.det_res = std::abs(det - cx(target)) / std::max({1.0, std::abs(det), std::abs(target)});
  r.gamma_res = std::abs(gs.Gamma2 - gs.Gamma2_alt) /
                std::max({1.0, std::abs(gs.Gamma2), std::abs(gs.Gamma2_alt)});
  r.det_g = det.real();
  r.gamma2 = gs.Gamma2;

  const Vec3 x = solve_linear3(gs.G, gs.w);
  const double denom = gs.delta_omega * gs.delta_omega + 0.25 * gs.Gamma2;
  const double u_cf = gs.kappa2 * (std::norm(gs.z_minus) / gs.alpha_norm2) / denom;
  const cx v_cf = -gs.z_minus * cx(0.5 * gs.kappa2, gs.delta_omega + gs.J) / denom;
  const double err = std::sqrt(std::norm(x(0) - cx(u_cf)) + std::norm(x(1) - v_cf));
  const double scale = std::max(std::sqrt(u_cf * u_cf + std::norm(v_cf)),
                                std::sqrt(std::norm(x(0)) + std::norm(x(1))));
  r.steady_res = err / std::max(scale, 1e-300);
  return r;
}

CommandResult run_validate(const RunConfig& cfg, std::uint64_t seed) {
  ResultTable table({"check", "models", "max_residual", "tolerance", "status"},
                    {"-", "1", "1", "1", "-"});
  bool all_ok = true;
  auto row = [&](const char* name, int models, double residual, double tol, bool ok) {
    table.add_row({name, models, residual, tol, ok ? "ok" : "fail"});
    all_ok = all_ok && ok;
  };

  const int dims[] = {1, 2, 3, 5};
  const int n_models = cfg.run.n_models;
  double det_res = 0.0, gamma_res = 0.0, steady_res = 0.0;
  double det_max = -1e300, gamma_min = 1e300;
  for (int i = 0; i < n_models; ++i) {
    const HPModel m = make_random_model(seed + i, dims[i % 4]);
    const Drive d = make_random_drive(seed + i, m);
    const IdentityResiduals r = identity_residuals(m, d);
    det_res = std::max(det_res, r.det_res);
    gamma_res = std::max(gamma_res, r.gamma_res);
    steady_res = std::max(steady_res, r.steady_res);
    det_max = std::max(det_max, r.det_g);
    gamma_min = std::min(gamma_min, r.gamma2);
  }
  row("det_g_identity", n_models, det_res, 1e-10, det_res <= 1e-10);
  row("line_width_forms", n_models, gamma_res, 1e-10, gamma_res <= 1e-10);
  row("equilibrium_forms", n_models, steady_res, 1e-9, steady_res <= 1e-9);
  row("det_g_negative", n_models, det_max, 0.0, det_max < 0.0);
  row("line_width_positive", n_models, gamma_min, 0.0, gamma_min > 0.0);

  const int n_balance = std::min(100, n_models);
  double balance_res = 0.0;
  for (int i = 0; i < n_balance; ++i) {
    const HPModel m = make_random_model(seed + i, dims[i % 4]);
    const Drive d = make_random_drive(seed + i, m);
    const CountingRecord rec =
        photon_count(m, d, BlochState::ground(), 20.0 / m.alpha.squaredNorm(), 0.0);
    for (double b : rec.balance) balance_res = std::max(balance_res, std::abs(b));
  }
  row("count_balance", n_balance, balance_res, 1e-6, balance_res <= 1e-6);

  if (!cfg.is_spherical) {
    const IdentityResiduals r = identity_residuals(cfg.generic, cfg.drive);
    const double worst = std::max({r.det_res, r.gamma_res, r.steady_res});
    row("config_identities", 1, worst, 1e-9, worst <= 1e-9);
  } else {
    SphericalModel sm = cfg.spherical;
    std::vector<double> omegas;
    if (cfg.has_scan) {
      const LineShape probe = total_cross_section(sm, false).line;
      for (int i = 0; i < 101; ++i) {
        const double f = static_cast<double>(i) / 100.0;
        omegas.push_back(cfg.scan.in_x
                             ? probe.resonance_omega + 0.5 * probe.Gamma * (cfg.scan.min + (cfg.scan.max - cfg.scan.min) * f)
                             : cfg.scan.min + (cfg.scan.max - cfg.scan.min) * f);
      }
    } else {
      omegas.push_back(sm.omega);
    }
    double fano_res = 0.0, sigma_min = 1e300;
    for (double w : omegas) {
      sm.omega = w;
      const TotalCrossSection tot = total_cross_section(sm, false);
      const double via_line = tot.line.profile(tot.line.x(w));
      fano_res = std::max(fano_res, std::abs(tot.sigma_hat - via_line) /
                                        std::max({1.0, std::abs(tot.sigma_hat), std::abs(via_line)}));
      sigma_min = std::min(sigma_min, tot.sigma_hat);
    }
    row("config_fano_identity", 1, fano_res, 1e-10, fano_res <= 1e-10);
    row("config_profile_floor", 1, sigma_min, 0.0, sigma_min >= -1e-12);
  }
  return {std::move(table), all_ok ? 0 : 3};
}

CommandResult run_named(const RunConfig& cfg, const std::string& command, std::uint64_t seed) {
  if (command == "steady") return run_steady(cfg);
  if (command == "evolve") return run_evolve(cfg);
  if (command == "count") return run_count(cfg);
  if (command == "flux") return run_flux(cfg);
  if (command == "lineshape") return run_lineshape(cfg);
  if (command == "diffxs") return run_diffxs(cfg);
  if (command == "oracle") return run_oracle(cfg, seed);
  if (command == "validate") return run_validate(cfg, seed);
  fail(Errc::SchemaError, "\"" + command + "\" is not a known command");
}

}  // namespace

std::uint64_t resolve_seed(const RunConfig& cfg) {
  if (cfg.run.has_seed) return cfg.run.seed;
  if (const char* env = std::getenv("FLUXATOM_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
  }
  return 0;
}

CommandResult run_command(const RunConfig& cfg, const std::string& command, std::uint64_t seed) {
  return run_named(cfg, command, seed);
}

int dispatch(RunConfig cfg, const CliOverrides& cli, std::ostream& out, std::ostream& diag) {
  try {
    const std::string command = !cli.command.empty() ? cli.command : cfg.run.command;
    if (command.empty())
      fail(Errc::SchemaError, "no command given (set run.command or use a subcommand)");
    if (!cli.format.empty()) {
      if (cli.format != "csv" && cli.format != "json")
        fail(Errc::SchemaError, "--format must be csv or json");
      cfg.run.format = cli.format;
    }
    if (!cli.out.empty()) cfg.run.out = cli.out;
    if (cli.has_seed) {
      cfg.run.seed = cli.seed;
      cfg.run.has_seed = true;
    }
    const std::uint64_t seed = resolve_seed(cfg);

    CommandResult res = run_named(cfg, command, seed);
    res.table.set_meta("fluxatom", version);
    res.table.set_meta("command", command);
    res.table.set_meta("config", config_hash_hex(cfg));
    res.table.set_meta("seed", std::to_string(seed));
    const std::string payload = cfg.run.format == "json" ? res.table.to_json() : res.table.to_csv();
    if (cfg.run.out.empty()) {
      out << payload;
    } else {
      std::ofstream f(cfg.run.out, std::ios::binary);
      f << payload;
      f.flush();
      if (!f) throw std::runtime_error("cannot write output file " + cfg.run.out);
      if (!cli.quiet)
        diag << "wrote " << cfg.run.out << " (" << res.table.n_rows() << " rows)\n";
    }
    return res.exit_code;
  } catch (const Error& e) {
    diag << "fluxatom: " << e.what() << "\n";
    return errc_is_internal(e.code()) ? 3 : 2;
  } catch (const std::exception& e) {
    diag << "fluxatom: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace fluxatom
