#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "fluxatom/corpus.hpp"
#include "fluxatom/jump.hpp"
#include "fluxatom/spherical.hpp"

using namespace fluxatom;

namespace {

template <class... A>
std::string fmt(const char* f, A... a) {
  char b[256];
  std::snprintf(b, sizeof(b), f, a...);
  return b;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

double rel(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

constexpr int kDims[] = {1, 2, 3, 5};

// ---- C1: equilibrium closed forms against the 3x3 linear solve ----------

Outcome equilibrium_two_routes() {
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const HPModel m = make_random_model(1000 + i, kDims[i % 4]);
    const Drive d = make_random_drive(1000 + i, m);
    const GSystem gs = g_system(m, d, false);
    const Vec3 x = solve_linear3(gs.G, gs.w);
    const double denom = gs.delta_omega * gs.delta_omega + 0.25 * gs.Gamma2;
    const double u_cf = gs.kappa2 * (std::norm(gs.z_minus) / gs.alpha_norm2) / denom;
    const cx v_cf = -gs.z_minus * cx(0.5 * gs.kappa2, gs.delta_omega + gs.J) / denom;
    const double err = std::sqrt(std::norm(x(0) - cx(u_cf)) + std::norm(x(1) - v_cf));
    const double scale = std::max(1e-300, std::sqrt(u_cf * u_cf + std::norm(v_cf)));
    worst = std::max(worst, err / scale);
  }
  return {worst <= 1e-10, fmt("max rel %.2e over 1000 models", worst)};
}

// ---- C2: determinant identity and the two linewidth routes --------------

Outcome determinant_and_linewidth() {
  double det_res = 0.0, gam_res = 0.0, det_max = -1e300, gam_min = 1e300;
  for (int i = 0; i < 1000; ++i) {
    const HPModel m = make_random_model(2000 + i, kDims[i % 4]);
    const Drive d = make_random_drive(2000 + i, m);
    const GSystem gs = g_system(m, d, false);
    const cx det = gs.G.determinant();
    const double target = -gs.alpha_norm2 * (gs.delta_omega * gs.delta_omega + 0.25 * gs.Gamma2);
    det_res = std::max(det_res, std::abs(det - cx(target)) /
                                    std::max({1.0, std::abs(det), std::abs(target)}));
    gam_res = std::max(gam_res, rel(gs.Gamma2, gs.Gamma2_alt));
    det_max = std::max(det_max, det.real());
    gam_min = std::min(gam_min, gs.Gamma2);
  }
  const bool ok = det_res <= 1e-10 && gam_res <= 1e-10 && det_max < 0.0 && gam_min > 0.0;
  return {ok, fmt("det %.1e width %.1e detmax %.1e widthmin %.2f", det_res, gam_res, det_max,
                  gam_min)};
}

// ---- C3: counting balance residual over driven models -------------------

Outcome count_balance() {
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const HPModel m = make_random_model(3000 + i, kDims[i % 4]);
    const Drive d = make_random_drive(3000 + i, m);
    const CountingRecord rec =
        photon_count(m, d, BlochState::ground(), 20.0 / m.alpha.squaredNorm());
    for (double b : rec.balance) worst = std::max(worst, std::abs(b));
  }
  return {worst <= 1e-6, fmt("max |residual| %.2e over 100 models", worst)};
}

// ---- C4: undriven relaxation and its photon budget ----------------------

Outcome undriven_decay() {
  double u_err = 0.0, n_err = 0.0, td_err = 0.0, leak = 0.0;
  for (int i = 0; i < 5; ++i) {
    const HPModel m = make_random_model(4000 + i, kDims[i % 4]);
    const Drive d = make_drive(CVec::Zero(m.n), m.omega0);
    const double a2 = m.alpha.squaredNorm();
    const double t_end = 30.0 / a2;

    const auto states = evolve(m, d, BlochState::excited(), t_end);
    for (const BlochState& s : states) {
      u_err = std::max(u_err, std::abs(s.u - std::exp(-a2 * s.t)));
    }
    Mat2 ground_proj;
    ground_proj << 0.0, 0.0, 0.0, 1.0;
    td_err = std::max(td_err, trace_distance(states.back().rho(), ground_proj));

    const CountingRecord rec = photon_count(m, d, BlochState::excited(), t_end);
    n_err = std::max(n_err, std::abs(rec.n_mean.back() - 1.0));

    const CountingRecord quiet = photon_count(m, d, BlochState::ground(), t_end);
    for (std::size_t k = 0; k < quiet.t.size(); ++k) {
      leak = std::max({leak, std::abs(quiet.n_mean[k]), std::abs(quiet.emission_rate[k])});
    }
  }
  const bool ok = u_err <= 1e-8 && n_err <= 1e-6 && leak == 0.0 && td_err <= 1e-8;
  return {ok, fmt("u %.1e N %.1e ground %.1g final %.1e", u_err, n_err, leak, td_err)};
}

// ---- C5: long-time flux locks to the input photon rate ------------------

Outcome flux_ratio_bound() {
  double excess = -1e300;
  for (int i = 0; i < 10; ++i) {
    const HPModel m = make_random_model(5000 + i, kDims[i % 4]);
    const Drive d = make_random_drive(5000 + i, m);
    const auto samples = flux_ratio(m, d, BlochState::ground(), 20.0 / m.alpha.squaredNorm());
    for (const FluxSample& s : samples) {
      excess = std::max(excess, std::abs(s.ratio - 1.0) - (s.bound + 1e-6));
    }
  }
  return {excess <= 0.0, fmt("max excess %.2e over 10 models", excess)};
}

// ---- C6: pure-absorber peak values and the weak-beam limit --------------

Outcome lorentzian_limit() {
  SphericalModel sm;
  sm.alpha_norm = 1.0;
  sm.eta = 1.0;
  sm.omega0 = 1.0;
  sm.omega = 1.0;

  const double hat = total_cross_section(sm).sigma_hat;
  const auto [u, v] = steady_state_spherical(sm);
  const bool thirds = std::abs(hat - 1.0 / 3.0) <= 1e-12 && std::abs(u - 1.0 / 3.0) <= 1e-10 &&
                      std::abs(v - cx(-1.0 / 3.0, 0.0)) <= 1e-10;

  // weak beam: the peak saturates to 1; checked against the exact law at the
  // unit absorber rate and against 1 itself on a stronger absorber, where the
  // residual eta^2 correction sits below the microscopic tolerance
  sm.eta = 1e-3;
  const double law =
      std::abs(total_cross_section(sm).sigma_hat - 1.0 / (1.0 + 2.0 * sm.eta * sm.eta));
  sm.alpha_norm = 2.0;
  const double peak_dev = std::abs(total_cross_section(sm).sigma_hat - 1.0);
  const bool ok = thirds && law <= 1e-12 && peak_dev <= 1e-6;
  return {ok, fmt("peak %.3g law %.1e weak dev %.1e", hat, law, peak_dev)};
}

// ---- C7: total cross section collapses onto its three-parameter form ----

Outcome fano_reduction() {
  double worst = 0.0, floor = 1e300;
  bool cert_holds = true;
  for (int i = 0; i < 200; ++i) {
    SphericalModel sm = make_random_spherical(7000 + i);
    const LineShape line = total_cross_section(sm).line;
    const double w0 = sm.omega0;
    for (int k = 0; k <= 100; ++k) {
      sm.omega = 0.5 * w0 + 0.01 * w0 * k;
      const TotalCrossSection tc = total_cross_section(sm, false);
      const double via_tot =
          (2.0 * pi / 3.0) * std::pow(sm.omega / (2.0 * pi * sm.c_light), 2) * tc.sigma_tot;
      worst = std::max(worst, rel(via_tot, line.profile(line.x(sm.omega))));
      if (line.positive) {
        floor = std::min(floor, tc.sigma_hat);
        cert_holds = cert_holds && tc.sigma_hat >= -1e-12;
      }
    }
  }
  const bool ok = worst <= 1e-10 && cert_holds;
  return {ok, fmt("max rel %.2e floor %.2e over 200 models", worst, floor)};
}

// ---- C8: displacement properties and where the line is steepest ---------

Outcome resonance_displacement() {
  for (int i = 0; i < 20; ++i) {
    SphericalModel sm = make_random_spherical(8000 + i);
    sm.g_plus.clear();
    sm.g_minus.clear();
    if (spherical_scalars(sm).epsilon != 0.0) return {false, "s-wave displacement nonzero"};
  }

  double quad_res = 0.0;
  for (int i = 0; i < 20; ++i) {
    SphericalModel sm = make_random_spherical(8100 + i);
    sm.eta = 0.5;
    const double e1 = spherical_scalars(sm).epsilon;
    sm.eta = 1.0;
    const double e2 = spherical_scalars(sm).epsilon;
    quad_res = std::max(quad_res, std::abs(e2 - 4.0 * e1) / std::max(1.0, std::abs(e2)));
  }
  if (quad_res > 1e-12) return {false, fmt("intensity scaling res %.2e", quad_res)};

  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    SplitMix64 rng(88000 + i);
    std::vector<double> dp(4), dm(4);
    for (int l = 0; l < 4; ++l) {
      dp[l] = -0.5 + rng.uniform01();
      dm[l] = -0.5 + rng.uniform01();
    }
    const double an = std::sqrt(0.6 + 0.8 * rng.uniform01());
    const double eta = 0.09 * an;  // keeps the beam below 1% of the absorber rate
    SphericalModel probe = spherical_from_phase_shifts(dp, dm, an, eta, 0.0, 1.0, 1.0);
    const SphericalScalars sc = spherical_scalars(probe);
    const double gam = std::sqrt(sc.Gamma2);

    // width and displacement do not involve the transition frequency, so it
    // can be raised until the whole scan window is positive
    probe.omega0 = 1.0 + 8.0 * gam + std::abs(sc.epsilon);
    probe.omega = probe.omega0;
    const LineScan scan = lineshape_scan(probe, -6.0, 6.0, 241, true);
    const double res_omega = probe.omega0 + sc.epsilon;
    worst = std::max(worst, std::abs(scan.steepest_omega - res_omega) / gam);
  }
  return {worst <= 3.0, fmt("steepest point within %.2f widths", worst)};
}

// ---- C9: aperture realizations converge at second order -----------------

Outcome aperture_convergence() {
  const double apertures[] = {0.1, 0.05, 0.025};
  double min_order = 1e300;
  for (int i = 0; i < 3; ++i) {
    SplitMix64 rng(99000 + i);
    std::vector<double> dp(3), dm(3);
    for (int l = 0; l < 3; ++l) {
      dp[l] = -0.5 + rng.uniform01();
      dm[l] = -0.5 + rng.uniform01();
    }
    const double an = 1.1, eta = 0.4, delta = 0.7, w0 = 1.2, w = 1.35;
    const SphericalModel lim = spherical_from_phase_shifts(dp, dm, an, eta, delta, w0, w);
    const SphericalScalars sc = spherical_scalars(lim);
    const auto [u_lim, v_lim] = steady_state_spherical(lim);

    double e_k[3], e_g[3], e_d[3], e_u[3], e_v[3];
    for (int a = 0; a < 3; ++a) {
      const auto [m, d] = embed_partial_waves(dp, dm, an, eta, delta, w0, w, apertures[a]);
      const GSystem gs = g_system(m, d);
      const SteadyState st = steady_state(gs);
      e_k[a] = std::abs(gs.kappa2 - sc.kappa2);
      e_g[a] = std::abs(gs.Gamma2 - sc.Gamma2);
      e_d[a] = std::abs(gs.delta_omega - sc.delta_omega);
      e_u[a] = std::abs(st.u_inf - u_lim);
      e_v[a] = std::abs(st.v_inf - v_lim);
    }
    for (const double* e : {e_k, e_g, e_d, e_u, e_v}) {
      for (int a = 0; a + 1 < 3; ++a) {
        min_order = std::min(min_order, std::log2(e[a] / e[a + 1]));
      }
    }
  }
  return {min_order >= 0.9, fmt("observed order >= %.2f", min_order)};
}

// ---- C10: stochastic unraveling against the deterministic solution ------

Outcome jump_mc_vs_ode() {
  double worst_td = 0.0, worst_gap = 0.0;
  const int n_traj = 2000;
  const double bound = 4.0 / std::sqrt(static_cast<double>(n_traj));
  for (int i = 0; i < 10; ++i) {
    const HPModel m = make_random_model(10000 + i, kDims[i % 4]);
    const Drive d = make_random_drive(10000 + i, m);
    const double t_end = 4.0 / m.alpha.squaredNorm();
    const TrajectoryEnsemble ens =
        jump_monte_carlo(m, d, BlochState::ground(), t_end, 0.0, n_traj, 2026 + i);
    for (std::size_t k = 0; k < ens.t.size(); ++k) {
      const auto states = evolve(m, d, BlochState::ground(), ens.t[k]);
      worst_td = std::max(worst_td, trace_distance(ens.rho[k], states.back().rho()));
    }
    const CountingRecord rec = photon_count(m, d, BlochState::ground(), t_end);
    worst_gap = std::max(worst_gap, std::abs(ens.jumps_total.back() - rec.n_mean.back()));
  }
  const bool ok = worst_td <= bound && worst_gap <= bound;
  return {ok, fmt("max TD %.3f gap %.3f vs bound %.3f", worst_td, worst_gap, bound)};
}

// ---- C11: angular emission integrates to the total ----------------------

Outcome angular_integral() {
  const QuadratureRule q = gauss_legendre(32);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    SplitMix64 rng(11000 + i);
    SphericalModel sm;
    sm.alpha_norm = std::sqrt(0.6 + 0.8 * rng.uniform01());
    sm.eta = 0.3 + 1.2 * rng.uniform01();
    sm.delta = 2.0 * pi * rng.uniform01();
    sm.omega0 = 0.8 + 0.8 * rng.uniform01();
    sm.omega = sm.omega0 + 0.8 * (rng.uniform01() - 0.5);
    const TotalCrossSection tc = total_cross_section(sm);
    double quad = 0.0;
    for (int k = 0; k < q.order; ++k) {
      double raw = 0.0;
      differential_cross_section(sm, std::acos(q.nodes[k]), &raw);
      quad += q.weights[k] * raw;
    }
    quad *= 2.0 * pi;
    worst = std::max(worst, rel(quad, tc.sigma_tot));
  }
  return {worst <= 1e-10, fmt("max rel %.2e over 10 models", worst)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"equilibrium-two-routes", 5.0, equilibrium_two_routes},
      {"determinant-and-linewidth", 5.0, determinant_and_linewidth},
      {"count-balance", 30.0, count_balance},
      {"undriven-decay", 5.0, undriven_decay},
      {"flux-ratio-bound", 10.0, flux_ratio_bound},
      {"lorentzian-limit", 1.0, lorentzian_limit},
      {"fano-reduction", 10.0, fano_reduction},
      {"resonance-displacement", 10.0, resonance_displacement},
      {"aperture-convergence", 30.0, aperture_convergence},
      {"jump-mc-vs-ode", 120.0, jump_mc_vs_ode},
      {"angular-integral", 1.0, angular_integral},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Criterion& c = criteria[i];
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_s) {
      o.pass = false;
      o.detail += fmt(" [over %.0f s budget]", c.budget_s);
    }
    std::printf("C%02zu %-26s %s (%s; %.2f s)\n", i + 1, c.name, o.pass ? "PASS" : "FAIL",
                o.detail.c_str(), secs);
    if (!o.pass) ++failures;
  }
  if (failures) std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures ? 1 : 0;
}
