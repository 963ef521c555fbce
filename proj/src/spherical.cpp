#include "fluxatom/spherical.hpp"

#include <algorithm>
#include <cmath>

namespace fluxatom {

namespace {

const double sqrt_pi = std::sqrt(pi);

// Mode weight of the Legendre expansion: ||P_l||^2 over the sphere.
double mode_weight(int l) { return 4.0 * pi / (2.0 * l + 1.0); }

double norm2_g(const std::vector<cx>& c) {
  double s = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) s += std::norm(c[k]) * mode_weight(static_cast<int>(k) + 1);
  return s;
}

cx inner_g(const std::vector<cx>& a, const std::vector<cx>& b) {
  cx s = 0.0;
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t k = 0; k < n; ++k) s += std::conj(a[k]) * b[k] * mode_weight(static_cast<int>(k) + 1);
  return s;
}

cx eval_g(const std::vector<cx>& c, double ct) {
  cx s = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) s += c[k] * legendre_p(static_cast<int>(k) + 1, ct);
  return s;
}

cx forward_g(const std::vector<cx>& c) {
  cx s = 0.0;
  for (const cx& v : c) s += v;
  return s;
}

cx coeff_or_zero(const std::vector<cx>& c, std::size_t k) { return k < c.size() ? c[k] : cx(0.0); }

}  // namespace

void validate_spherical(const SphericalModel& sm) {
  if (!std::isfinite(sm.alpha_norm) || !std::isfinite(sm.s_plus) || !std::isfinite(sm.s_minus) ||
      !std::isfinite(sm.eta) || !std::isfinite(sm.delta) || !std::isfinite(sm.omega0) ||
      !std::isfinite(sm.omega) || !std::isfinite(sm.c_light)) {
    fail(Errc::NonFinite, "spherical model scalar");
  }
  for (const cx& c : sm.g_plus) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) fail(Errc::NonFinite, "g_plus");
  }
  for (const cx& c : sm.g_minus) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) fail(Errc::NonFinite, "g_minus");
  }
  if (!(sm.alpha_norm > 0.0)) fail(Errc::ZeroAlpha, "alpha_norm must be positive");
  if (!(sm.eta > 0.0)) fail(Errc::ZeroDrive, "eta must be positive");
  if (!(sm.omega0 > 0.0)) fail(Errc::NonPositiveFrequency, "omega0 must be positive");
  if (!(sm.omega > 0.0)) fail(Errc::NonPositiveFrequency, "omega must be positive");
  if (!(sm.c_light > 0.0)) fail(Errc::NonPositiveFrequency, "c_light must be positive");
}

SphericalScalars spherical_scalars(const SphericalModel& sm) {
  validate_spherical(sm);
  const double a2 = sm.alpha_norm * sm.alpha_norm;
  const double eta2 = sm.eta * sm.eta;
  const double ds = sm.s_plus - sm.s_minus;

  double dg2 = 0.0;
  const std::size_t nl = std::max(sm.g_plus.size(), sm.g_minus.size());
  for (std::size_t k = 0; k < nl; ++k) {
    dg2 += std::norm(coeff_or_zero(sm.g_plus, k) - coeff_or_zero(sm.g_minus, k)) *
           mode_weight(static_cast<int>(k) + 1);
  }

  SphericalScalars sc;
  sc.mu2 = a2 + eta2 * dg2;
  const double q = 0.5 * eta2 * (1.0 - std::cos(ds));
  sc.kappa2 = sc.mu2 + q;
  sc.Gamma2 = sc.mu2 * sc.mu2 + 2.0 * sc.mu2 * eta2 + eta2 * q;

  const cx ip = inner_g(sm.g_plus, sm.g_minus);
  cx dg0 = 0.0;
  for (std::size_t k = 0; k < nl; ++k) dg0 += coeff_or_zero(sm.g_plus, k) - coeff_or_zero(sm.g_minus, k);
  sc.epsilon = eta2 * (ip.imag() - sqrt_pi * dg0.imag());
  sc.delta_omega = sm.omega - (sm.omega0 + sc.epsilon);
  return sc;
}

std::pair<double, cx> steady_state_spherical(const SphericalModel& sm) {
  const SphericalScalars sc = spherical_scalars(sm);
  const double eta2 = sm.eta * sm.eta;
  const double denom = sc.delta_omega * sc.delta_omega + 0.25 * sc.Gamma2;
  const double u = sc.kappa2 * (0.25 * eta2) / denom;
  const double shift = sc.delta_omega - 0.25 * eta2 * std::sin(sm.s_plus - sm.s_minus);
  const cx v = -0.5 * std::polar(sm.alpha_norm * sm.eta, sm.delta + sm.s_minus) *
               cx(0.5 * sc.kappa2, shift) / denom;
  return {u, v};
}

double differential_cross_section(const SphericalModel& sm, double theta, double* raw) {
  validate_spherical(sm);
  if (!(theta >= 1e-6)) {
    fail(Errc::ForwardDirection, "detector angle must be off the beam axis (theta >= 1e-6)");
  }
  if (!(theta <= pi + 1e-12)) fail(Errc::StateOutOfDomain, "theta must be <= pi");

  const auto [u, v] = steady_state_spherical(sm);
  const double ct = std::cos(theta);
  const double a_s = sm.alpha_norm / (2.0 * sqrt_pi);
  const cx phase = std::polar(1.0, sm.delta);
  const cx tp = eval_g(sm.g_plus, ct) + (std::polar(1.0, sm.s_plus) - 1.0) / (4.0 * sqrt_pi);
  const cx tm = eval_g(sm.g_minus, ct) + (std::polar(1.0, sm.s_minus) - 1.0) / (4.0 * sqrt_pi);
  const cx p = sm.eta * phase * tp;
  const cx m = sm.eta * phase * tm;

  const double rate = (std::norm(p) + a_s * a_s) * u + std::norm(m) * (1.0 - u) +
                      2.0 * a_s * (std::conj(m) * v).real();
  const double wl2 = 2.0 * pi * sm.c_light / sm.omega;
  const double val = 3.0 / (2.0 * pi * sm.eta * sm.eta) * wl2 * wl2 * rate;
  if (raw) *raw = val;
  return (val < 0.0 && val > -1e-12) ? 0.0 : val;
}

TotalCrossSection total_cross_section(const SphericalModel& sm, bool crosscheck) {
  const SphericalScalars sc = spherical_scalars(sm);
  const auto [u, v] = steady_state_spherical(sm);
  (void)v;
  const double a2 = sm.alpha_norm * sm.alpha_norm;
  const double eta2 = sm.eta * sm.eta;
  const double ds = sm.s_plus - sm.s_minus;
  const double gp2 = norm2_g(sm.g_plus);
  const double gm2 = norm2_g(sm.g_minus);

  const double lower_part = gm2 + 0.5 * (1.0 - std::cos(sm.s_minus));
  const double upper_part = gp2 + 0.5 * (1.0 - std::cos(sm.s_plus)) + (a2 / eta2) * std::cos(sm.s_minus) -
                            (2.0 * a2 * sc.delta_omega / (eta2 * sc.kappa2)) * std::sin(sm.s_minus) +
                            (a2 / (2.0 * sc.kappa2)) * std::sin(ds) * std::sin(sm.s_minus);
  const double hat_direct = (1.0 - u) * lower_part + u * upper_part;

  TotalCrossSection out;
  out.line.Gamma = std::sqrt(sc.Gamma2);
  out.line.epsilon = sc.epsilon;
  out.line.resonance_omega = sm.omega0 + sc.epsilon;
  out.line.A = lower_part;
  out.line.C = -(a2 / out.line.Gamma) * std::sin(sm.s_minus);
  out.line.B = (eta2 * sc.kappa2 / sc.Gamma2) * (gp2 - gm2 + 0.5 * std::cos(sm.s_minus) - 0.5 * std::cos(sm.s_plus)) +
               (a2 / sc.Gamma2) * (sc.kappa2 * std::cos(sm.s_minus) + 0.5 * eta2 * std::sin(ds) * std::sin(sm.s_minus));
  out.line.positive = (out.line.A > 0.0 && out.line.A * (out.line.A + out.line.B) >= 0.25 * out.line.C * out.line.C) ||
                      (out.line.A == 0.0 && out.line.B > 0.0 && out.line.C == 0.0);

  const double x = out.line.x(sm.omega);
  const double hat_fano = out.line.profile(x);
  if (crosscheck) {
    const double scale = std::max({1.0, std::abs(hat_direct), std::abs(hat_fano)});
    if (!(std::abs(hat_direct - hat_fano) <= 1e-10 * scale)) {
      fail(Errc::FanoIdentityMismatch, "profile coefficients disagree with the direct total: " +
                                           std::to_string(hat_direct) + " vs " + std::to_string(hat_fano));
    }
  }

  out.sigma_hat = hat_direct;
  const double cw = sm.c_light / sm.omega;
  out.sigma_tot = 6.0 * pi * cw * cw * hat_direct;
  return out;
}

LineScan lineshape_scan(const SphericalModel& sm, double omega_min, double omega_max, int n_points,
                        bool grid_in_x) {
  validate_spherical(sm);
  if (grid_in_x) {
    // Bounds are in the reduced detuning x; the frequency grid follows from it.
    if (!(omega_min < omega_max)) fail(Errc::StateOutOfDomain, "scan needs x_min < x_max");
  } else if (!(omega_min > 0.0 && omega_min < omega_max)) {
    fail(Errc::StateOutOfDomain, "scan needs 0 < omega_min < omega_max");
  }
  if (n_points < 2) fail(Errc::StateOutOfDomain, "scan needs at least 2 points");

  LineScan scan;
  scan.line = total_cross_section(sm).line;

  scan.rows.reserve(n_points);
  SphericalModel row_model = sm;
  for (int i = 0; i < n_points; ++i) {
    const double f = static_cast<double>(i) / (n_points - 1);
    double w;
    if (grid_in_x) {
      const double xi = omega_min + f * (omega_max - omega_min);
      w = scan.line.resonance_omega + 0.5 * scan.line.Gamma * xi;
    } else {
      w = omega_min + f * (omega_max - omega_min);
    }
    row_model.omega = w;
    const TotalCrossSection tc = total_cross_section(row_model);
    const auto [u, v] = steady_state_spherical(row_model);
    LineScanRow row;
    row.omega = w;
    row.delta_omega = w - scan.line.resonance_omega;
    row.x = scan.line.x(w);
    row.sigma_hat = tc.sigma_hat;
    row.sigma_tot = tc.sigma_tot;
    row.u_inf = u;
    row.v_inf = v;
    scan.rows.push_back(row);
  }

  double best = -1.0;
  scan.steepest_omega = scan.rows.front().omega;
  for (std::size_t i = 0; i + 1 < scan.rows.size(); ++i) {
    const double dw = scan.rows[i + 1].omega - scan.rows[i].omega;
    if (!(dw > 0.0)) continue;
    const double slope = std::abs(scan.rows[i + 1].sigma_hat - scan.rows[i].sigma_hat) / dw;
    if (slope > best) {
      best = slope;
      scan.steepest_omega = 0.5 * (scan.rows[i].omega + scan.rows[i + 1].omega);
    }
  }
  return scan;
}

std::pair<HPModel, Drive> embed_partial_waves(const std::vector<double>& delta_plus,
                                              const std::vector<double>& delta_minus,
                                              double alpha_norm, double eta, double delta,
                                              double omega0, double omega, double dtheta) {
  if (delta_plus.size() != delta_minus.size()) {
    fail(Errc::DimensionMismatch, "phase shift lists must have equal length");
  }
  if (delta_plus.size() < 2) {
    fail(Errc::StateOutOfDomain, "need phase shifts for l = 0 and at least l = 1");
  }
  if (!(dtheta > 0.0 && dtheta < 0.3)) {
    fail(Errc::StateOutOfDomain, "aperture must lie in (0, 0.3)");
  }
  if (!(eta > 0.0)) fail(Errc::ZeroDrive, "eta must be positive");

  const int L = static_cast<int>(delta_plus.size()) - 1;
  const int n = L + 1;
  const double x0 = std::cos(dtheta);
  const double cap0 = 1.0 - x0;

  // Beam-cap Legendre integrals; the captured-mode distortion relative to the
  // l = 0 reference decides whether the truncation is trustworthy.
  std::vector<double> cap(n, cap0);
  double worst = 0.0;
  for (int l = 1; l <= L; ++l) {
    cap[l] = (legendre_p(l - 1, x0) - legendre_p(l + 1, x0)) / (2.0 * l + 1.0);
    worst = std::max(worst, std::abs(cap[l] / cap0 - 1.0));
  }
  if (worst > 0.01) {
    fail(Errc::TruncationTooCoarse, "mode distortion " + std::to_string(worst) + " exceeds 1%");
  }

  CVec alpha = CVec::Zero(n);
  alpha(0) = alpha_norm;
  CMat sp = CMat::Zero(n, n);
  CMat sm = CMat::Zero(n, n);
  CVec lambda(n);
  const cx phase = std::polar(1.0, delta);
  for (int l = 0; l <= L; ++l) {
    sp(l, l) = std::polar(1.0, 2.0 * delta_plus[static_cast<std::size_t>(l)]);
    sm(l, l) = std::polar(1.0, 2.0 * delta_minus[static_cast<std::size_t>(l)]);
    lambda(l) = eta * phase * std::sqrt(2.0 * l + 1.0) * cap[l] / (2.0 * cap0);
  }
  return {make_model(omega0, std::move(alpha), std::move(sp), std::move(sm)),
          make_drive(std::move(lambda), omega)};
}

SphericalModel spherical_from_phase_shifts(const std::vector<double>& delta_plus,
                                           const std::vector<double>& delta_minus,
                                           double alpha_norm, double eta, double delta,
                                           double omega0, double omega, double c_light) {
  if (delta_plus.size() != delta_minus.size()) {
    fail(Errc::DimensionMismatch, "phase shift lists must have equal length");
  }
  if (delta_plus.empty()) fail(Errc::StateOutOfDomain, "need at least the l = 0 phase shifts");

  SphericalModel sm;
  sm.alpha_norm = alpha_norm;
  sm.s_plus = 2.0 * delta_plus[0];
  sm.s_minus = 2.0 * delta_minus[0];
  const std::size_t L = delta_plus.size() - 1;
  sm.g_plus.resize(L);
  sm.g_minus.resize(L);
  for (std::size_t l = 1; l <= L; ++l) {
    const double f = (2.0 * l + 1.0) / (4.0 * sqrt_pi);
    sm.g_plus[l - 1] = f * (std::polar(1.0, 2.0 * delta_plus[l]) - 1.0);
    sm.g_minus[l - 1] = f * (std::polar(1.0, 2.0 * delta_minus[l]) - 1.0);
  }
  sm.eta = eta;
  sm.delta = delta;
  sm.omega0 = omega0;
  sm.omega = omega;
  sm.c_light = c_light;
  validate_spherical(sm);
  return sm;
}

}  // namespace fluxatom
