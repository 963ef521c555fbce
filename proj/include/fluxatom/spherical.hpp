#pragma once

#include <utility>

#include "fluxatom/bloch.hpp"

namespace fluxatom {

// Spherically symmetric source driven by a narrow beam, in the collimated
// limit.  g_plus / g_minus hold Legendre coefficients c_l for l = 1..L of the
// beyond-s-wave elastic amplitudes; the l = 0 part lives in the phases s±.
struct SphericalModel {
  double alpha_norm = 0.0;
  double s_plus = 0.0;
  double s_minus = 0.0;
  std::vector<cx> g_plus;
  std::vector<cx> g_minus;
  double eta = 0.0;
  double delta = 0.0;
  double omega0 = 0.0;
  double omega = 0.0;
  double c_light = 1.0;
};

void validate_spherical(const SphericalModel& sm);

struct SphericalScalars {
  double kappa2 = 0.0;
  double mu2 = 0.0;
  double Gamma2 = 0.0;
  double delta_omega = 0.0;  // omega - (omega0 + epsilon)
  double epsilon = 0.0;      // intensity-induced resonance displacement
};

SphericalScalars spherical_scalars(const SphericalModel& sm);

std::pair<double, cx> steady_state_spherical(const SphericalModel& sm);

// Differential cross section off the beam axis; tiny negative round-off is
// clamped to zero, the unclamped value lands in *raw when given.
double differential_cross_section(const SphericalModel& sm, double theta, double* raw = nullptr);

struct LineShape {
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  double Gamma = 0.0;
  double epsilon = 0.0;
  double resonance_omega = 0.0;
  bool positive = false;  // certificate for profile(x) >= 0 at every x

  double x(double omega) const { return 2.0 * (omega - resonance_omega) / Gamma; }
  double profile(double x) const { return A + (B + C * x) / (x * x + 1.0); }
};

struct TotalCrossSection {
  double sigma_tot = 0.0;
  double sigma_hat = 0.0;  // dimensionless form, (2pi/3)(omega/2pi c)^2 sigma_tot
  LineShape line;
};

TotalCrossSection total_cross_section(const SphericalModel& sm, bool crosscheck = true);

struct LineScanRow {
  double omega = 0.0;
  double delta_omega = 0.0;
  double x = 0.0;
  double sigma_hat = 0.0;
  double sigma_tot = 0.0;
  double u_inf = 0.0;
  cx v_inf = 0.0;
};

struct LineScan {
  std::vector<LineScanRow> rows;
  LineShape line;
  double steepest_omega = 0.0;  // finite-difference argmax of |d sigma_hat / d omega|
};

// With grid_in_x the bounds are read as reduced-detuning values x and the
// frequency grid is derived from them; otherwise they are frequencies.
LineScan lineshape_scan(const SphericalModel& sm, double omega_min, double omega_max, int n_points,
                        bool grid_in_x = false);

// Finite-aperture realization on C^(L+1) in the normalized Legendre basis:
// diagonal scattering phases exp(2i d_l) and the beam truncated to L modes,
// scaled so the l = 0 overlap matches its collimated limit exactly.
std::pair<HPModel, Drive> embed_partial_waves(const std::vector<double>& delta_plus,
                                              const std::vector<double>& delta_minus,
                                              double alpha_norm, double eta, double delta,
                                              double omega0, double omega, double dtheta);

// The collimated-limit counterpart of the same phase-shift data.
SphericalModel spherical_from_phase_shifts(const std::vector<double>& delta_plus,
                                           const std::vector<double>& delta_minus,
                                           double alpha_norm, double eta, double delta,
                                           double omega0, double omega, double c_light = 1.0);

}  // namespace fluxatom
