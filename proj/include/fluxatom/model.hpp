#pragma once

#include <vector>

#include "fluxatom/numerics.hpp"

namespace fluxatom {

// Source coefficients on the one-particle space C^n: upper-level emission
// vector alpha plus one elastic scattering unitary per atomic level.
struct HPModel {
  int n = 0;
  double omega0 = 0.0;
  CVec alpha;
  CMat S_plus;
  CMat S_minus;
};

// Monochromatic coherent drive: amplitude vector and carrier frequency.
// ||lambda||^2 is the mean injected photon rate; lambda = 0 is allowed.
struct Drive {
  CVec lambda;
  double omega = 0.0;
};

void validate_model(const HPModel& m);
void validate_drive(const Drive& d, const HPModel& m);

HPModel make_model(double omega0, CVec alpha, CMat S_plus, CMat S_minus);
Drive make_drive(CVec lambda, double omega);

// Rotating-frame jump operators (one per field channel), the Hermitian
// effective Hamiltonian, and K = H - (i/2) sum_j R_j^dag R_j.
struct RotatingGenerators {
  std::vector<Mat2> R;
  Mat2 H;
  Mat2 K;
};

RotatingGenerators rotating_generators(const HPModel& m, const Drive& d);

// Coefficients of the closed linear Bloch system d/dt (u, v, vbar) = G u - w,
// together with the derived scalars.  Gamma2 is evaluated through two
// independent formulas and the disagreement is treated as an internal bug.
struct GSystem {
  Mat3 G;
  Vec3 w;
  cx b = 0.0;

  double alpha_norm2 = 0.0;
  double lambda_norm2 = 0.0;
  cx z_plus = 0.0;   // <alpha | S_plus lambda>
  cx z_minus = 0.0;  // <alpha | S_minus lambda>
  double mu2 = 0.0;
  double kappa2 = 0.0;
  double delta_omega = 0.0;
  double J = 0.0;
  double Gamma2 = 0.0;
  double Gamma2_alt = 0.0;  // independent route, kept for residual reporting

  CVec alpha_hat;
  CMat DeltaS;
  CMat P_alpha;
  CMat P_perp;
};

GSystem g_system(const HPModel& m, const Drive& d, bool crosscheck = true);

}  // namespace fluxatom
