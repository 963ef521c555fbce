#pragma once

#include "fluxatom/model.hpp"

namespace fluxatom {

// Rotating-frame atomic state: upper-level population u and coherence v,
// rho = [[u, v], [conj(v), 1-u]].  Admissible iff 0 <= u <= 1 and
// u >= u^2 + |v|^2 (up to 1e-9 slack).
struct BlochState {
  double u = 0.0;
  cx v = 0.0;
  double t = 0.0;

  static BlochState ground() { return {0.0, 0.0, 0.0}; }
  static BlochState excited() { return {1.0, 0.0, 0.0}; }
  static BlochState from_pure(cx upper, cx lower);
  Mat2 rho() const;
};

void validate_state(const BlochState& s);

struct SteadyState {
  double u_inf = 0.0;
  cx v_inf = 0.0;
  Mat2 rho_eq;
};

// Equilibrium from the 3x3 linear solve, cross-checked against the closed
// forms; disagreement beyond 1e-9 relative is an internal bug.
SteadyState steady_state(const GSystem& gs, bool crosscheck = true);
SteadyState steady_state(const HPModel& m, const Drive& d, bool crosscheck = true);

// Step resolving the fastest coefficient scale; used when h <= 0 is passed.
double default_step(const HPModel& m, const Drive& d);

std::vector<BlochState> evolve(const HPModel& m, const Drive& d, const BlochState& initial,
                               double t_end, double h = 0.0);

struct CountingRecord {
  std::vector<double> t;
  std::vector<double> emission_rate;  // mean output photon rate
  std::vector<double> n_mean;         // cumulative mean photon count
  std::vector<double> balance;        // n_mean + u(t) - u(0) - ||lambda||^2 t
};

CountingRecord photon_count(const HPModel& m, const Drive& d, const BlochState& initial,
                            double t_end, double h = 0.0);

struct FluxSample {
  double t = 0.0;
  double ratio = 0.0;  // n_mean / (||lambda||^2 t)
  double bound = 0.0;  // 2 / (||lambda||^2 t)
};

std::vector<FluxSample> flux_ratio(const HPModel& m, const Drive& d, const BlochState& initial,
                                   double t_end, double h = 0.0);

}  // namespace fluxatom
