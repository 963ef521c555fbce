#pragma once

#include <cstdint>

#include "fluxatom/bloch.hpp"

namespace fluxatom {

// Ensemble-averaged jump unraveling record.  rho[k] is the mean density
// matrix at t[k]; jump counts are cumulative means per field channel.
struct TrajectoryEnsemble {
  std::vector<double> t;
  std::vector<Mat2> rho;
  std::vector<double> jumps_total;
  std::vector<std::vector<double>> jumps_channel;  // [sample][channel]
  int n_traj = 0;
  std::uint64_t seed = 0;
  double dt = 0.0;
};

// Largest per-channel jump-operator norm sets the step precondition
// max_j ||C_j^dag C_j|| * dt <= 0.05; the default step is 1% of that limit.
double default_jump_dt(const HPModel& m, const Drive& d);

// First-order stochastic unraveling of the master equation, counting output
// photons.  Fully deterministic per (seed, dt, n_traj): trajectory i draws
// from its own stream derived from the seed, and the ensemble reduction is
// an ordered sum, so earlier trajectories are unaffected by n_traj changes.
TrajectoryEnsemble jump_monte_carlo(const HPModel& m, const Drive& d, const BlochState& initial,
                                    double t_end, double dt, int n_traj, std::uint64_t seed,
                                    int n_samples = 100);

}  // namespace fluxatom
