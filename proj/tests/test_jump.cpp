#include <cmath>

#include "doctest.h"
#include "fluxatom/corpus.hpp"
#include "fluxatom/jump.hpp"

using namespace fluxatom;

namespace {

HPModel pure_decay_model() {
  CVec alpha(1);
  alpha << cx(1, 0);
  return make_model(1.0, alpha, CMat::Identity(1, 1), CMat::Identity(1, 1));
}

}  // namespace

TEST_SUITE_BEGIN("jump");

TEST_CASE("undriven decay ensemble tracks the exponential") {
  const HPModel m = pure_decay_model();
  const Drive d = make_drive(CVec::Zero(1), 1.0);
  const int n_traj = 4000;
  const double bound = 4.0 / std::sqrt(static_cast<double>(n_traj));
  const TrajectoryEnsemble ens =
      jump_monte_carlo(m, d, BlochState::excited(), 3.0, 0.0, n_traj, 991);
  for (std::size_t k = 0; k < ens.t.size(); ++k) {
    CHECK(std::abs(ens.rho[k](0, 0).real() - std::exp(-ens.t[k])) < bound);
    CHECK(std::abs(ens.rho[k](0, 1)) < bound);
  }
  CHECK(std::abs(ens.jumps_total.back() - (1.0 - std::exp(-3.0))) < bound);
  // a single excitation cannot emit twice
  CHECK(ens.jumps_total.back() <= 1.0);
}

TEST_CASE("undriven ground state is exactly inert") {
  const HPModel m = pure_decay_model();
  const Drive d = make_drive(CVec::Zero(1), 1.0);
  const TrajectoryEnsemble ens =
      jump_monte_carlo(m, d, BlochState::ground(), 2.0, 0.0, 200, 17);
  for (std::size_t k = 0; k < ens.t.size(); ++k) {
    CHECK(ens.rho[k](0, 0).real() == 0.0);
    CHECK(ens.jumps_total[k] == 0.0);
  }
}

TEST_CASE("ensembles are reproducible and seed-sensitive") {
  const HPModel m = make_random_model(52, 2);
  const Drive d = make_random_drive(52, m);
  const TrajectoryEnsemble a = jump_monte_carlo(m, d, BlochState::ground(), 1.5, 0.0, 120, 5);
  const TrajectoryEnsemble b = jump_monte_carlo(m, d, BlochState::ground(), 1.5, 0.0, 120, 5);
  const TrajectoryEnsemble c = jump_monte_carlo(m, d, BlochState::ground(), 1.5, 0.0, 120, 6);
  REQUIRE(a.rho.size() == b.rho.size());
  double max_ab = 0.0, max_ac = 0.0;
  for (std::size_t k = 0; k < a.rho.size(); ++k) {
    max_ab = std::max(max_ab, (a.rho[k] - b.rho[k]).cwiseAbs().maxCoeff());
    max_ac = std::max(max_ac, (a.rho[k] - c.rho[k]).cwiseAbs().maxCoeff());
  }
  CHECK(max_ab == 0.0);
  CHECK(max_ac > 0.0);
  CHECK(a.jumps_total == b.jumps_total);
}

TEST_CASE("step precondition is enforced") {
  const HPModel m = pure_decay_model();
  const Drive d = make_drive(CVec::Zero(1), 1.0);
  try {
    jump_monte_carlo(m, d, BlochState::excited(), 1.0, 0.5, 10, 1);
    FAIL("oversized step accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::StepTooLarge);
  }
}

TEST_CASE("ensemble mean matches the deterministic solution") {
  const int dims[] = {1, 2, 3};
  for (int i = 0; i < 3; ++i) {
    const HPModel m = make_random_model(8100 + i, dims[i]);
    const Drive d = make_random_drive(8100 + i, m);
    const double a2 = m.alpha.squaredNorm();
    const double t_end = 3.0 / a2;
    const int n_traj = 1000;
    const double bound = 4.0 / std::sqrt(static_cast<double>(n_traj));
    const TrajectoryEnsemble ens =
        jump_monte_carlo(m, d, BlochState::ground(), t_end, 0.0, n_traj, 40 + i, 25);
    double worst = 0.0;
    for (std::size_t k = 0; k < ens.t.size(); ++k) {
      const auto states = evolve(m, d, BlochState::ground(), ens.t[k]);
      worst = std::max(worst, trace_distance(ens.rho[k], states.back().rho()));
    }
    CHECK(worst < bound);
    const CountingRecord rec = photon_count(m, d, BlochState::ground(), t_end);
    CHECK(std::abs(ens.jumps_total.back() - rec.n_mean.back()) < bound);
  }
}

TEST_CASE("mixed initial states split the ensemble") {
  const HPModel m = pure_decay_model();
  const Drive d = make_drive(CVec::Zero(1), 1.0);
  BlochState init;
  init.u = 0.5;
  init.v = 0.0;
  const int n_traj = 20000;
  const TrajectoryEnsemble ens = jump_monte_carlo(m, d, init, 1.0, 0.0, n_traj, 77, 10);
  const double bound = 4.0 / std::sqrt(static_cast<double>(n_traj));
  CHECK(std::abs(ens.rho.front()(0, 0).real() - 0.5) < bound);
  CHECK(std::abs(ens.rho.back()(0, 0).real() - 0.5 * std::exp(-1.0)) < bound);
}

TEST_CASE("first-order bias halves with the step") {
  // Excited undriven survival is exactly (1 - dt)^k, so the deviation from
  // e^{-t} is an analytic O(dt) bias; statistics are kept far below it.
  const HPModel m = pure_decay_model();
  const Drive d = make_drive(CVec::Zero(1), 1.0);
  const double t_end = 2.0;
  const int n_traj = 400000;
  const double exact = std::exp(-t_end);

  auto bias = [&](double dt, std::uint64_t seed) {
    const TrajectoryEnsemble ens =
        jump_monte_carlo(m, d, BlochState::excited(), t_end, dt, n_traj, seed, 4);
    return ens.rho.back()(0, 0).real() - exact;
  };
  const double e1 = bias(0.05, 2101);
  const double e2 = bias(0.025, 2102);
  const double p1 = std::pow(1.0 - 0.05, t_end / 0.05) - exact;
  const double p2 = std::pow(1.0 - 0.025, t_end / 0.025) - exact;
  CHECK(std::abs(e1 - p1) < 3e-3);
  CHECK(std::abs(e2 - p2) < 3e-3);
  CHECK(e1 < 0.0);
  CHECK(e1 / e2 > 1.4);
  CHECK(e1 / e2 < 2.9);
}

TEST_CASE("default step obeys the channel-norm precondition") {
  const HPModel m = make_random_model(61, 3);
  const Drive d = make_random_drive(61, m);
  const double dt = default_jump_dt(m, d);
  CHECK(dt > 0.0);
  CHECK_NOTHROW(jump_monte_carlo(m, d, BlochState::ground(), 0.5, dt, 5, 1, 5));
}

TEST_SUITE_END();
