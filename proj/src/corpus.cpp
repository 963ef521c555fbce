#include "fluxatom/corpus.hpp"

#include <cmath>

namespace fluxatom {

HPModel make_random_model(std::uint64_t seed, int n) {
  if (n < 1) fail(Errc::DimensionMismatch, "corpus model dimension must be >= 1");
  SplitMix64 rng(splitmix_hash(seed ^ 0x6d6f64656cull));
  const double omega0 = 0.8 + 0.8 * rng.uniform01();
  const double a2 = 0.6 + 0.8 * rng.uniform01();
  CVec alpha(n);
  for (int j = 0; j < n; ++j) alpha(j) = cx(rng.normal(), rng.normal());
  alpha *= std::sqrt(a2) / alpha.norm();
  CMat sp = haar_unitary(n, splitmix_hash(seed ^ 0x73706c7573ull));
  CMat sm = haar_unitary(n, splitmix_hash(seed ^ 0x736d696e7573ull));
  return make_model(omega0, std::move(alpha), std::move(sp), std::move(sm));
}

Drive make_random_drive(std::uint64_t seed, const HPModel& m) {
  SplitMix64 rng(splitmix_hash(seed ^ 0x6472697665ull));
  const double lnorm = 0.2 + 0.5 * rng.uniform01();
  CVec lambda(m.n);
  for (int j = 0; j < m.n; ++j) lambda(j) = cx(rng.normal(), rng.normal());
  lambda *= lnorm / lambda.norm();
  const double omega = m.omega0 + 0.8 * (rng.uniform01() - 0.5);
  return make_drive(std::move(lambda), omega);
}

SphericalModel make_random_spherical(std::uint64_t seed) {
  SplitMix64 rng(splitmix_hash(seed ^ 0x7370686572ull));
  const int L = 1 + static_cast<int>(rng.next() % 3);
  std::vector<double> dp(static_cast<std::size_t>(L) + 1), dm(static_cast<std::size_t>(L) + 1);
  for (std::size_t l = 0; l < dp.size(); ++l) {
    dp[l] = -0.5 + rng.uniform01();
    dm[l] = -0.5 + rng.uniform01();
  }
  const double alpha_norm = std::sqrt(0.6 + 0.8 * rng.uniform01());
  const double eta = 0.2 + 1.3 * rng.uniform01();
  const double delta = 2.0 * pi * rng.uniform01();
  const double omega0 = 0.8 + 0.8 * rng.uniform01();
  const double omega = omega0 + 0.8 * (rng.uniform01() - 0.5);
  return spherical_from_phase_shifts(dp, dm, alpha_norm, eta, delta, omega0, omega);
}

}  // namespace fluxatom
