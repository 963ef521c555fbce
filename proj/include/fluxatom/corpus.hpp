#pragma once

#include "fluxatom/spherical.hpp"

namespace fluxatom {

// Seeded random instances for property suites and the validate command.
// Scales are kept near unity so identity residuals sit at rounding level.
HPModel make_random_model(std::uint64_t seed, int n);
Drive make_random_drive(std::uint64_t seed, const HPModel& m);
SphericalModel make_random_spherical(std::uint64_t seed);

}  // namespace fluxatom
