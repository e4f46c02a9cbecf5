#pragma once

#include "reliamis/mis.hpp"

#include <cstdint>

namespace reliamis {

struct TrialConfig {
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  std::optional<std::map<ComponentName, Rat>> assignment;
};

// Independent recomputation of the reliability by exhaustive enumeration of
// chain paths (one step per component), multiplying branch probabilities and
// summing the mass on functional terminals. Exact rational arithmetic.
// Throws TooLarge past 20 components or 10^6 partial paths.
ReliabilityResult path_enum_reliability(const MisModel& m);

// Seeded Monte Carlo simulation of the chain. Bit-reproducible for a fixed
// seed regardless of scheduling: every random draw is a pure function of
// (seed, trial, step) through a SplitMix64 counter scheme. Reports a 3-sigma
// binomial half-width.
ReliabilityResult monte_carlo_reliability(const MisModel& m, const TrialConfig& cfg);

// The counter-based generator behind the simulation, exposed for tests.
double counter_uniform(std::uint64_t seed, std::uint64_t trial, std::uint64_t step);

}  // namespace reliamis
