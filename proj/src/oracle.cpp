#include "reliamis/oracle.hpp"

#include <cmath>

namespace reliamis {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

struct PathCounter {
  std::uint64_t expanded = 0;
};

void enumerate_paths(const MisModel& m, std::size_t step, std::size_t state,
                     const Rat& mass, Rat& functional, PathCounter& counter) {
  if (++counter.expanded > 1000000)
    throw Error(Errc::kTooLarge, "path enumeration exceeded 10^6 partial paths");
  if (mass == 0) return;
  if (step == m.component_count()) {
    if (m.u[state]) functional += mass;
    return;
  }
  for (const auto& e : m.tpms[step][state])
    enumerate_paths(m, step + 1, static_cast<std::size_t>(e.to), mass * e.p,
                    functional, counter);
}

}  // namespace

double counter_uniform(std::uint64_t seed, std::uint64_t trial, std::uint64_t step) {
  std::uint64_t key = splitmix64(seed ^ (kGolden * (trial + 1)));
  std::uint64_t v = splitmix64(key ^ (0xBF58476D1CE4E5B9ULL * (step + 1)));
  return static_cast<double>(v >> 11) * 0x1.0p-53;
}

ReliabilityResult path_enum_reliability(const MisModel& m) {
  if (!model_valid(m))
    throw Error(Errc::kInvalidModel, "model fails structural validation");
  if (m.component_count() > 20)
    throw Error(Errc::kTooLarge, "path enumeration is limited to 20 components");
  Rat functional = 0;
  PathCounter counter;
  enumerate_paths(m, 0, 0, Rat(1), functional, counter);
  return {functional, EvalMethod::kPathEnum, std::nullopt, std::nullopt};
}

ReliabilityResult monte_carlo_reliability(const MisModel& m, const TrialConfig& cfg) {
  const MisModel sim = cfg.assignment ? reassign(m, *cfg.assignment) : m;
  if (!model_valid(sim))
    throw Error(Errc::kInvalidModel, "model fails structural validation");
  if (cfg.trials < 1) throw Error(Errc::kInvalidModel, "at least one trial required");

  // Per-row cumulative distributions in doubles.
  const std::size_t n = sim.component_count();
  const std::size_t ns = sim.state_count();
  std::vector<std::vector<std::vector<std::pair<double, int>>>> cdf(
      n, std::vector<std::vector<std::pair<double, int>>>(ns));
  for (std::size_t ci = 0; ci < n; ++ci) {
    for (std::size_t si = 0; si < ns; ++si) {
      double acc = 0;
      for (const auto& e : sim.tpms[ci][si]) {
        acc += to_double(e.p);
        cdf[ci][si].push_back({acc, e.to});
      }
      if (!cdf[ci][si].empty()) cdf[ci][si].back().first = 1.0;
    }
  }

  std::uint64_t functional = 0;
  for (std::uint64_t trial = 0; trial < cfg.trials; ++trial) {
    std::size_t state = 0;
    for (std::size_t ci = 0; ci < n; ++ci) {
      const auto& row = cdf[ci][state];
      if (row.size() == 1) {
        state = static_cast<std::size_t>(row[0].second);
        continue;
      }
      double r = counter_uniform(cfg.seed, trial, ci);
      for (const auto& [threshold, to] : row) {
        if (r < threshold) {
          state = static_cast<std::size_t>(to);
          break;
        }
      }
    }
    if (sim.u[state]) ++functional;
  }

  Rat estimate(BigInt(functional), BigInt(cfg.trials));
  double est = to_double(estimate);
  double half = 3.0 * std::sqrt(est * (1.0 - est) / static_cast<double>(cfg.trials));
  ReliabilityResult result;
  result.value = estimate;
  result.method = EvalMethod::kMonteCarlo;
  result.ci_halfwidth = half;
  result.trials = cfg.trials;
  return result;
}

}  // namespace reliamis
