#pragma once

#include "reliamis/props.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

namespace reliamis {

// One Markov-chain state. Functional states are identified by the set of
// failed components (a bitmask over the model's component order); the single
// absorbing sink aggregates every system-failed configuration.
struct MisState {
  std::uint64_t failed = 0;
  bool sink = false;

  bool operator==(const MisState&) const = default;
};

struct TpmEntry {
  int to = 0;
  Rat p;

  bool operator==(const TpmEntry&) const = default;
};

// MIS model: ordered components with reliabilities, states in canonical order
// (initial first, sink last), one sparse row-stochastic TPM per component,
// the initial distribution and the functional-indicator vector.
//
// `sink_members` records which failed configurations the sink aggregates
// (the superstate's contents); it is derived metadata used by concretization
// and excluded from model equality.
struct MisModel {
  std::vector<std::pair<ComponentName, Rat>> components;
  std::vector<MisState> states;
  std::set<std::uint64_t> sink_members;
  std::vector<std::vector<std::vector<TpmEntry>>> tpms;  // [component][state]
  std::vector<Rat> pi0;
  std::vector<int> u;

  std::size_t component_count() const { return components.size(); }
  std::size_t state_count() const { return states.size(); }
  int component_index(const ComponentName& name) const;
  std::optional<int> state_index(std::uint64_t failed_mask) const;
  int sink_index() const;
  // Bitstring over the component order, 1 = functional; sink is all zeros.
  std::string state_label(int state) const;
};

// Canonical state order: fewer failures first, then by the label bitstring
// read as a binary number; sink last.
bool state_order_less(std::size_t n_components, const MisState& a, const MisState& b);

enum class EvalMethod { kAnalytic, kPathEnum, kMonteCarlo };

struct ReliabilityResult {
  Rat value;
  EvalMethod method = EvalMethod::kAnalytic;
  std::optional<double> ci_halfwidth;       // Monte Carlo only
  std::optional<std::uint64_t> trials;      // Monte Carlo only
};

enum class Severity { kError, kWarning };

struct ModelViolation {
  Severity severity = Severity::kError;
  std::string rule;
  std::string where;
  std::string message;
};

// Structural validation: row sums, no-repair triangularity, absorbing sink,
// per-component reliability consistency, pi0/u shape, canonical state order.
// Unreachable states are reported as warnings, not errors.
std::vector<ModelViolation> validate_model(const MisModel& m);

// True when validate_model reports no error-severity violations.
bool model_valid(const MisModel& m);

// Pi0^T * T1 * ... * Tn * u in exact rational arithmetic.
ReliabilityResult evaluate_reliability(const MisModel& m);

// Rebuilds the TPM entries for the assigned reliabilities (structure
// unchanged) and evaluates. The assignment must cover every component.
ReliabilityResult evaluate_at(const MisModel& m,
                              const std::map<ComponentName, Rat>& assignment);
MisModel reassign(const MisModel& m, const std::map<ComponentName, Rat>& assignment);

// Canonical equality: components, bounds, states, TPM entries, pi0 and u.
// sink_members metadata is ignored.
bool models_equal(const MisModel& a, const MisModel& b);

std::string render_violations(const std::vector<ModelViolation>& vs);

}  // namespace reliamis
