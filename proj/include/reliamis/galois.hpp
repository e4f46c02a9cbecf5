#pragma once

#include "reliamis/mis.hpp"
#include "reliamis/ops.hpp"

namespace reliamis {

enum class RoundTripDirection { kPropsFirst, kModelFirst };

struct RoundTripReport {
  RoundTripDirection direction = RoundTripDirection::kPropsFirst;
  bool holds = false;
  std::string lhs;               // canonical rendering of the starting object
  std::string rhs;               // canonical rendering of the round-tripped one
  std::string relation_checked;  // which relation established `holds`
  std::optional<OpScript> witness;
};

// Abstraction: frontier construction of the Markov chain from the initial
// fully-functional state. For each reachable functional state and functional
// component, the applicable dependency is the one whose cause set (minus the
// component) fits inside the failed set and is maximal; ties union their
// effects. System-failing targets collapse into the single sink, whose
// aggregated configurations are recorded as sink_members.
MisModel abstract_model(const PropertySet& p);

// Concretization: one component per TPM; initial-state failure transitions
// yield the sole-cause dependencies, deeper transitions add a wider-cause
// dependency whenever the observed co-failure set differs from the effects of
// the currently selected dependency. Sink targets are resolved against
// sink_members (smallest consistent configuration), defaulting to "no
// co-failures" when no metadata is available.
PropertySet concretize_props(const MisModel& m);

// Round trip, props first: q = concretize(abstract(p)); holds when the
// canonical forms are equal or a generalization witness shows p below q.
RoundTripReport check_roundtrip_props(const PropertySet& p, int depth);

// Round trip (model first): m' = abstract(concretize(m)); holds on canonical
// model equality, or when m' refines m's state partition.
RoundTripReport check_roundtrip_model(const MisModel& m, int depth);

}  // namespace reliamis
