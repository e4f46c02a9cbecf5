#pragma once

#include "reliamis/errors.hpp"
#include "reliamis/rational.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace reliamis {

// Component names follow identifier grammar and may never be the reserved
// system token; the system is a flag on dependency effects, not a component.
using ComponentName = std::string;

inline constexpr const char* kSystemToken = "sys";

bool valid_component_name(const std::string& name);

// A dependency <causes> ~> <effects [, sys]>: the joint failure of every
// cause immediately fails every effect, and the system when `system` is set.
struct Dependency {
  std::set<ComponentName> causes;
  std::set<ComponentName> effects;
  bool system = false;

  bool operator==(const Dependency&) const = default;
  // Canonical display/serialization order: |causes| first, then causes
  // lexicographically.
  bool operator<(const Dependency& o) const;
};

// The constraints triple (C, R, D). R maps each component to a lower bound on
// its reliability. `bottom` marks the overdetermined sentinel; when set, all
// other fields are empty.
struct PropertySet {
  std::set<ComponentName> components;
  std::map<ComponentName, Rat> rel_bounds;
  std::vector<Dependency> deps;
  bool bottom = false;

  bool operator==(const PropertySet&) const = default;
};

struct WfViolation {
  std::string rule;     // "Initiality" | "Termination" | "Monotonicity"
  std::string where;    // offending dependency or component, rendered
  std::string message;
};

struct WfReport {
  bool initiality_ok = false;
  bool termination_ok = false;
  bool monotonicity_ok = false;
  std::vector<WfViolation> violations;

  bool ok() const {
    return initiality_ok && termination_ok && monotonicity_ok &&
           violations.empty();
  }
};

// Canonical form under the three equivalences: effects never overlap causes
// (Tautology), one dependency per cause set (Union), no empty-cause
// dependencies (Inaction). Deterministic ordering; idempotent. Throws
// UndeclaredComponent when a dependency mentions a name outside C.
PropertySet normalize(const PropertySet& p);

// Initiality, Termination and Monotonicity over the normalized form.
// Violations are reported, never thrown.
WfReport check_well_formed(const PropertySet& p);

// Equality of canonical forms; the bottom sentinel equals only itself.
bool props_equal(const PropertySet& p, const PropertySet& q);

// Widens effect sets until every nested-cause pair satisfies Monotonicity.
// Only adds effects that are already semantically implied (the smaller
// dependency fires whenever the larger one does), so the induced chain is
// unchanged. Component renamings create new nested pairs, which is why merge
// runs this after substitution.
PropertySet monotonicity_closure(const PropertySet& p);

// Stable one-line-per-item text rendering, used by reports and the REPL.
std::string render_dep(const Dependency& d);
std::string render_props(const PropertySet& p);

// Test/construction helper: builds the triple from (name, bound) pairs and a
// dependency list, without normalizing.
PropertySet make_props(
    const std::vector<std::pair<ComponentName, Rat>>& components,
    const std::vector<Dependency>& deps);

}  // namespace reliamis
