#pragma once

#include "reliamis/ops.hpp"

#include <optional>

namespace reliamis {

enum class OrderRelation { kLeqWitnessed, kNotLeqWithinBound, kEqual };

struct OrderVerdict {
  OrderRelation relation = OrderRelation::kNotLeqWithinBound;
  std::optional<OpScript> witness;  // replaying it on p yields q
  int depth_searched = 0;
};

// The most general element: one component, unconstrained reliability, one
// system-failing dependency.
PropertySet top();

// The overdetermined sentinel below every element.
PropertySet bottom();

// Bounded decision procedure for p below-or-equal q: breadth-first search
// over generalization moves from p (merges, reliability relaxations toward
// bounds occurring in q, and dependency additions aimed at q's dependency
// set), memoized on canonical forms. A kNotLeqWithinBound verdict is
// inconclusive, not a refutation. Throws DepthZero.
OrderVerdict generalizes(const PropertySet& p, const PropertySet& q, int depth);

// True when q = r(p) has no element strictly between q and p: enumerates the
// generalization up-set of q over the bounded universe (names from p and q,
// bounds from the derived grid) and tests each element against p. Guarded by
// UniverseTooLarge for more than 3 components or more than 4 grid values.
bool covers_check(const PropertySet& p, const ModelOp& refinement);

// Meets and joins are deliberately not provided.
PropertySet meet(const PropertySet& a, const PropertySet& b);
PropertySet join(const PropertySet& a, const PropertySet& b);

}  // namespace reliamis
