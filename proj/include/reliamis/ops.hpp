#pragma once

#include "reliamis/props.hpp"

#include <variant>
#include <vector>

namespace reliamis {

// The six one-step operators. RelaxRel/Merge/AddDep generalize; the other
// three refine. AddDep/RemoveDep carry an effect set plus the system flag;
// the single-effect rule is folded over a canonical sort of the effects.
struct RelaxRel {
  ComponentName component;
  Rat bound;
};
struct TightenRel {
  ComponentName component;
  Rat bound;
};
struct Merge {
  ComponentName first, second, merged;
};
struct Split {
  ComponentName component, into_first, into_second;
};
struct AddDep {
  std::set<ComponentName> causes;
  std::set<ComponentName> effects;
  bool system = false;
};
struct RemoveDep {
  std::set<ComponentName> causes;
  std::set<ComponentName> effects;
  bool system = false;
};

using ModelOp = std::variant<RelaxRel, TightenRel, Merge, Split, AddDep, RemoveDep>;

struct OpScript {
  std::vector<ModelOp> ops;
};

bool is_generalization(const ModelOp& op);
bool is_refinement(const ModelOp& op);
std::string render_op(const ModelOp& op);

// Lower the bound on c to r < R(c). Errors: UndeclaredComponent,
// NotARelaxation.
PropertySet relax_rel(const PropertySet& p, const ComponentName& c, const Rat& r);

// Raise the bound on c to r > R(c); exact inverse of relax_rel on bounds.
PropertySet tighten_rel(const PropertySet& p, const ComponentName& c, const Rat& r);

// Merge c1 and c2 into cm: bound is min of the two, every dependency is
// rewritten by substituting cm, and the result is normalized. |C| drops by 1.
PropertySet merge(const PropertySet& p, const ComponentName& c1,
                  const ComponentName& c2, const ComponentName& cm);

// Split cm into c1 and c2, each fully dependent on the other; the maximal
// element that merges back to p. |C| grows by 1.
PropertySet split(const PropertySet& p, const ComponentName& cm,
                  const ComponentName& c1, const ComponentName& c2);

// Add a dependency from `causes` to each effect (and the system flag): every
// dependency whose cause set contains `causes` and does not already carry the
// effect among its causes gains it, and a new dependency from `causes` is
// inserted with the union of all subset-cause effects. Preserves
// Monotonicity.
PropertySet add_dep(const PropertySet& p, const std::set<ComponentName>& causes,
                    const std::set<ComponentName>& effects, bool system);

// Remove the given effects (and system flag, if set) from every dependency
// whose cause set is contained in `causes`. Errors when Termination or
// Monotonicity would break.
PropertySet remove_dep(const PropertySet& p, const std::set<ComponentName>& causes,
                       const std::set<ComponentName>& effects, bool system);

PropertySet apply_op(const PropertySet& p, const ModelOp& op);

// Left fold of the ops over p; the empty script is the identity. Errors are
// re-thrown tagged with the failing index.
PropertySet apply_script(const OpScript& script, const PropertySet& p);

}  // namespace reliamis
