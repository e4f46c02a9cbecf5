#pragma once

// Shared fixtures: the worked systems from the modeling formalism and the
// top-to-2-of-3 refinement walkthrough, built through the public operators.

#include "reliamis/lattice.hpp"
#include "reliamis/ops.hpp"

#include <vector>

namespace reliamis::testing {

inline Rat frac(long long n, long long d) { return Rat(n, d); }

// Two parallel lines where either failure overloads the other.
inline PropertySet coupled_parallel(Rat p = frac(9, 10)) {
  return make_props({{"c1", p}, {"c2", p}},
                    {{{"c1"}, {"c2"}, true}, {{"c2"}, {"c1"}, true}});
}

inline PropertySet independent_parallel(Rat p1 = frac(9, 10), Rat p2 = frac(9, 10)) {
  return make_props({{"c1", p1}, {"c2", p2}},
                    {{{"c1"}, {}, false},
                     {{"c2"}, {}, false},
                     {{"c1", "c2"}, {}, true}});
}

inline PropertySet series(Rat p = frac(9, 10)) {
  return make_props({{"c1", p}, {"c2", p}},
                    {{{"c1"}, {}, true}, {{"c2"}, {}, true}});
}

// Three independent components; the system needs at least one of them.
inline PropertySet three_independent(Rat p = frac(9, 10)) {
  return make_props({{"c1", p}, {"c2", p}, {"c3", p}},
                    {{{"c1"}, {}, false},
                     {{"c2"}, {}, false},
                     {{"c3"}, {}, false},
                     {{"c1", "c2", "c3"}, {}, true}});
}

// The six-step refinement session from the most general system down to the
// 2-of-3 system, applied through the operators. ops[i] produces s_{i+1}.
inline OpScript walkthrough_script(Rat p = frac(9, 10)) {
  OpScript s;
  s.ops.push_back(TightenRel{"c", p});
  s.ops.push_back(Split{"c", "c1", "c2"});
  s.ops.push_back(RemoveDep{{"c1"}, {"c2"}, true});
  s.ops.push_back(Split{"c2", "c2", "c3"});
  s.ops.push_back(RemoveDep{{"c2"}, {"c1", "c3"}, true});
  s.ops.push_back(RemoveDep{{"c3"}, {"c1", "c2"}, true});
  return s;
}

// s1..s6 as reached by the walkthrough.
inline std::vector<PropertySet> walkthrough_states(Rat p = frac(9, 10)) {
  std::vector<PropertySet> out;
  PropertySet cur = top();
  for (const auto& op : walkthrough_script(p).ops) {
    cur = apply_op(cur, op);
    out.push_back(cur);
  }
  return out;
}

// The intermediate two-component system with c1 independent (s3 display).
inline PropertySet s3_printed(Rat p = frac(9, 10)) {
  return make_props({{"c1", p}, {"c2", p}},
                    {{{"c1"}, {}, false},
                     {{"c2"}, {"c1"}, true},
                     {{"c1", "c2"}, {}, true}});
}

// The 2-of-3 system as displayed in its final form.
inline PropertySet s6_printed(Rat p = frac(9, 10)) {
  return make_props({{"c1", p}, {"c2", p}, {"c3", p}},
                    {{{"c1"}, {}, false},
                     {{"c2"}, {}, false},
                     {{"c3"}, {}, false},
                     {{"c1", "c2"}, {}, true},
                     {{"c1", "c3"}, {"c2"}, true},
                     {{"c2", "c3"}, {"c1"}, true}});
}

}  // namespace reliamis::testing
