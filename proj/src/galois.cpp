#include "reliamis/galois.hpp"

#include "reliamis/lattice.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace reliamis {

namespace {

struct SelectedDep {
  bool found = false;
  std::set<ComponentName> effects;
  bool system = false;
};

// The applicable dependency for component `ci` in a state whose failed set is
// `failed`: candidates contain ci among their causes with every other cause
// already failed; the maximal cause sets win and ties union their effects.
SelectedDep select_dep(const std::vector<Dependency>& deps, const ComponentName& ci,
                       const std::set<ComponentName>& failed) {
  std::vector<const Dependency*> cands;
  for (const auto& d : deps) {
    if (!d.causes.count(ci)) continue;
    bool fits = true;
    for (const auto& c : d.causes) {
      if (c != ci && !failed.count(c)) {
        fits = false;
        break;
      }
    }
    if (fits) cands.push_back(&d);
  }
  SelectedDep sel;
  for (const auto* d : cands) {
    bool maximal = true;
    for (const auto* e : cands) {
      if (e != d &&
          std::includes(e->causes.begin(), e->causes.end(), d->causes.begin(),
                        d->causes.end()) &&
          e->causes != d->causes) {
        maximal = false;
        break;
      }
    }
    if (!maximal) continue;
    sel.found = true;
    sel.effects.insert(d->effects.begin(), d->effects.end());
    sel.system = sel.system || d->system;
  }
  return sel;
}

std::set<ComponentName> mask_to_names(
    std::uint64_t mask, const std::vector<ComponentName>& order) {
  std::set<ComponentName> out;
  for (std::size_t i = 0; i < order.size(); ++i)
    if ((mask >> i) & 1) out.insert(order[i]);
  return out;
}

// Smallest sink configuration consistent with the components known to have
// failed; falls back to exactly those components when no metadata matches.
std::uint64_t resolve_sink_member(const std::set<std::uint64_t>& members,
                                  std::uint64_t needed) {
  std::uint64_t best = needed;
  bool found = false;
  for (std::uint64_t m : members) {
    if ((m & needed) != needed) continue;
    if (!found || std::popcount(m) < std::popcount(best) ||
        (std::popcount(m) == std::popcount(best) && m < best)) {
      best = m;
      found = true;
    }
  }
  return best;
}

}  // namespace

MisModel abstract_model(const PropertySet& p) {
  if (p.bottom)
    throw Error(Errc::kBottomNotConcrete, "bottom has no model representation");
  PropertySet n = normalize(p);
  WfReport wf = check_well_formed(n);
  if (!wf.ok())
    throw Error(Errc::kNotWellFormed,
                "property set is not well formed: " + wf.violations.front().rule +
                    " (" + wf.violations.front().message + ")");

  std::vector<ComponentName> order(n.components.begin(), n.components.end());
  const std::size_t nc = order.size();
  if (nc > 63) throw Error(Errc::kTooLarge, "too many components for a bitmask state space");

  // Frontier exploration over failed-set masks. Transitions are recorded per
  // (state, component); system-failing targets collapse into the sink.
  struct Probe {
    bool to_sink = false;
    std::uint64_t target = 0;
  };
  std::map<std::uint64_t, std::map<std::size_t, Probe>> transitions;
  std::set<std::uint64_t> seen{0};
  std::set<std::uint64_t> sink_members;
  std::vector<std::uint64_t> frontier{0};
  while (!frontier.empty()) {
    std::uint64_t f = frontier.back();
    frontier.pop_back();
    std::set<ComponentName> failed = mask_to_names(f, order);
    for (std::size_t i = 0; i < nc; ++i) {
      if ((f >> i) & 1) continue;
      SelectedDep sel = select_dep(n.deps, order[i], failed);
      if (!sel.found) continue;  // unreachable for WF inputs
      std::uint64_t target = f | (1ull << i);
      for (const auto& e : sel.effects) {
        auto it = std::find(order.begin(), order.end(), e);
        target |= 1ull << static_cast<std::size_t>(it - order.begin());
      }
      Probe probe;
      probe.to_sink = sel.system;
      probe.target = target;
      transitions[f][i] = probe;
      if (sel.system) {
        sink_members.insert(target);
      } else if (!seen.count(target)) {
        seen.insert(target);
        frontier.push_back(target);
      }
    }
  }

  MisModel m;
  for (const auto& c : order) m.components.push_back({c, n.rel_bounds.at(c)});
  for (std::uint64_t mask : seen) m.states.push_back({mask, false});
  std::sort(m.states.begin(), m.states.end(),
            [&](const MisState& a, const MisState& b) {
              return state_order_less(nc, a, b);
            });
  m.states.push_back({0, true});
  m.sink_members = sink_members;

  const std::size_t ns = m.states.size();
  const int sink = static_cast<int>(ns) - 1;
  m.tpms.assign(nc, std::vector<std::vector<TpmEntry>>(ns));
  for (std::size_t i = 0; i < nc; ++i) {
    const Rat p_i = m.components[i].second;
    const Rat q_i = Rat(1) - p_i;
    for (std::size_t si = 0; si < ns; ++si) {
      const MisState& s = m.states[si];
      auto& row = m.tpms[i][si];
      if (s.sink || ((s.failed >> i) & 1)) {
        row.push_back({static_cast<int>(si), Rat(1)});
        continue;
      }
      auto state_it = transitions.find(s.failed);
      const Probe* probe = nullptr;
      if (state_it != transitions.end()) {
        auto comp_it = state_it->second.find(i);
        if (comp_it != state_it->second.end()) probe = &comp_it->second;
      }
      if (!probe) {
        // Functional component with no applicable dependency (non-WF input
        // guarded above); keep the row stochastic.
        row.push_back({static_cast<int>(si), Rat(1)});
        continue;
      }
      int target = probe->to_sink ? sink : *m.state_index(probe->target);
      row.push_back({static_cast<int>(si), p_i});
      if (target < static_cast<int>(si)) {
        row.insert(row.begin(), {target, q_i});
      } else {
        row.push_back({target, q_i});
      }
    }
  }
  m.pi0.assign(ns, Rat(0));
  m.pi0[0] = 1;
  m.u.assign(ns, 1);
  m.u[ns - 1] = 0;
  return m;
}

PropertySet concretize_props(const MisModel& m) {
  if (!model_valid(m))
    throw Error(Errc::kInvalidModel, "model fails structural validation:\n" +
                                         render_violations(validate_model(m)));
  std::vector<ComponentName> order;
  for (const auto& [name, _] : m.components) order.push_back(name);
  const std::size_t nc = order.size();

  PropertySet out;
  for (const auto& [name, rel] : m.components) {
    out.components.insert(name);
    out.rel_bounds[name] = rel;
  }

  auto failure_entry = [&](std::size_t ci, std::size_t si) -> const TpmEntry* {
    for (const auto& e : m.tpms[ci][si])
      if (static_cast<std::size_t>(e.to) != si) return &e;
    return nullptr;
  };

  std::vector<Dependency> deps;
  auto add_unique = [&](Dependency d) {
    for (const auto& c : d.causes) d.effects.erase(c);
    if (std::find(deps.begin(), deps.end(), d) == deps.end())
      deps.push_back(std::move(d));
  };

  // Initial state: each component's failure transition names its sole-cause
  // dependency directly.
  for (std::size_t ci = 0; ci < nc; ++ci) {
    const TpmEntry* e = failure_entry(ci, 0);
    if (!e) continue;
    const MisState& t = m.states[static_cast<std::size_t>(e->to)];
    Dependency d;
    d.causes = {order[ci]};
    if (t.sink) {
      std::uint64_t member = resolve_sink_member(m.sink_members, 1ull << ci);
      d.effects = mask_to_names(member & ~(1ull << ci), order);
      d.system = true;
    } else {
      d.effects = mask_to_names(t.failed & ~(1ull << ci), order);
      d.system = false;
    }
    add_unique(std::move(d));
  }

  // Deeper transitions: compare the observed co-failure set against the
  // currently selected dependency and widen the cause set when they differ.
  for (std::size_t si = 1; si + 1 < m.state_count(); ++si) {
    const MisState& s = m.states[si];
    if (s.sink) continue;
    std::set<ComponentName> failed = mask_to_names(s.failed, order);
    for (std::size_t ci = 0; ci < nc; ++ci) {
      if ((s.failed >> ci) & 1) continue;
      const TpmEntry* e = failure_entry(ci, si);
      if (!e) continue;
      const MisState& t = m.states[static_cast<std::size_t>(e->to)];
      std::uint64_t needed = s.failed | (1ull << ci);
      std::set<ComponentName> co_failures;
      bool system = false;
      if (t.sink) {
        std::uint64_t member = resolve_sink_member(m.sink_members, needed);
        co_failures = mask_to_names(member & ~needed, order);
        system = true;
      } else {
        co_failures = mask_to_names(t.failed & ~needed, order);
      }
      SelectedDep sel = select_dep(deps, order[ci], failed);
      if (sel.found && sel.effects == co_failures && sel.system == system) continue;
      Dependency d;
      d.causes = failed;
      d.causes.insert(order[ci]);
      d.effects = co_failures;
      d.system = system;
      add_unique(std::move(d));
    }
  }

  out.deps = std::move(deps);
  return normalize(out);
}

RoundTripReport check_roundtrip_props(const PropertySet& p, int depth) {
  PropertySet n = normalize(p);
  PropertySet q = concretize_props(abstract_model(n));
  RoundTripReport report;
  report.direction = RoundTripDirection::kPropsFirst;
  report.lhs = render_props(n);
  report.rhs = render_props(q);
  if (props_equal(n, q)) {
    report.holds = true;
    report.relation_checked = "equality of canonical forms";
    return report;
  }
  OrderVerdict v = generalizes(n, q, depth);
  if (v.relation == OrderRelation::kLeqWitnessed) {
    report.holds = true;
    report.relation_checked = "generalization witness: p below concretize(abstract(p))";
    report.witness = v.witness;
  } else {
    report.holds = false;
    report.relation_checked =
        "no relation found within depth " + std::to_string(depth);
  }
  return report;
}

RoundTripReport check_roundtrip_model(const MisModel& m, int depth) {
  (void)depth;
  MisModel back = abstract_model(concretize_props(m));
  RoundTripReport report;
  report.direction = RoundTripDirection::kModelFirst;
  report.lhs = "model with " + std::to_string(m.state_count()) + " states";
  report.rhs = "model with " + std::to_string(back.state_count()) + " states";
  if (models_equal(m, back)) {
    report.holds = true;
    report.relation_checked = "canonical model equality";
    return report;
  }
  // Fallback relation: the round-tripped model may split reachable states
  // more finely while preserving the component set and the reliability.
  bool partition_refines = m.components == back.components;
  if (partition_refines) {
    std::set<std::uint64_t> mine, theirs;
    for (const auto& s : m.states)
      if (!s.sink) mine.insert(s.failed);
    for (const auto& s : back.states)
      if (!s.sink) theirs.insert(s.failed);
    partition_refines = std::includes(theirs.begin(), theirs.end(), mine.begin(),
                                      mine.end());
  }
  if (partition_refines && model_valid(m) && model_valid(back) &&
      evaluate_reliability(m).value == evaluate_reliability(back).value) {
    report.holds = true;
    report.relation_checked = "state-partition refinement with equal reliability";
  } else {
    report.holds = false;
    report.relation_checked = "models differ beyond state-partition refinement";
  }
  return report;
}

}  // namespace reliamis
