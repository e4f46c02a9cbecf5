#include "reliamis/ops.hpp"

#include <algorithm>
#include <sstream>

namespace reliamis {

namespace {

void require_component(const PropertySet& p, const ComponentName& c) {
  if (!p.components.count(c))
    throw Error(Errc::kUndeclaredComponent, "undeclared component '" + c + "'");
}

void require_not_bottom(const PropertySet& p) {
  if (p.bottom)
    throw Error(Errc::kBottomNotConcrete, "operation applied to bottom");
}

std::string render_set(const std::set<ComponentName>& s, bool system = false) {
  std::string out = "{";
  bool first = true;
  for (const auto& c : s) {
    out += (first ? "" : ", ") + c;
    first = false;
  }
  if (system) out += std::string(first ? "" : ", ") + kSystemToken;
  return out + "}";
}

}  // namespace

bool is_generalization(const ModelOp& op) {
  return std::holds_alternative<RelaxRel>(op) ||
         std::holds_alternative<Merge>(op) || std::holds_alternative<AddDep>(op);
}

bool is_refinement(const ModelOp& op) { return !is_generalization(op); }

std::string render_op(const ModelOp& op) {
  std::ostringstream os;
  if (auto* r = std::get_if<RelaxRel>(&op)) {
    os << "relax_rel " << r->component << " " << render_exact(r->bound);
  } else if (auto* t = std::get_if<TightenRel>(&op)) {
    os << "tighten_rel " << t->component << " " << render_exact(t->bound);
  } else if (auto* m = std::get_if<Merge>(&op)) {
    os << "merge " << m->first << " " << m->second << " " << m->merged;
  } else if (auto* s = std::get_if<Split>(&op)) {
    os << "split " << s->component << " " << s->into_first << " " << s->into_second;
  } else if (auto* a = std::get_if<AddDep>(&op)) {
    os << "add_dep " << render_set(a->causes) << " " << render_set(a->effects, a->system);
  } else if (auto* d = std::get_if<RemoveDep>(&op)) {
    os << "remove_dep " << render_set(d->causes) << " " << render_set(d->effects, d->system);
  }
  return os.str();
}

PropertySet relax_rel(const PropertySet& p, const ComponentName& c, const Rat& r) {
  require_not_bottom(p);
  require_component(p, c);
  if (r < 0 || r > 1)
    throw Error(Errc::kInvalidBound, "bound outside [0,1]: " + render_exact(r));
  PropertySet out = normalize(p);
  if (r >= out.rel_bounds.at(c))
    throw Error(Errc::kNotARelaxation,
                render_exact(r) + " does not lower the bound " +
                    render_exact(out.rel_bounds.at(c)) + " on '" + c + "'");
  out.rel_bounds[c] = r;
  return out;
}

PropertySet tighten_rel(const PropertySet& p, const ComponentName& c, const Rat& r) {
  require_not_bottom(p);
  require_component(p, c);
  if (r < 0 || r > 1)
    throw Error(Errc::kInvalidBound, "bound outside [0,1]: " + render_exact(r));
  PropertySet out = normalize(p);
  if (r <= out.rel_bounds.at(c))
    throw Error(Errc::kNotARefinement,
                render_exact(r) + " does not raise the bound " +
                    render_exact(out.rel_bounds.at(c)) + " on '" + c + "'");
  out.rel_bounds[c] = r;
  return out;
}

PropertySet merge(const PropertySet& p, const ComponentName& c1,
                  const ComponentName& c2, const ComponentName& cm) {
  require_not_bottom(p);
  require_component(p, c1);
  require_component(p, c2);
  if (c1 == c2) throw Error(Errc::kSameComponent, "cannot merge '" + c1 + "' with itself");
  if (!valid_component_name(cm))
    throw Error(Errc::kInvalidComponentName, "invalid merged name '" + cm + "'");
  if (p.components.count(cm) && cm != c1 && cm != c2)
    throw Error(Errc::kNameCollision, "'" + cm + "' already names another component");

  PropertySet n = normalize(p);
  PropertySet out;
  for (const auto& c : n.components)
    if (c != c1 && c != c2) out.components.insert(c);
  out.components.insert(cm);
  for (const auto& c : out.components) {
    if (c == cm)
      out.rel_bounds[cm] = std::min(n.rel_bounds.at(c1), n.rel_bounds.at(c2));
    else
      out.rel_bounds[c] = n.rel_bounds.at(c);
  }

  auto subst = [&](const std::set<ComponentName>& s) {
    std::set<ComponentName> r;
    bool hit = false;
    for (const auto& c : s) {
      if (c == c1 || c == c2)
        hit = true;
      else
        r.insert(c);
    }
    if (hit) r.insert(cm);
    return r;
  };
  for (const auto& d : n.deps)
    out.deps.push_back({subst(d.causes), subst(d.effects), d.system});
  // Renaming can create fresh nested-cause pairs; close them off.
  return monotonicity_closure(out);
}

PropertySet split(const PropertySet& p, const ComponentName& cm,
                  const ComponentName& c1, const ComponentName& c2) {
  require_not_bottom(p);
  require_component(p, cm);
  if (c1 == c2)
    throw Error(Errc::kNameCollision, "split halves must be distinct names");
  for (const auto& name : {c1, c2}) {
    if (!valid_component_name(name))
      throw Error(Errc::kInvalidComponentName, "invalid component name '" + name + "'");
    if (p.components.count(name) && name != cm)
      throw Error(Errc::kNameCollision, "'" + name + "' already names another component");
  }

  PropertySet n = normalize(p);
  PropertySet out;
  for (const auto& c : n.components)
    if (c != cm) out.components.insert(c);
  out.components.insert(c1);
  out.components.insert(c2);
  for (const auto& c : out.components) {
    if (c == c1 || c == c2)
      out.rel_bounds[c] = n.rel_bounds.at(cm);
    else
      out.rel_bounds[c] = n.rel_bounds.at(c);
  }

  for (const auto& d : n.deps) {
    if (d.causes.count(cm)) {
      std::set<ComponentName> rest = d.causes;
      rest.erase(cm);
      auto with = [&](std::initializer_list<ComponentName> add) {
        std::set<ComponentName> s = rest;
        s.insert(add);
        return s;
      };
      std::set<ComponentName> e1 = d.effects;
      e1.insert(c2);
      std::set<ComponentName> e2 = d.effects;
      e2.insert(c1);
      out.deps.push_back({with({c1, c2}), d.effects, d.system});
      out.deps.push_back({with({c1}), e1, d.system});
      out.deps.push_back({with({c2}), e2, d.system});
    } else if (d.effects.count(cm)) {
      std::set<ComponentName> rest = d.effects;
      rest.erase(cm);
      std::set<ComponentName> both = rest;
      both.insert(c1);
      both.insert(c2);
      std::set<ComponentName> only1 = rest;
      only1.insert(c1);
      std::set<ComponentName> only2 = rest;
      only2.insert(c2);
      out.deps.push_back({d.causes, both, d.system});
      out.deps.push_back({d.causes, only1, d.system});
      out.deps.push_back({d.causes, only2, d.system});
    } else {
      out.deps.push_back(d);
    }
  }
  return monotonicity_closure(out);
}

PropertySet add_dep(const PropertySet& p, const std::set<ComponentName>& causes,
                    const std::set<ComponentName>& effects, bool system) {
  require_not_bottom(p);
  if (causes.empty())
    throw Error(Errc::kEmptyCauses, "a dependency with no causes cannot occur");
  for (const auto& c : causes) require_component(p, c);
  for (const auto& e : effects) {
    require_component(p, e);
    if (causes.count(e))
      throw Error(Errc::kEffectInCauses, "effect '" + e + "' appears among the causes");
  }

  PropertySet out = normalize(p);
  // Fold the single-effect rule over the sorted effects, system flag last.
  // Each step rewrites every superset-cause dependency that does not already
  // carry the effect among its own causes (those pairs satisfy Monotonicity
  // as they stand), then inserts the new dependency with the union of all
  // subset-cause effects.
  std::vector<std::pair<ComponentName, bool>> steps;  // (effect, is_system)
  for (const auto& e : effects) steps.push_back({e, false});
  if (system) steps.push_back({kSystemToken, true});
  if (steps.empty()) steps.push_back({"", false});  // still insert the u-dependency

  for (const auto& [effect, is_sys] : steps) {
    std::vector<Dependency> next;
    for (const auto& d : out.deps) {
      Dependency nd = d;
      bool superset = std::includes(d.causes.begin(), d.causes.end(),
                                    causes.begin(), causes.end());
      if (superset) {
        if (is_sys)
          nd.system = true;
        else if (!effect.empty() && !d.causes.count(effect))
          nd.effects.insert(effect);
      }
      next.push_back(std::move(nd));
    }
    Dependency fresh;
    fresh.causes = causes;
    for (const auto& d : out.deps) {
      if (std::includes(causes.begin(), causes.end(), d.causes.begin(),
                        d.causes.end())) {
        fresh.effects.insert(d.effects.begin(), d.effects.end());
        fresh.system = fresh.system || d.system;
      }
    }
    if (is_sys)
      fresh.system = true;
    else if (!effect.empty())
      fresh.effects.insert(effect);
    next.push_back(std::move(fresh));
    out.deps = std::move(next);
    out = normalize(out);
  }
  return out;
}

PropertySet remove_dep(const PropertySet& p, const std::set<ComponentName>& causes,
                       const std::set<ComponentName>& effects, bool system) {
  require_not_bottom(p);
  if (causes.empty())
    throw Error(Errc::kEmptyCauses, "a dependency with no causes cannot occur");
  if (effects.empty() && !system)
    throw Error(Errc::kEmptyCauses, "nothing to remove");
  for (const auto& c : causes) require_component(p, c);
  for (const auto& e : effects) {
    require_component(p, e);
    if (causes.count(e))
      throw Error(Errc::kEffectInCauses, "effect '" + e + "' appears among the causes");
  }

  PropertySet out = normalize(p);
  for (auto& d : out.deps) {
    if (!std::includes(causes.begin(), causes.end(), d.causes.begin(),
                       d.causes.end()))
      continue;
    for (const auto& e : effects) d.effects.erase(e);
    if (system) d.system = false;
  }
  out = normalize(out);

  WfReport wf = check_well_formed(out);
  if (!wf.termination_ok)
    throw Error(Errc::kBreaksTermination,
                "removal leaves no system-failing dependency");
  if (!wf.monotonicity_ok)
    throw Error(Errc::kBreaksMonotonicity,
                "removal violates Monotonicity: " + wf.violations.front().message);
  return out;
}

PropertySet apply_op(const PropertySet& p, const ModelOp& op) {
  if (auto* r = std::get_if<RelaxRel>(&op)) return relax_rel(p, r->component, r->bound);
  if (auto* t = std::get_if<TightenRel>(&op)) return tighten_rel(p, t->component, t->bound);
  if (auto* m = std::get_if<Merge>(&op)) return merge(p, m->first, m->second, m->merged);
  if (auto* s = std::get_if<Split>(&op)) return split(p, s->component, s->into_first, s->into_second);
  if (auto* a = std::get_if<AddDep>(&op)) return add_dep(p, a->causes, a->effects, a->system);
  const auto& d = std::get<RemoveDep>(op);
  return remove_dep(p, d.causes, d.effects, d.system);
}

PropertySet apply_script(const OpScript& script, const PropertySet& p) {
  require_not_bottom(p);
  PropertySet cur = p;
  for (std::size_t i = 0; i < script.ops.size(); ++i) {
    try {
      cur = apply_op(cur, script.ops[i]);
    } catch (const Error& e) {
      Error tagged(e.code(), "op " + std::to_string(i) + " (" +
                                 render_op(script.ops[i]) + "): " + e.what());
      tagged.set_script_index(static_cast<int>(i));
      throw tagged;
    }
  }
  return cur;
}

}  // namespace reliamis
