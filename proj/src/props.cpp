#include "reliamis/props.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace reliamis {

bool valid_component_name(const std::string& name) {
  if (name.empty()) return false;
  if (name == kSystemToken) return false;
  if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_')
    return false;
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

bool Dependency::operator<(const Dependency& o) const {
  if (causes.size() != o.causes.size()) return causes.size() < o.causes.size();
  if (causes != o.causes) return causes < o.causes;
  if (effects != o.effects) return effects < o.effects;
  return system < o.system;
}

namespace {

void require_declared(const PropertySet& p, const std::set<ComponentName>& names,
                      const char* role) {
  for (const auto& n : names) {
    if (!p.components.count(n))
      throw Error(Errc::kUndeclaredComponent,
                  std::string(role) + " mentions undeclared component '" + n + "'");
  }
}

}  // namespace

PropertySet normalize(const PropertySet& p) {
  if (p.bottom)
    throw Error(Errc::kBottomNotConcrete, "bottom element has no canonical triple");
  for (const auto& c : p.components) {
    if (!valid_component_name(c))
      throw Error(Errc::kInvalidComponentName, "invalid component name '" + c + "'");
    auto it = p.rel_bounds.find(c);
    if (it == p.rel_bounds.end())
      throw Error(Errc::kInvalidBound, "no reliability bound for '" + c + "'");
    if (it->second < 0 || it->second > 1)
      throw Error(Errc::kInvalidBound,
                  "bound for '" + c + "' outside [0,1]: " + render_exact(it->second));
  }
  for (const auto& [name, _] : p.rel_bounds) {
    if (!p.components.count(name))
      throw Error(Errc::kUndeclaredComponent,
                  "bound given for undeclared component '" + name + "'");
  }

  // Inaction, Tautology, then Union keyed by cause set.
  std::map<std::set<ComponentName>, Dependency> by_causes;
  for (const auto& d : p.deps) {
    require_declared(p, d.causes, "dependency cause set");
    require_declared(p, d.effects, "dependency effect set");
    if (d.causes.empty()) continue;
    Dependency nd = d;
    for (const auto& c : nd.causes) nd.effects.erase(c);
    auto [it, inserted] = by_causes.emplace(nd.causes, nd);
    if (!inserted) {
      it->second.effects.insert(nd.effects.begin(), nd.effects.end());
      it->second.system = it->second.system || nd.system;
    }
  }

  PropertySet out;
  out.components = p.components;
  out.rel_bounds = p.rel_bounds;
  for (auto& [_, d] : by_causes) out.deps.push_back(std::move(d));
  std::sort(out.deps.begin(), out.deps.end());
  return out;
}

WfReport check_well_formed(const PropertySet& p) {
  PropertySet n = normalize(p);
  WfReport report;
  report.initiality_ok = true;
  report.termination_ok = false;
  report.monotonicity_ok = true;

  for (const auto& c : n.components) {
    bool found = false;
    for (const auto& d : n.deps) {
      if (d.causes.size() == 1 && *d.causes.begin() == c) {
        found = true;
        break;
      }
    }
    if (!found) {
      report.initiality_ok = false;
      report.violations.push_back(
          {"Initiality", c, "component '" + c + "' has no sole-cause dependency"});
    }
  }

  for (const auto& d : n.deps) {
    if (d.system) {
      report.termination_ok = true;
      break;
    }
  }
  if (!report.termination_ok)
    report.violations.push_back(
        {"Termination", "D", "no dependency fails the system"});

  // For every pair with nested cause sets, the smaller dependency's effects
  // (with sys treated as an effect element) must be covered by the cause
  // difference plus the larger dependency's effects.
  for (const auto& small : n.deps) {
    for (const auto& large : n.deps) {
      if (&small == &large) continue;
      if (!std::includes(large.causes.begin(), large.causes.end(),
                         small.causes.begin(), small.causes.end()))
        continue;
      std::set<ComponentName> missing;
      for (const auto& e : small.effects) {
        if (!large.causes.count(e) && !large.effects.count(e))
          missing.insert(e);
      }
      bool sys_missing = small.system && !large.system;
      if (!missing.empty() || sys_missing) {
        report.monotonicity_ok = false;
        std::string miss;
        for (const auto& m : missing) miss += (miss.empty() ? "" : ", ") + m;
        if (sys_missing) miss += (miss.empty() ? "" : ", ") + std::string(kSystemToken);
        report.violations.push_back(
            {"Monotonicity", render_dep(large),
             "effects {" + miss + "} of " + render_dep(small) +
                 " not covered by " + render_dep(large)});
      }
    }
  }
  return report;
}

bool props_equal(const PropertySet& p, const PropertySet& q) {
  if (p.bottom || q.bottom) return p.bottom == q.bottom;
  return normalize(p) == normalize(q);
}

PropertySet monotonicity_closure(const PropertySet& p) {
  PropertySet out = normalize(p);
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& large : out.deps) {
      for (const auto& small : out.deps) {
        if (&small == &large) continue;
        if (!std::includes(large.causes.begin(), large.causes.end(),
                           small.causes.begin(), small.causes.end()))
          continue;
        for (const auto& e : small.effects) {
          if (!large.causes.count(e) && !large.effects.count(e)) {
            large.effects.insert(e);
            changed = true;
          }
        }
        if (small.system && !large.system) {
          large.system = true;
          changed = true;
        }
      }
    }
  }
  return normalize(out);
}

std::string render_dep(const Dependency& d) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& c : d.causes) {
    os << (first ? "" : ", ") << c;
    first = false;
  }
  os << "} ~> {";
  first = true;
  for (const auto& e : d.effects) {
    os << (first ? "" : ", ") << e;
    first = false;
  }
  if (d.system) os << (first ? "" : ", ") << kSystemToken;
  os << "}";
  return os.str();
}

std::string render_props(const PropertySet& p) {
  if (p.bottom) return "bottom (overdetermined)\n";
  std::ostringstream os;
  os << "components:";
  bool first = true;
  for (const auto& c : p.components) {
    os << (first ? " " : ", ") << c << " >= " << render_exact(p.rel_bounds.at(c));
    first = false;
  }
  os << "\ndeps:\n";
  for (const auto& d : p.deps) os << "  " << render_dep(d) << "\n";
  return os.str();
}

PropertySet make_props(
    const std::vector<std::pair<ComponentName, Rat>>& components,
    const std::vector<Dependency>& deps) {
  PropertySet p;
  for (const auto& [name, bound] : components) {
    p.components.insert(name);
    p.rel_bounds[name] = bound;
  }
  p.deps = deps;
  return p;
}

}  // namespace reliamis
