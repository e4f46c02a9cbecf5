#include "reliamis/mis.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace reliamis {

int MisModel::component_index(const ComponentName& name) const {
  for (std::size_t i = 0; i < components.size(); ++i)
    if (components[i].first == name) return static_cast<int>(i);
  return -1;
}

std::optional<int> MisModel::state_index(std::uint64_t failed_mask) const {
  for (std::size_t i = 0; i < states.size(); ++i)
    if (!states[i].sink && states[i].failed == failed_mask)
      return static_cast<int>(i);
  return std::nullopt;
}

int MisModel::sink_index() const {
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i].sink) return static_cast<int>(i);
  return -1;
}

std::string MisModel::state_label(int state) const {
  const MisState& s = states[static_cast<std::size_t>(state)];
  std::string out(component_count(), '0');
  if (!s.sink) {
    for (std::size_t i = 0; i < component_count(); ++i)
      out[i] = (s.failed >> i) & 1 ? '0' : '1';
  }
  return out;
}

namespace {

std::uint64_t label_number(std::size_t n, const MisState& s) {
  if (s.sink) return 0;
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < n; ++i) {
    v <<= 1;
    v |= ((s.failed >> i) & 1) ? 0u : 1u;
  }
  return v;
}

}  // namespace

bool state_order_less(std::size_t n, const MisState& a, const MisState& b) {
  if (a.sink != b.sink) return b.sink;  // sink last
  if (a.sink) return false;
  auto ca = std::popcount(a.failed), cb = std::popcount(b.failed);
  if (ca != cb) return ca < cb;
  return label_number(n, a) < label_number(n, b);
}

std::vector<ModelViolation> validate_model(const MisModel& m) {
  std::vector<ModelViolation> out;
  auto err = [&](const std::string& rule, const std::string& where,
                 const std::string& msg) {
    out.push_back({Severity::kError, rule, where, msg});
  };
  auto warn = [&](const std::string& rule, const std::string& where,
                  const std::string& msg) {
    out.push_back({Severity::kWarning, rule, where, msg});
  };

  const std::size_t n = m.component_count();
  const std::size_t ns = m.state_count();
  if (n == 0) err("shape", "components", "model has no components");
  if (ns < 2) {
    err("shape", "states", "model needs an initial state and a sink");
    return out;
  }
  if (m.states.front().sink || m.states.front().failed != 0)
    err("shape", "states[0]", "initial state must be the fully functional one");
  int sinks = 0;
  for (const auto& s : m.states) sinks += s.sink ? 1 : 0;
  if (sinks != 1) err("shape", "states", "model must have exactly one failed sink");
  if (sinks == 1 && !m.states.back().sink)
    err("shape", "states", "failed sink must be the last state");
  for (std::size_t i = 0; i + 1 < ns; ++i) {
    if (!state_order_less(n, m.states[i], m.states[i + 1]))
      err("shape", "states", "states are not in canonical order");
  }
  for (std::size_t i = 0; i < ns; ++i) {
    for (std::size_t j = i + 1; j < ns; ++j) {
      if (m.states[i] == m.states[j])
        err("shape", "states", "duplicate state " + m.state_label(static_cast<int>(i)));
    }
    if (!m.states[i].sink && n < 64 && m.states[i].failed >> n)
      err("shape", "states", "state failed-set mentions unknown components");
  }

  if (m.tpms.size() != n) err("shape", "tpms", "one TPM required per component");
  if (m.pi0.size() != ns) err("shape", "pi0", "pi0 length must match state count");
  if (m.u.size() != ns) err("shape", "u", "u length must match state count");
  if (!out.empty() &&
      std::any_of(out.begin(), out.end(),
                  [](const ModelViolation& v) { return v.severity == Severity::kError; }))
    return out;

  for (std::size_t i = 0; i < ns; ++i) {
    if (m.pi0[i] != (i == 0 ? Rat(1) : Rat(0)))
      err("pi0", "pi0[" + std::to_string(i) + "]", "pi0 must be [1, 0, ...]");
    int want = m.states[i].sink ? 0 : 1;
    if (m.u[i] != want)
      err("u", "u[" + std::to_string(i) + "]",
          "u must mark exactly the functional states");
  }

  for (std::size_t ci = 0; ci < n; ++ci) {
    const auto& [name, rel] = m.components[ci];
    if (rel < 0 || rel > 1)
      err("reliability", name, "component reliability outside [0,1]");
    if (m.tpms[ci].size() != ns) {
      err("shape", name, "TPM must have one row per state");
      continue;
    }
    for (std::size_t si = 0; si < ns; ++si) {
      const auto& row = m.tpms[ci][si];
      const MisState& s = m.states[si];
      std::string where = name + ", row " + m.state_label(static_cast<int>(si));
      Rat sum = 0;
      Rat off_diag = 0;
      int off_diag_entries = 0;
      for (const auto& e : row) {
        if (e.to < 0 || e.to >= static_cast<int>(ns)) {
          err("shape", where, "transition target out of range");
          continue;
        }
        if (e.p < 0 || e.p > 1)
          err("stochastic", where, "transition probability outside [0,1]");
        sum += e.p;
        const MisState& t = m.states[static_cast<std::size_t>(e.to)];
        if (e.p > 0 && !t.sink && !s.sink) {
          if ((s.failed & ~t.failed) != 0)
            err("no-repair", where,
                "transition to " + m.state_label(e.to) + " un-fails a component");
          else if (static_cast<std::size_t>(e.to) != si &&
                   std::popcount(t.failed) <= std::popcount(s.failed))
            err("no-repair", where,
                "off-diagonal transition must add failed components");
        }
        if (e.p > 0 && s.sink && static_cast<std::size_t>(e.to) != si)
          err("absorbing", where, "failed sink must be absorbing");
        if (static_cast<std::size_t>(e.to) != si) {
          off_diag += e.p;
          ++off_diag_entries;
        }
      }
      if (sum != 1) err("row-stochastic", where, "row sums to " + render_exact(sum));
      if (s.sink) continue;
      bool failed_here = (s.failed >> ci) & 1;
      if (failed_here) {
        if (off_diag != 0)
          err("consistency", where, "failed component row must be the identity");
      } else {
        Rat q = Rat(1) - rel;
        if (off_diag != q)
          err("consistency", where,
              "off-diagonal mass " + render_exact(off_diag) + " != 1 - " +
                  render_exact(rel));
        if (off_diag_entries > 1)
          err("consistency", where, "component failure must have a single target");
      }
    }
  }

  // Reachability is advisory: unreachable functional states (and an
  // unreachable sink) are legal but worth flagging.
  std::vector<bool> reach(ns, false);
  reach[0] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t si = 0; si < ns; ++si) {
      if (!reach[si]) continue;
      for (std::size_t ci = 0; ci < n && ci < m.tpms.size(); ++ci) {
        if (m.tpms[ci].size() != ns) continue;
        for (const auto& e : m.tpms[ci][si]) {
          if (e.to >= 0 && e.to < static_cast<int>(ns) &&
              !reach[static_cast<std::size_t>(e.to)]) {
            reach[static_cast<std::size_t>(e.to)] = true;
            changed = true;
          }
        }
      }
    }
  }
  for (std::size_t si = 0; si < ns; ++si) {
    if (reach[si]) continue;
    warn("reachability", m.state_label(static_cast<int>(si)),
         m.states[si].sink ? "failed sink is unreachable from the initial state"
                           : "functional state is unreachable from the initial state");
  }
  return out;
}

bool model_valid(const MisModel& m) {
  auto vs = validate_model(m);
  return std::none_of(vs.begin(), vs.end(), [](const ModelViolation& v) {
    return v.severity == Severity::kError;
  });
}

ReliabilityResult evaluate_reliability(const MisModel& m) {
  if (!model_valid(m))
    throw Error(Errc::kInvalidModel, "model fails structural validation");
  std::vector<Rat> dist = m.pi0;
  for (std::size_t ci = 0; ci < m.component_count(); ++ci) {
    std::vector<Rat> next(dist.size(), Rat(0));
    for (std::size_t si = 0; si < dist.size(); ++si) {
      if (dist[si] == 0) continue;
      for (const auto& e : m.tpms[ci][si])
        next[static_cast<std::size_t>(e.to)] += dist[si] * e.p;
    }
    dist = std::move(next);
  }
  Rat r = 0;
  for (std::size_t si = 0; si < dist.size(); ++si)
    if (m.u[si]) r += dist[si];
  return {r, EvalMethod::kAnalytic, std::nullopt, std::nullopt};
}

MisModel reassign(const MisModel& m, const std::map<ComponentName, Rat>& assignment) {
  MisModel out = m;
  for (std::size_t ci = 0; ci < out.component_count(); ++ci) {
    auto it = assignment.find(out.components[ci].first);
    if (it == assignment.end())
      throw Error(Errc::kPartialAssignment,
                  "no reliability assigned to '" + out.components[ci].first + "'");
    if (it->second < 0 || it->second > 1)
      throw Error(Errc::kInvalidBound,
                  "assigned reliability outside [0,1] for '" + it->first + "'");
    const Rat p = it->second;
    const Rat q = Rat(1) - p;
    out.components[ci].second = p;
    for (std::size_t si = 0; si < out.state_count(); ++si) {
      const MisState& s = out.states[si];
      if (s.sink || ((s.failed >> ci) & 1)) continue;
      auto& row = out.tpms[ci][si];
      bool has_off_diag = false;
      for (auto& e : row) {
        if (static_cast<std::size_t>(e.to) == si) {
          e.p = p;
        } else {
          if (has_off_diag)
            throw Error(Errc::kInvalidModel, "component failure has multiple targets");
          e.p = q;
          has_off_diag = true;
        }
      }
      if (!has_off_diag && q != 0)
        throw Error(Errc::kInvalidModel,
                    "no failure target recorded for '" + out.components[ci].first +
                        "' in state " + out.state_label(static_cast<int>(si)));
    }
  }
  return out;
}

ReliabilityResult evaluate_at(const MisModel& m,
                              const std::map<ComponentName, Rat>& assignment) {
  return evaluate_reliability(reassign(m, assignment));
}

bool models_equal(const MisModel& a, const MisModel& b) {
  return a.components == b.components && a.states == b.states &&
         a.tpms == b.tpms && a.pi0 == b.pi0 && a.u == b.u;
}

std::string render_violations(const std::vector<ModelViolation>& vs) {
  std::ostringstream os;
  for (const auto& v : vs) {
    os << (v.severity == Severity::kError ? "error" : "warning") << " [" << v.rule
       << "] " << v.where << ": " << v.message << "\n";
  }
  return os.str();
}

}  // namespace reliamis
