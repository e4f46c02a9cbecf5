#include "reliamis/lattice.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace reliamis {

PropertySet top() {
  PropertySet t;
  t.components = {"c"};
  t.rel_bounds["c"] = 0;
  t.deps.push_back({{"c"}, {}, true});
  return t;
}

PropertySet bottom() {
  PropertySet b;
  b.bottom = true;
  return b;
}

namespace {

std::string canonical_key(const PropertySet& p) { return render_props(p); }

// Generalization moves aimed at the target q. Merges rename toward q's
// component names, relaxations only target bounds that occur in q, and
// dependency additions are drawn from q's dependency set (the per-cause-set
// delta as one move, plus single effects for completeness). Sound because
// every witness is replayed; bounded by construction.
std::vector<ModelOp> moves_towards(const PropertySet& x, const PropertySet& q) {
  std::vector<ModelOp> out;
  if (x.components.size() < q.components.size()) return out;

  if (x.components.size() > q.components.size()) {
    for (auto it1 = x.components.begin(); it1 != x.components.end(); ++it1) {
      auto it2 = it1;
      for (++it2; it2 != x.components.end(); ++it2) {
        std::set<ComponentName> targets{std::min(*it1, *it2)};
        for (const auto& name : q.components) {
          bool collides = x.components.count(name) && name != *it1 && name != *it2;
          if (!collides) targets.insert(name);
        }
        for (const auto& cm : targets) out.push_back(Merge{*it1, *it2, cm});
      }
    }
  }

  std::set<Rat> q_bounds;
  for (const auto& [_, b] : q.rel_bounds) q_bounds.insert(b);
  for (const auto& c : x.components) {
    for (const auto& b : q_bounds)
      if (b < x.rel_bounds.at(c)) out.push_back(RelaxRel{c, b});
  }

  if (x.components == q.components) {
    auto effects_of = [](const PropertySet& props, const std::set<ComponentName>& causes)
        -> std::optional<std::pair<std::set<ComponentName>, bool>> {
      for (const auto& d : props.deps)
        if (d.causes == causes) return std::make_pair(d.effects, d.system);
      return std::nullopt;
    };
    for (const auto& dq : q.deps) {
      auto cur = effects_of(x, dq.causes);
      std::set<ComponentName> delta = dq.effects;
      bool delta_sys = dq.system;
      if (cur) {
        for (const auto& e : cur->first) delta.erase(e);
        delta_sys = dq.system && !cur->second;
      }
      if (!delta.empty() || delta_sys)
        out.push_back(AddDep{dq.causes, delta, delta_sys});
      for (const auto& e : dq.effects) {
        if (!cur || !cur->first.count(e))
          out.push_back(AddDep{dq.causes, {e}, false});
      }
      if (dq.system && (!cur || !cur->second))
        out.push_back(AddDep{dq.causes, {}, true});
    }
  }

  std::sort(out.begin(), out.end(), [](const ModelOp& a, const ModelOp& b) {
    return render_op(a) < render_op(b);
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const ModelOp& a, const ModelOp& b) {
                          return render_op(a) == render_op(b);
                        }),
            out.end());
  return out;
}

// Uniform up-set moves over a bounded universe, used by covers_check: all
// merges (names restricted to the universe), all relaxations to grid values,
// and all single-effect dependency additions.
std::vector<ModelOp> moves_universe(const PropertySet& x,
                                    const std::set<ComponentName>& names,
                                    const std::set<Rat>& grid) {
  std::vector<ModelOp> out;
  for (auto it1 = x.components.begin(); it1 != x.components.end(); ++it1) {
    auto it2 = it1;
    for (++it2; it2 != x.components.end(); ++it2) {
      std::set<ComponentName> targets{std::min(*it1, *it2)};
      for (const auto& n : names)
        if (!x.components.count(n) || n == *it1 || n == *it2) targets.insert(n);
      for (const auto& cm : targets) out.push_back(Merge{*it1, *it2, cm});
    }
  }
  for (const auto& c : x.components) {
    for (const auto& g : grid)
      if (g < x.rel_bounds.at(c)) out.push_back(RelaxRel{c, g});
  }
  // Single-effect additions over every nonempty cause subset.
  std::vector<ComponentName> order(x.components.begin(), x.components.end());
  const std::size_t n = order.size();
  for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
    std::set<ComponentName> causes;
    for (std::size_t i = 0; i < n; ++i)
      if ((mask >> i) & 1) causes.insert(order[i]);
    for (const auto& e : order)
      if (!causes.count(e)) out.push_back(AddDep{causes, {e}, false});
    out.push_back(AddDep{causes, {}, true});
  }
  return out;
}

struct SearchResult {
  bool found = false;
  OpScript script;
  int depth = 0;
};

SearchResult bfs_towards(const PropertySet& start, const PropertySet& target,
                         int depth, std::size_t node_cap) {
  SearchResult result;
  std::deque<std::pair<PropertySet, OpScript>> frontier;
  std::set<std::string> visited{canonical_key(start)};
  frontier.push_back({start, {}});
  int layer = 0;
  while (!frontier.empty() && layer < depth) {
    ++layer;
    std::deque<std::pair<PropertySet, OpScript>> next;
    for (auto& [x, script] : frontier) {
      for (const auto& op : moves_towards(x, target)) {
        PropertySet y;
        try {
          y = apply_op(x, op);
        } catch (const Error&) {
          continue;
        }
        std::string key = canonical_key(y);
        if (visited.count(key)) continue;
        visited.insert(key);
        if (visited.size() > node_cap) return result;
        OpScript ys = script;
        ys.ops.push_back(op);
        if (props_equal(y, target)) {
          result.found = true;
          result.script = ys;
          result.depth = layer;
          return result;
        }
        next.push_back({std::move(y), std::move(ys)});
      }
    }
    frontier = std::move(next);
  }
  result.depth = layer;
  return result;
}

}  // namespace

OrderVerdict generalizes(const PropertySet& p, const PropertySet& q, int depth) {
  if (depth <= 0) throw Error(Errc::kDepthZero, "search depth must be positive");

  // Bottom is below everything by definition; nothing else reaches it.
  if (p.bottom || q.bottom) {
    if (p.bottom && q.bottom) return {OrderRelation::kEqual, OpScript{}, 0};
    if (p.bottom) return {OrderRelation::kLeqWitnessed, OpScript{}, 0};
    return {OrderRelation::kNotLeqWithinBound, std::nullopt, 0};
  }

  PropertySet pn = normalize(p);
  PropertySet qn = normalize(q);
  if (pn == qn) return {OrderRelation::kEqual, OpScript{}, 0};

  SearchResult r = bfs_towards(pn, qn, depth, 200000);
  if (!r.found) return {OrderRelation::kNotLeqWithinBound, std::nullopt, r.depth};

  // Witnesses must replay.
  if (!props_equal(apply_script(r.script, pn), qn))
    throw Error(Errc::kUnsupportedOperation, "internal: witness failed to replay");
  return {OrderRelation::kLeqWitnessed, r.script, r.depth};
}

bool covers_check(const PropertySet& p, const ModelOp& refinement) {
  if (!is_refinement(refinement))
    throw Error(Errc::kUnsupportedOperation,
                "covers_check expects a refinement operation");
  PropertySet pn = normalize(p);
  PropertySet q = apply_op(pn, refinement);

  std::set<ComponentName> names = pn.components;
  names.insert(q.components.begin(), q.components.end());
  std::set<Rat> grid{Rat(0), Rat(1)};
  for (const auto& [_, b] : pn.rel_bounds) grid.insert(b);
  for (const auto& [_, b] : q.rel_bounds) grid.insert(b);
  if (std::max(pn.components.size(), q.components.size()) > 3)
    throw Error(Errc::kUniverseTooLarge, "covers_check is limited to 3 components");
  if (grid.size() > 4)
    throw Error(Errc::kUniverseTooLarge, "covers_check grid is limited to 4 values");

  // Everything strictly above q is reachable from q by generalization moves,
  // so saturating the up-set enumerates every candidate between q and p.
  constexpr std::size_t kNodeCap = 20000;
  std::deque<PropertySet> frontier{q};
  std::set<std::string> visited{canonical_key(q)};
  while (!frontier.empty()) {
    PropertySet x = frontier.front();
    frontier.pop_front();
    for (const auto& op : moves_universe(x, names, grid)) {
      PropertySet y;
      try {
        y = apply_op(x, op);
      } catch (const Error&) {
        continue;
      }
      std::string key = canonical_key(y);
      if (visited.count(key)) continue;
      visited.insert(key);
      if (visited.size() > kNodeCap)
        throw Error(Errc::kUniverseTooLarge, "covers_check universe exceeded node cap");
      if (!props_equal(y, pn)) {
        OrderVerdict v = generalizes(y, pn, 6);
        if (v.relation == OrderRelation::kLeqWitnessed) return false;
      }
      frontier.push_back(std::move(y));
    }
  }
  return true;
}

PropertySet meet(const PropertySet&, const PropertySet&) {
  throw Error(Errc::kUnsupportedOperation, "meets are not implemented");
}

PropertySet join(const PropertySet&, const PropertySet&) {
  throw Error(Errc::kUnsupportedOperation, "joins are not implemented");
}

}  // namespace reliamis
