#include "reliamis/dot.hpp"

#include <map>
#include <sstream>
#include <vector>

namespace reliamis {

std::string export_dot(const MisModel& m) {
  if (!model_valid(m))
    throw Error(Errc::kInvalidModel, "model fails structural validation");

  // Contributions per (source, target): component index and its probability.
  std::map<std::pair<int, int>, std::vector<std::pair<std::size_t, Rat>>> edges;
  for (std::size_t ci = 0; ci < m.component_count(); ++ci) {
    for (std::size_t si = 0; si < m.state_count(); ++si) {
      for (const auto& e : m.tpms[ci][si]) {
        if (e.p == 0) continue;
        edges[{static_cast<int>(si), e.to}].push_back({ci, e.p});
      }
    }
  }

  std::ostringstream os;
  os << "digraph mis {\n";
  os << "  rankdir=LR;\n";
  os << "  node [shape=box, style=rounded];\n";
  for (std::size_t si = 0; si < m.state_count(); ++si)
    os << "  s" << si << " [label=\"" << m.state_label(static_cast<int>(si))
       << "\"];\n";
  for (const auto& [key, contribs] : edges) {
    // Components sharing a probability share one label line.
    std::vector<std::pair<Rat, std::vector<std::size_t>>> groups;
    for (const auto& [ci, p] : contribs) {
      bool placed = false;
      for (auto& [gp, members] : groups) {
        if (gp == p) {
          members.push_back(ci);
          placed = true;
          break;
        }
      }
      if (!placed) groups.push_back({p, {ci}});
    }
    std::string label;
    for (const auto& [p, members] : groups) {
      if (!label.empty()) label += "\\n";
      std::string names;
      for (std::size_t ci : members)
        names += (names.empty() ? "" : ", ") + m.components[ci].first;
      label += names + ": " + render_exact(p);
    }
    os << "  s" << key.first << " -> s" << key.second << " [label=\"" << label
       << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace reliamis
