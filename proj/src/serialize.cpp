#include "reliamis/serialize.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace reliamis {

namespace {

using nlohmann::json;

// SAX builder that keeps float literals as their raw source strings so that
// decimals parse exactly; integers stay integral.
class ExactBuilder : public nlohmann::json_sax<json> {
 public:
  json result;
  std::size_t error_pos = 0;
  std::string error_msg;

  bool null() override { return add(json(nullptr)); }
  bool boolean(bool v) override { return add(json(v)); }
  bool number_integer(number_integer_t v) override { return add(json(v)); }
  bool number_unsigned(number_unsigned_t v) override { return add(json(v)); }
  bool number_float(number_float_t, const string_t& raw) override {
    return add(json(raw));
  }
  bool string(string_t& v) override { return add(json(v)); }
  bool binary(binary_t& v) override { return add(json(v)); }
  bool start_object(std::size_t) override {
    containers_.push_back(json::object());
    keys_.push_back("");
    return true;
  }
  bool key(string_t& k) override {
    keys_.back() = k;
    return true;
  }
  bool end_object() override { return close(); }
  bool start_array(std::size_t) override {
    containers_.push_back(json::array());
    keys_.push_back("");
    return true;
  }
  bool end_array() override { return close(); }
  bool parse_error(std::size_t pos, const std::string&,
                   const nlohmann::detail::exception& ex) override {
    error_pos = pos;
    error_msg = ex.what();
    return false;
  }

 private:
  bool add(json v) {
    if (containers_.empty()) {
      result = std::move(v);
      return true;
    }
    json& top = containers_.back();
    if (top.is_array())
      top.push_back(std::move(v));
    else
      top[keys_.back()] = std::move(v);
    return true;
  }
  bool close() {
    json done = std::move(containers_.back());
    containers_.pop_back();
    keys_.pop_back();
    return add(std::move(done));
  }

  std::vector<json> containers_;
  std::vector<std::string> keys_;
};

[[noreturn]] void parse_fail(const std::string& text, std::size_t pos,
                             const std::string& msg) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < pos && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  throw Error(Errc::kParseError, "line " + std::to_string(line) + ", column " +
                                     std::to_string(col) + ": " + msg);
}

json parse_exact(const std::string& text) {
  ExactBuilder builder;
  if (!json::sax_parse(text, &builder))
    parse_fail(text, builder.error_pos, builder.error_msg);
  return builder.result;
}

void require_keys(const json& obj, const std::string& where,
                  const std::vector<std::string>& required,
                  const std::vector<std::string>& optional = {}) {
  if (!obj.is_object())
    throw Error(Errc::kParseError, where + " must be an object");
  for (const auto& k : required) {
    if (!obj.contains(k))
      throw Error(Errc::kParseError, where + " is missing key '" + k + "'");
  }
  for (const auto& [k, _] : obj.items()) {
    bool known = std::find(required.begin(), required.end(), k) != required.end() ||
                 std::find(optional.begin(), optional.end(), k) != optional.end();
    if (!known)
      throw Error(Errc::kUnknownKey, where + " has unknown key '" + k + "'");
  }
}

Rat parse_probability(const json& j, const std::string& where) {
  std::optional<Rat> r;
  if (j.is_string()) {
    r = parse_rational(j.get<std::string>());
  } else if (j.is_number_integer()) {
    r = Rat(j.get<long long>());
  } else if (j.is_number_unsigned()) {
    r = Rat(j.get<unsigned long long>());
  }
  if (!r) throw Error(Errc::kParseError, where + ": malformed probability");
  if (*r < 0 || *r > 1)
    throw Error(Errc::kParseError,
                where + ": probability " + render_exact(*r) + " outside [0,1]");
  return *r;
}

std::string parse_name(const json& j, const std::string& where) {
  if (!j.is_string())
    throw Error(Errc::kParseError, where + ": component name must be a string");
  std::string name = j.get<std::string>();
  if (!valid_component_name(name))
    throw Error(Errc::kInvalidComponentName,
                where + ": invalid component name '" + name + "'");
  return name;
}

std::set<ComponentName> parse_name_set(const json& j, const std::string& where) {
  if (!j.is_array())
    throw Error(Errc::kParseError, where + " must be an array of names");
  std::set<ComponentName> out;
  for (const auto& e : j) out.insert(parse_name(e, where));
  return out;
}

std::vector<std::pair<ComponentName, Rat>> parse_components(const json& j) {
  if (!j.is_array())
    throw Error(Errc::kParseError, "'components' must be an array");
  std::vector<std::pair<ComponentName, Rat>> out;
  std::set<std::string> seen;
  for (const auto& c : j) {
    require_keys(c, "component entry", {"name", "rel"});
    std::string name = parse_name(c["name"], "component entry");
    if (!seen.insert(name).second)
      throw Error(Errc::kDuplicateComponent, "duplicate component '" + name + "'");
    out.push_back({name, parse_probability(c["rel"], "rel of '" + name + "'")});
  }
  return out;
}

json components_json(const std::vector<std::pair<ComponentName, Rat>>& comps) {
  json arr = json::array();
  for (const auto& [name, rel] : comps)
    arr.push_back({{"name", name}, {"rel", render_exact(rel)}});
  return arr;
}

json names_json(const std::set<ComponentName>& names) {
  json arr = json::array();
  for (const auto& n : names) arr.push_back(n);
  return arr;
}

}  // namespace

PropertySet parse_model_file(const std::string& text) {
  json j = parse_exact(text);
  require_keys(j, "model file", {"components", "deps"});
  PropertySet p;
  for (const auto& [name, rel] : parse_components(j["components"])) {
    p.components.insert(name);
    p.rel_bounds[name] = rel;
  }
  if (!j["deps"].is_array())
    throw Error(Errc::kParseError, "'deps' must be an array");
  for (const auto& d : j["deps"]) {
    require_keys(d, "dependency", {"causes", "effects"}, {"system"});
    Dependency dep;
    dep.causes = parse_name_set(d["causes"], "causes");
    dep.effects = parse_name_set(d["effects"], "effects");
    dep.system = d.contains("system") ? d["system"].get<bool>() : false;
    for (const auto& n : dep.causes) {
      if (!p.components.count(n))
        throw Error(Errc::kUndeclaredComponent,
                    "dependency names undeclared component '" + n + "'");
    }
    for (const auto& n : dep.effects) {
      if (!p.components.count(n))
        throw Error(Errc::kUndeclaredComponent,
                    "dependency names undeclared component '" + n + "'");
    }
    p.deps.push_back(std::move(dep));
  }
  return p;
}

std::string save_model_file(const PropertySet& p) {
  if (p.bottom)
    throw Error(Errc::kBottomNotConcrete, "bottom has no file representation");
  PropertySet n = normalize(p);
  json j;
  std::vector<std::pair<ComponentName, Rat>> comps;
  for (const auto& c : n.components) comps.push_back({c, n.rel_bounds.at(c)});
  j["components"] = components_json(comps);
  json deps = json::array();
  for (const auto& d : n.deps)
    deps.push_back({{"causes", names_json(d.causes)},
                    {"effects", names_json(d.effects)},
                    {"system", d.system}});
  j["deps"] = deps;
  return j.dump(2) + "\n";
}

OpScript parse_script_file(const std::string& text) {
  json j = parse_exact(text);
  if (!j.is_array())
    throw Error(Errc::kParseError, "script file must be an array of operations");
  OpScript script;
  int index = 0;
  for (const auto& rec : j) {
    std::string where = "op " + std::to_string(index++);
    if (!rec.is_object() || !rec.contains("op"))
      throw Error(Errc::kParseError, where + ": missing 'op'");
    std::string op = rec["op"].get<std::string>();
    if (op == "relax_rel" || op == "tighten_rel") {
      require_keys(rec, where, {"op", "component", "rel"});
      ComponentName c = parse_name(rec["component"], where);
      Rat r = parse_probability(rec["rel"], where);
      if (op == "relax_rel")
        script.ops.push_back(RelaxRel{c, r});
      else
        script.ops.push_back(TightenRel{c, r});
    } else if (op == "merge") {
      require_keys(rec, where, {"op", "first", "second", "into"});
      script.ops.push_back(Merge{parse_name(rec["first"], where),
                                 parse_name(rec["second"], where),
                                 parse_name(rec["into"], where)});
    } else if (op == "split") {
      require_keys(rec, where, {"op", "component", "into_first", "into_second"});
      script.ops.push_back(Split{parse_name(rec["component"], where),
                                 parse_name(rec["into_first"], where),
                                 parse_name(rec["into_second"], where)});
    } else if (op == "add_dep" || op == "remove_dep") {
      require_keys(rec, where, {"op", "causes", "effects"}, {"system"});
      auto causes = parse_name_set(rec["causes"], where);
      auto effects = parse_name_set(rec["effects"], where);
      bool system = rec.contains("system") ? rec["system"].get<bool>() : false;
      if (op == "add_dep")
        script.ops.push_back(AddDep{causes, effects, system});
      else
        script.ops.push_back(RemoveDep{causes, effects, system});
    } else {
      throw Error(Errc::kParseError, where + ": unknown op '" + op + "'");
    }
  }
  return script;
}

std::string save_script_file(const OpScript& s) {
  json arr = json::array();
  for (const auto& op : s.ops) {
    json rec;
    if (auto* r = std::get_if<RelaxRel>(&op)) {
      rec = {{"op", "relax_rel"}, {"component", r->component},
             {"rel", render_exact(r->bound)}};
    } else if (auto* t = std::get_if<TightenRel>(&op)) {
      rec = {{"op", "tighten_rel"}, {"component", t->component},
             {"rel", render_exact(t->bound)}};
    } else if (auto* m = std::get_if<Merge>(&op)) {
      rec = {{"op", "merge"}, {"first", m->first}, {"second", m->second},
             {"into", m->merged}};
    } else if (auto* sp = std::get_if<Split>(&op)) {
      rec = {{"op", "split"}, {"component", sp->component},
             {"into_first", sp->into_first}, {"into_second", sp->into_second}};
    } else if (auto* a = std::get_if<AddDep>(&op)) {
      rec = {{"op", "add_dep"}, {"causes", names_json(a->causes)},
             {"effects", names_json(a->effects)}, {"system", a->system}};
    } else if (auto* d = std::get_if<RemoveDep>(&op)) {
      rec = {{"op", "remove_dep"}, {"causes", names_json(d->causes)},
             {"effects", names_json(d->effects)}, {"system", d->system}};
    }
    arr.push_back(std::move(rec));
  }
  return arr.dump(2) + "\n";
}

MisModel parse_matrix_file(const std::string& text) {
  json j = parse_exact(text);
  require_keys(j, "matrix file", {"components", "states", "tpms"});
  MisModel m;
  m.components = parse_components(j["components"]);
  std::map<std::string, std::size_t> comp_index;
  for (std::size_t i = 0; i < m.components.size(); ++i)
    comp_index[m.components[i].first] = i;
  auto names_to_mask = [&](const std::set<ComponentName>& names,
                           const std::string& where) {
    std::uint64_t mask = 0;
    for (const auto& n : names) {
      auto it = comp_index.find(n);
      if (it == comp_index.end())
        throw Error(Errc::kUndeclaredComponent,
                    where + " names undeclared component '" + n + "'");
      mask |= 1ull << it->second;
    }
    return mask;
  };

  if (!j["states"].is_array())
    throw Error(Errc::kParseError, "'states' must be an array");
  for (const auto& s : j["states"]) {
    if (s.contains("sink")) {
      require_keys(s, "state", {"sink"}, {"members"});
      if (!s["sink"].get<bool>())
        throw Error(Errc::kParseError, "'sink' must be true when present");
      m.states.push_back({0, true});
      if (s.contains("members")) {
        for (const auto& member : s["members"])
          m.sink_members.insert(
              names_to_mask(parse_name_set(member, "sink member"), "sink member"));
      }
    } else {
      require_keys(s, "state", {"failed"});
      m.states.push_back(
          {names_to_mask(parse_name_set(s["failed"], "state"), "state"), false});
    }
  }

  if (!j["tpms"].is_array() || j["tpms"].size() != m.components.size())
    throw Error(Errc::kParseError, "'tpms' must hold one matrix per component");
  for (const auto& tpm : j["tpms"]) {
    if (!tpm.is_array() || tpm.size() != m.states.size())
      throw Error(Errc::kParseError, "each TPM must hold one row per state");
    std::vector<std::vector<TpmEntry>> rows;
    for (const auto& row : tpm) {
      std::vector<TpmEntry> entries;
      if (!row.is_array())
        throw Error(Errc::kParseError, "TPM rows must be arrays of entries");
      for (const auto& e : row) {
        require_keys(e, "TPM entry", {"to", "p"});
        if (!e["to"].is_number_integer() && !e["to"].is_number_unsigned())
          throw Error(Errc::kParseError, "'to' must be a state index");
        int to = e["to"].get<int>();
        if (to < 0 || to >= static_cast<int>(m.states.size()))
          throw Error(Errc::kParseError, "'to' index out of range");
        entries.push_back({to, parse_probability(e["p"], "TPM entry")});
      }
      std::sort(entries.begin(), entries.end(),
                [](const TpmEntry& a, const TpmEntry& b) { return a.to < b.to; });
      rows.push_back(std::move(entries));
    }
    m.tpms.push_back(std::move(rows));
  }

  m.pi0.assign(m.states.size(), Rat(0));
  if (!m.pi0.empty()) m.pi0[0] = 1;
  m.u.assign(m.states.size(), 1);
  for (std::size_t i = 0; i < m.states.size(); ++i)
    if (m.states[i].sink) m.u[i] = 0;
  return m;
}

std::string save_matrix_file(const MisModel& m) {
  json j;
  j["components"] = components_json(m.components);
  std::vector<ComponentName> order;
  for (const auto& [name, _] : m.components) order.push_back(name);
  auto mask_names = [&](std::uint64_t mask) {
    json arr = json::array();
    for (std::size_t i = 0; i < order.size(); ++i)
      if ((mask >> i) & 1) arr.push_back(order[i]);
    return arr;
  };
  json states = json::array();
  for (const auto& s : m.states) {
    if (s.sink) {
      json st;
      st["sink"] = true;
      json members = json::array();
      for (const auto& member : m.sink_members) members.push_back(mask_names(member));
      st["members"] = members;
      states.push_back(std::move(st));
    } else {
      states.push_back({{"failed", mask_names(s.failed)}});
    }
  }
  j["states"] = states;
  json tpms = json::array();
  for (const auto& tpm : m.tpms) {
    json rows = json::array();
    for (const auto& row : tpm) {
      json entries = json::array();
      for (const auto& e : row)
        entries.push_back({{"to", e.to}, {"p", render_exact(e.p)}});
      rows.push_back(std::move(entries));
    }
    tpms.push_back(std::move(rows));
  }
  j["tpms"] = tpms;
  return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIoError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::kIoError, "cannot write '" + path + "'");
  out << content;
}

}  // namespace reliamis
