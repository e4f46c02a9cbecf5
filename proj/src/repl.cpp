#include "reliamis/repl.hpp"

#include "reliamis/dot.hpp"
#include "reliamis/galois.hpp"
#include "reliamis/lattice.hpp"
#include "reliamis/oracle.hpp"
#include "reliamis/serialize.hpp"

#include <iostream>
#include <sstream>
#include <vector>

namespace reliamis {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::set<ComponentName> parse_list(const std::string& csv, bool* system) {
  std::set<ComponentName> out;
  std::string item;
  std::istringstream in(csv);
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    if (item == kSystemToken) {
      if (system) *system = true;
      continue;
    }
    out.insert(item);
  }
  return out;
}

Rat parse_bound(const std::string& text) {
  auto r = parse_rational(text);
  if (!r) throw Error(Errc::kParseError, "malformed probability '" + text + "'");
  if (*r < 0 || *r > 1)
    throw Error(Errc::kInvalidBound, "probability outside [0,1]: " + text);
  return *r;
}

ModelOp parse_op_line(const std::vector<std::string>& args) {
  if (args.empty()) throw Error(Errc::kParseError, "empty op line");
  const std::string& op = args[0];
  auto expect = [&](std::size_t n) {
    if (args.size() != n + 1)
      throw Error(Errc::kParseError, "'" + op + "' expects " + std::to_string(n) +
                                         " arguments");
  };
  if (op == "relax_rel") {
    expect(2);
    return RelaxRel{args[1], parse_bound(args[2])};
  }
  if (op == "tighten_rel") {
    expect(2);
    return TightenRel{args[1], parse_bound(args[2])};
  }
  if (op == "merge") {
    expect(3);
    return Merge{args[1], args[2], args[3]};
  }
  if (op == "split") {
    expect(3);
    return Split{args[1], args[2], args[3]};
  }
  if (op == "add_dep" || op == "remove_dep") {
    expect(2);
    bool system = false;
    auto causes = parse_list(args[1], nullptr);
    auto effects = parse_list(args[2], &system);
    if (op == "add_dep") return AddDep{causes, effects, system};
    return RemoveDep{causes, effects, system};
  }
  throw Error(Errc::kParseError, "unknown op '" + op + "'");
}

struct Session {
  std::optional<PropertySet> current;
  std::vector<std::pair<ModelOp, PropertySet>> history;

  PropertySet& require() {
    if (!current)
      throw Error(Errc::kParseError, "no model loaded; use 'load <file>' or 'top'");
    return *current;
  }
};

void print_eval(std::ostream& out, const ReliabilityResult& r) {
  out << "R(sys) = " << render_exact(r.value) << " = "
      << render_decimal(r.value, 12) << "\n";
}

}  // namespace

int repl_session(std::istream& in, std::ostream& out,
                 const std::optional<std::string>& initial_model_path,
                 bool prompt) {
  Session session;
  if (initial_model_path) {
    session.current = normalize(parse_model_file(read_file(*initial_model_path)));
    out << "loaded " << *initial_model_path << "\n";
  }

  std::string line;
  while (true) {
    if (prompt) out << "reliamis> " << std::flush;
    if (!std::getline(in, line)) break;
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    const std::string cmd = tokens[0];
    try {
      if (cmd == "quit" || cmd == "exit") {
        break;
      } else if (cmd == "top") {
        session.current = top();
        session.history.clear();
        out << "state reset to the most general system\n";
      } else if (cmd == "load") {
        if (tokens.size() != 2) throw Error(Errc::kParseError, "load <file>");
        session.current = normalize(parse_model_file(read_file(tokens[1])));
        session.history.clear();
        out << "loaded " << tokens[1] << "\n";
      } else if (cmd == "show") {
        out << render_props(session.require());
      } else if (cmd == "wf") {
        WfReport wf = check_well_formed(session.require());
        out << "initiality: " << (wf.initiality_ok ? "ok" : "violated")
            << "\ntermination: " << (wf.termination_ok ? "ok" : "violated")
            << "\nmonotonicity: " << (wf.monotonicity_ok ? "ok" : "violated") << "\n";
        for (const auto& v : wf.violations)
          out << "  " << v.rule << " @ " << v.where << ": " << v.message << "\n";
      } else if (cmd == "ops") {
        ModelOp op = parse_op_line({tokens.begin() + 1, tokens.end()});
        PropertySet before = session.require();
        session.current = apply_op(before, op);
        session.history.push_back({op, before});
        out << "applied " << render_op(op) << "\n";
      } else if (cmd == "undo") {
        if (session.history.empty()) throw Error(Errc::kParseError, "nothing to undo");
        session.current = session.history.back().second;
        session.history.pop_back();
        out << "undone\n";
      } else if (cmd == "history") {
        OpScript script;
        for (const auto& [op, _] : session.history) script.ops.push_back(op);
        out << save_script_file(script);
      } else if (cmd == "eval") {
        MisModel m = abstract_model(session.require());
        if (tokens.size() == 1) {
          print_eval(out, evaluate_reliability(m));
        } else {
          std::map<ComponentName, Rat> at;
          for (const auto& [name, rel] : m.components) at[name] = rel;
          for (std::size_t i = 1; i < tokens.size(); ++i) {
            auto eq = tokens[i].find('=');
            if (eq == std::string::npos)
              throw Error(Errc::kParseError, "override must be name=probability");
            at[tokens[i].substr(0, eq)] = parse_bound(tokens[i].substr(eq + 1));
          }
          print_eval(out, evaluate_at(m, at));
        }
      } else if (cmd == "abstract") {
        out << save_matrix_file(abstract_model(session.require()));
      } else if (cmd == "dot") {
        if (tokens.size() != 2) throw Error(Errc::kParseError, "dot <path>");
        write_file(tokens[1], export_dot(abstract_model(session.require())));
        out << "wrote " << tokens[1] << "\n";
      } else if (cmd == "roundtrip") {
        int depth = tokens.size() > 1 ? std::stoi(tokens[1]) : 3;
        RoundTripReport r = check_roundtrip_props(session.require(), depth);
        out << (r.holds ? "holds" : "does not hold") << " (" << r.relation_checked
            << ")\n";
      } else if (cmd == "leq") {
        if (tokens.size() < 2) throw Error(Errc::kParseError, "leq <file> [depth]");
        PropertySet q = normalize(parse_model_file(read_file(tokens[1])));
        int depth = tokens.size() > 2 ? std::stoi(tokens[2]) : 4;
        OrderVerdict v = generalizes(session.require(), q, depth);
        if (v.relation == OrderRelation::kEqual) {
          out << "equal\n";
        } else if (v.relation == OrderRelation::kLeqWitnessed) {
          out << "below-or-equal; witness:\n" << save_script_file(*v.witness);
        } else {
          out << "no witness within depth " << v.depth_searched
              << " (inconclusive)\n";
        }
      } else if (cmd == "save") {
        if (tokens.size() != 2) throw Error(Errc::kParseError, "save <path>");
        write_file(tokens[1], save_model_file(session.require()));
        out << "wrote " << tokens[1] << "\n";
      } else if (cmd == "help") {
        out << "commands: top load show wf ops undo history eval abstract dot "
               "roundtrip leq save quit\n";
      } else {
        throw Error(Errc::kParseError, "unknown command '" + cmd + "'");
      }
    } catch (const Error& e) {
      out << "error: " << errc_name(e.code()) << ": " << e.what() << "\n";
    } catch (const std::exception& e) {
      out << "error: ParseError: " << e.what() << "\n";
    }
  }
  return 0;
}

}  // namespace reliamis
