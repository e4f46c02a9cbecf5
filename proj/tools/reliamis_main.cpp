// Command-line surface over the reliamis library: one subcommand per
// operation, plus an interactive REPL for stepwise refinement sessions.

#include "reliamis/dot.hpp"
#include "reliamis/galois.hpp"
#include "reliamis/lattice.hpp"
#include "reliamis/oracle.hpp"
#include "reliamis/repl.hpp"
#include "reliamis/serialize.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace {

using namespace reliamis;

PropertySet load_props(const std::string& path) {
  return parse_model_file(read_file(path));
}

std::map<ComponentName, Rat> parse_overrides(const MisModel& m,
                                             const std::vector<std::string>& at) {
  std::map<ComponentName, Rat> assignment;
  for (const auto& [name, rel] : m.components) assignment[name] = rel;
  for (const auto& spec : at) {
    auto eq = spec.find('=');
    if (eq == std::string::npos)
      throw Error(Errc::kParseError, "--at expects name=probability, got '" + spec + "'");
    auto r = parse_rational(spec.substr(eq + 1));
    if (!r || *r < 0 || *r > 1)
      throw Error(Errc::kParseError, "malformed probability in '" + spec + "'");
    assignment[spec.substr(0, eq)] = *r;
  }
  return assignment;
}

void print_reliability(const ReliabilityResult& r) {
  std::cout << "R(sys) = " << render_exact(r.value) << " = "
            << render_decimal(r.value, 12) << "\n";
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("RELIAMIS_SEED"))
    return std::strtoull(env, nullptr, 10);
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constraint-based refinement and evaluation of MIS reliability models"};
  app.require_subcommand(1);

  std::string model_path, script_path, other_path, out_path, dot_path;
  std::vector<std::string> at;
  int depth = 4;
  std::uint64_t trials = 1000000;
  std::uint64_t seed = default_seed();

  auto* check = app.add_subcommand("check", "normalize and run the well-formedness rules");
  check->add_option("model", model_path)->required();

  auto* norm = app.add_subcommand("normalize", "print the canonical model file");
  norm->add_option("model", model_path)->required();

  auto* apply = app.add_subcommand("apply", "apply an op script to a model");
  apply->add_option("script", script_path)->required();
  apply->add_option("model", model_path)->required();

  auto* eval = app.add_subcommand("eval", "abstract the model and evaluate reliability");
  eval->add_option("model", model_path)->required();
  eval->add_option("--at", at, "override component reliabilities (name=p)");

  auto* abstract_cmd = app.add_subcommand("abstract", "print the abstracted MIS model");
  abstract_cmd->add_option("model", model_path)->required();
  abstract_cmd->add_option("--dot", dot_path, "also write a Graphviz rendering");
  abstract_cmd->add_option("--output", out_path, "write the matrix file here");

  auto* conc = app.add_subcommand("concretize", "derive constraints from a matrix file");
  conc->add_option("matrix", model_path)->required();

  auto* roundtrip = app.add_subcommand("roundtrip", "check both Galois round trips");
  roundtrip->add_option("model", model_path)->required();
  roundtrip->add_option("--depth", depth);

  auto* leq = app.add_subcommand("leq", "search a generalization witness p below q");
  leq->add_option("p", model_path)->required();
  leq->add_option("q", other_path)->required();
  leq->add_option("--depth", depth);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo cross-check");
  simulate->add_option("model", model_path)->required();
  simulate->add_option("--trials", trials);
  simulate->add_option("--seed", seed);
  simulate->add_option("--at", at);

  auto* repl = app.add_subcommand("repl", "interactive refinement session");
  repl->add_option("model", model_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) {
      PropertySet p = load_props(model_path);
      WfReport wf = check_well_formed(p);
      std::cout << "initiality: " << (wf.initiality_ok ? "ok" : "violated") << "\n"
                << "termination: " << (wf.termination_ok ? "ok" : "violated") << "\n"
                << "monotonicity: " << (wf.monotonicity_ok ? "ok" : "violated") << "\n";
      for (const auto& v : wf.violations)
        std::cout << "  " << v.rule << " @ " << v.where << ": " << v.message << "\n";
      if (!wf.ok()) {
        std::cerr << "error: NotWellFormed: model violates well-formedness\n";
        return 1;
      }
    } else if (norm->parsed()) {
      std::cout << save_model_file(normalize(load_props(model_path)));
    } else if (apply->parsed()) {
      OpScript script = parse_script_file(read_file(script_path));
      std::cout << save_model_file(apply_script(script, load_props(model_path)));
    } else if (eval->parsed()) {
      MisModel m = abstract_model(normalize(load_props(model_path)));
      print_reliability(at.empty() ? evaluate_reliability(m)
                                   : evaluate_at(m, parse_overrides(m, at)));
    } else if (abstract_cmd->parsed()) {
      MisModel m = abstract_model(normalize(load_props(model_path)));
      auto violations = validate_model(m);
      if (!violations.empty()) std::cerr << render_violations(violations);
      std::string matrix = save_matrix_file(m);
      if (out_path.empty())
        std::cout << matrix;
      else
        write_file(out_path, matrix);
      if (!dot_path.empty()) write_file(dot_path, export_dot(m));
    } else if (conc->parsed()) {
      MisModel m = parse_matrix_file(read_file(model_path));
      PropertySet p = concretize_props(m);
      WfReport wf = check_well_formed(p);
      if (!wf.ok())
        std::cerr << "note: concretized constraints violate well-formedness\n";
      std::cout << save_model_file(p);
    } else if (roundtrip->parsed()) {
      PropertySet p = normalize(load_props(model_path));
      RoundTripReport props_first = check_roundtrip_props(p, depth);
      RoundTripReport model_first = check_roundtrip_model(abstract_model(p), depth);
      std::cout << "props-first: " << (props_first.holds ? "holds" : "does not hold")
                << " (" << props_first.relation_checked << ")\n";
      std::cout << "model-first: " << (model_first.holds ? "holds" : "does not hold")
                << " (" << model_first.relation_checked << ")\n";
      if (!props_first.holds || !model_first.holds) {
        std::cerr << "error: NotWellFormed: round trip failed\n";
        return 1;
      }
    } else if (leq->parsed()) {
      PropertySet p = normalize(load_props(model_path));
      PropertySet q = normalize(load_props(other_path));
      OrderVerdict v = generalizes(p, q, depth);
      if (v.relation == OrderRelation::kEqual) {
        std::cout << "equal\n";
      } else if (v.relation == OrderRelation::kLeqWitnessed) {
        std::cout << "below-or-equal; witness:\n" << save_script_file(*v.witness);
      } else {
        std::cout << "no witness within depth " << v.depth_searched
                  << " (inconclusive)\n";
        return 3;
      }
    } else if (simulate->parsed()) {
      MisModel m = abstract_model(normalize(load_props(model_path)));
      TrialConfig cfg;
      cfg.trials = trials;
      cfg.seed = seed;
      if (!at.empty()) cfg.assignment = parse_overrides(m, at);
      ReliabilityResult r = monte_carlo_reliability(m, cfg);
      std::cout << "estimate = " << render_decimal(r.value, 12) << " (trials="
                << *r.trials << ", 3-sigma half-width=" << *r.ci_halfwidth
                << ", seed=" << seed << ")\n";
    } else if (repl->parsed()) {
      std::optional<std::string> initial;
      if (!model_path.empty()) initial = model_path;
      return repl_session(std::cin, std::cout, initial, true);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << errc_name(e.code()) << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: Internal: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
