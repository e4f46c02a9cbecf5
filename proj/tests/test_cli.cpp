#include "reliamis/repl.hpp"

#include "reliamis/serialize.hpp"
#include "support/corpus.hpp"

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace reliamis;
using namespace reliamis::testing;

namespace {

const std::string kModels = RELIAMIS_MODELS_DIR;
const std::string kCli = RELIAMIS_CLI_BIN;

std::string repl_run(const std::string& commands) {
  std::istringstream in(commands);
  std::ostringstream out;
  repl_session(in, out, std::nullopt, false);
  return out.str();
}

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  std::string path = "/tmp/reliamis_cli_out.txt";
  std::string cmd = kCli + " " + args + " > " + path + " 2>&1";
  int status = std::system(cmd.c_str());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WEXITSTATUS(status), ss.str()};
}

}  // namespace

TEST_CASE("a scripted session replays the refinement walkthrough") {
  std::string out = repl_run(
      "top\n"
      "ops tighten_rel c 0.9\n"
      "eval\n"
      "ops split c c1 c2\n"
      "eval\n"
      "ops remove_dep c1 c2,sys\n"
      "eval\n"
      "ops split c2 c2 c3\n"
      "eval\n"
      "ops remove_dep c2 c1,c3,sys\n"
      "ops remove_dep c3 c1,c2,sys\n"
      "eval\n"
      "quit\n");
  CHECK(out.find("R(sys) = 0.9 = 0.9") != std::string::npos);
  CHECK(out.find("R(sys) = 0.81 = 0.81") != std::string::npos);
  CHECK(out.find("R(sys) = 0.972 = 0.972") != std::string::npos);
}

TEST_CASE("undo restores the pre-op state") {
  std::string out = repl_run(
      "top\n"
      "ops tighten_rel c 0.9\n"
      "ops split c c1 c2\n"
      "undo\n"
      "show\n"
      "quit\n");
  auto undone = out.find("undone");
  REQUIRE(undone != std::string::npos);
  CHECK(out.find("components: c >= 0.9", undone) != std::string::npos);
  CHECK(out.find("c1", undone) == std::string::npos);
}

TEST_CASE("a failing op leaves the session untouched") {
  std::string out = repl_run(
      "top\n"
      "ops relax_rel c 2.0\n"
      "show\n"
      "quit\n");
  CHECK(out.find("error: InvalidBound") != std::string::npos);
  CHECK(out.find("components: c >= 0") != std::string::npos);
}

TEST_CASE("history prints a replayable script") {
  std::string out = repl_run(
      "top\n"
      "ops tighten_rel c 0.9\n"
      "ops split c c1 c2\n"
      "history\n"
      "quit\n");
  auto start = out.find('[');
  REQUIRE(start != std::string::npos);
  auto end = out.rfind(']');
  OpScript script = parse_script_file(out.substr(start, end - start + 1));
  CHECK(props_equal(apply_script(script, top()),
                    walkthrough_states(frac(9, 10))[1]));
}

TEST_CASE("the wf command reports rule verdicts") {
  std::string out = repl_run("top\nwf\nquit\n");
  CHECK(out.find("initiality: ok") != std::string::npos);
  CHECK(out.find("termination: ok") != std::string::npos);
  CHECK(out.find("monotonicity: ok") != std::string::npos);
}

TEST_CASE("cli eval prints the exact reliability") {
  RunResult r = run_cli("eval " + kModels + "/s6.json");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("R(sys) = 0.972 = 0.972") != std::string::npos);
  RunResult at = run_cli("eval " + kModels + "/s6.json --at c1=0.5 --at c2=0.5 --at c3=0.5");
  CHECK(at.exit_code == 0);
  CHECK(at.output.find("= 0.5") != std::string::npos);
}

TEST_CASE("cli check fails with a category on an ill-formed model") {
  std::string path = "/tmp/reliamis_bad_model.json";
  write_file(path, R"({
    "components": [{"name": "c1", "rel": "0.9"}, {"name": "c2", "rel": "0.9"}],
    "deps": [{"causes": ["c1"], "effects": [], "system": true}]
  })");
  RunResult r = run_cli("check " + path);
  CHECK(r.exit_code != 0);
  CHECK(r.output.find("error: NotWellFormed") != std::string::npos);
  RunResult ok = run_cli("check " + kModels + "/series.json");
  CHECK(ok.exit_code == 0);
}

TEST_CASE("cli errors carry machine-readable categories") {
  RunResult missing = run_cli("eval /tmp/does_not_exist_reliamis.json");
  CHECK(missing.exit_code != 0);
  CHECK(missing.output.find("error: IoError") != std::string::npos);

  std::string path = "/tmp/reliamis_range.json";
  write_file(path, R"({"components": [{"name": "c1", "rel": 1.5}], "deps": []})");
  RunResult range = run_cli("eval " + path);
  CHECK(range.exit_code != 0);
  CHECK(range.output.find("error: ParseError") != std::string::npos);
}

TEST_CASE("cli leq finds the walkthrough witness") {
  auto states = walkthrough_states(frac(9, 10));
  write_file("/tmp/reliamis_s6.json", save_model_file(states[5]));
  write_file("/tmp/reliamis_s4.json", save_model_file(states[3]));
  RunResult r = run_cli("leq /tmp/reliamis_s6.json /tmp/reliamis_s4.json --depth 2");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("below-or-equal") != std::string::npos);
  RunResult not_leq =
      run_cli("leq /tmp/reliamis_s4.json /tmp/reliamis_s6.json --depth 2");
  CHECK(not_leq.exit_code == 3);
}

TEST_CASE("cli roundtrip, simulate, abstract and concretize run end to end") {
  RunResult rt = run_cli("roundtrip " + kModels + "/coupled_parallel.json");
  CHECK(rt.exit_code == 0);
  CHECK(rt.output.find("props-first: holds") != std::string::npos);
  CHECK(rt.output.find("model-first: holds") != std::string::npos);

  RunResult sim =
      run_cli("simulate " + kModels + "/series.json --trials 20000 --seed 9");
  CHECK(sim.exit_code == 0);
  CHECK(sim.output.find("estimate = 0.8") != std::string::npos);

  RunResult abs = run_cli("abstract " + kModels + "/series.json --output /tmp/reliamis_series_matrix.json --dot /tmp/reliamis_series.dot");
  CHECK(abs.exit_code == 0);
  RunResult conc = run_cli("concretize /tmp/reliamis_series_matrix.json");
  CHECK(conc.exit_code == 0);
  PropertySet p = parse_model_file(conc.output);
  CHECK(props_equal(p, series(frac(9, 10))));

  RunResult norm = run_cli("normalize " + kModels + "/series.json");
  CHECK(norm.exit_code == 0);
  CHECK(norm.output == read_file(kModels + "/series.json"));
}

TEST_CASE("the environment seed is the simulate default") {
  RunResult env = run_cli("simulate " + kModels + "/series.json --trials 5000");
  RunResult with_env{0, ""};
  {
    std::string path = "/tmp/reliamis_cli_out.txt";
    std::string cmd = "RELIAMIS_SEED=77 " + kCli + " simulate " + kModels +
                      "/series.json --trials 5000 > " + path + " 2>&1";
    int status = std::system(cmd.c_str());
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    with_env = {WEXITSTATUS(status), ss.str()};
  }
  RunResult explicit_seed =
      run_cli("simulate " + kModels + "/series.json --trials 5000 --seed 77");
  CHECK(with_env.exit_code == 0);
  CHECK(with_env.output == explicit_seed.output);
  CHECK(env.output.find("seed=1") != std::string::npos);
}

TEST_CASE("cli apply runs a script file") {
  write_file("/tmp/reliamis_walk.json",
             save_script_file(walkthrough_script(frac(9, 10))));
  write_file("/tmp/reliamis_top.json", save_model_file(top()));
  RunResult r = run_cli("apply /tmp/reliamis_walk.json /tmp/reliamis_top.json");
  CHECK(r.exit_code == 0);
  CHECK(props_equal(parse_model_file(r.output),
                    walkthrough_states(frac(9, 10)).back()));
}
