#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace reliamis {

// Interactive refinement session with undo. One command per line:
//   top                      start from the most general system
//   load <file>              load a model file
//   show | wf                inspect the current property set
//   ops <op line>            apply an operator, e.g. "ops split c c1 c2"
//   undo | history           pop the last op / print the replayable script
//   eval [name=p ...]        abstract and evaluate, optionally at overrides
//   abstract                 print the abstracted model (matrix form)
//   dot <path>               write the abstracted chain as Graphviz
//   roundtrip [depth]        check p against concretize(abstract(p))
//   leq <file> [depth]       search a generalization witness to the file's set
//   save <path>              write the canonical model file
//   quit
// Command failures report the error and leave the session state unchanged.
// Returns the process exit code.
int repl_session(std::istream& in, std::ostream& out,
                 const std::optional<std::string>& initial_model_path,
                 bool prompt);

}  // namespace reliamis
