#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace reliamis {

// Error categories surfaced through the library API and mapped to
// machine-readable names at the CLI boundary.
enum class Errc {
  kUndeclaredComponent,
  kInvalidComponentName,
  kInvalidBound,
  kDuplicateComponent,
  kNotARelaxation,
  kNotARefinement,
  kSameComponent,
  kNameCollision,
  kEmptyCauses,
  kEffectInCauses,
  kBreaksTermination,
  kBreaksMonotonicity,
  kDepthZero,
  kUniverseTooLarge,
  kUnsupportedOperation,
  kNotWellFormed,
  kBottomNotConcrete,
  kInvalidModel,
  kPartialAssignment,
  kTooLarge,
  kParseError,
  kUnknownKey,
  kIoError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const { return code_; }

  // Position of the failing operation when raised from apply_script.
  std::optional<int> script_index() const { return script_index_; }
  void set_script_index(int i) { script_index_ = i; }

 private:
  Errc code_;
  std::optional<int> script_index_;
};

}  // namespace reliamis
