#include "reliamis/errors.hpp"

namespace reliamis {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::kUndeclaredComponent: return "UndeclaredComponent";
    case Errc::kInvalidComponentName: return "InvalidComponentName";
    case Errc::kInvalidBound: return "InvalidBound";
    case Errc::kDuplicateComponent: return "DuplicateComponent";
    case Errc::kNotARelaxation: return "NotARelaxation";
    case Errc::kNotARefinement: return "NotARefinement";
    case Errc::kSameComponent: return "SameComponent";
    case Errc::kNameCollision: return "NameCollision";
    case Errc::kEmptyCauses: return "EmptyCauses";
    case Errc::kEffectInCauses: return "EffectInCauses";
    case Errc::kBreaksTermination: return "BreaksTermination";
    case Errc::kBreaksMonotonicity: return "BreaksMonotonicity";
    case Errc::kDepthZero: return "DepthZero";
    case Errc::kUniverseTooLarge: return "UniverseTooLarge";
    case Errc::kUnsupportedOperation: return "UnsupportedOperation";
    case Errc::kNotWellFormed: return "NotWellFormed";
    case Errc::kBottomNotConcrete: return "BottomNotConcrete";
    case Errc::kInvalidModel: return "InvalidModel";
    case Errc::kPartialAssignment: return "PartialAssignment";
    case Errc::kTooLarge: return "TooLarge";
    case Errc::kParseError: return "ParseError";
    case Errc::kUnknownKey: return "UnknownKey";
    case Errc::kIoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace reliamis
