#include "kron/errors.hpp"

namespace kron {

const char* error_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::SingularMap: return "SingularMap";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NonSplitting: return "NonSplitting";
    case ErrorKind::NotFullyEntangled: return "NotFullyEntangled";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::DuplicateEigenvalues: return "DuplicateEigenvalues";
    case ErrorKind::ConditionViolated: return "ConditionViolated";
    case ErrorKind::InsufficientBlocks: return "InsufficientBlocks";
    case ErrorKind::ScopeViolation: return "ScopeViolation";
  }
  return "Error";
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::NonSplitting: return 2;
    case ErrorKind::NotFullyEntangled: return 3;
    default: return 1;
  }
}

}  // namespace kron
