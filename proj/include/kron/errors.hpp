#pragma once

#include <stdexcept>
#include <string>

namespace kron {

enum class ErrorKind {
  Parse,
  SingularMap,
  ShapeMismatch,
  NonSplitting,
  NotFullyEntangled,
  IndexOutOfRange,
  DuplicateEigenvalues,
  ConditionViolated,
  InsufficientBlocks,
  ScopeViolation,
};

const char* error_name(ErrorKind k);

// Process exit code used by the command-line tool for each error kind.
int exit_code(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

}  // namespace kron
