#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ddf {

enum class ErrorKind {
  CompositionMismatch,
  InvalidElement,
  DuplicateElement,
  InvalidObject,
  NotAFibration,
  BaseMismatch,
  InvalidFunctor,
  InvalidTransformation,
  NotADDF,
  NotOverBase,
  InvalidModule,
  InvalidMultimodulation,
  InvalidProfunctor,
  InvalidMulticell,
  FrameMismatch,
  InvalidInput,
  Shape,
  ParseError,
  UnresolvedName,
};

std::string_view to_string(ErrorKind kind);

// Faults only. Axiom failures are reported through Report.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ddf
