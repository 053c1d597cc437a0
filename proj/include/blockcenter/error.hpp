#pragma once

#include <stdexcept>
#include <string>

namespace bc {

// Error kinds mirror the failure modes of the public operations. The CLI maps
// them onto its exit-code contract (2 = parse, 3 = guard, 4 = violation).
enum class ErrorKind {
  UnknownFamily,
  BadParameters,
  OrderGuardExceeded,
  DegreeGuardExceeded,
  DimensionMismatch,
  NotCommutative,
  ParentMismatch,
  NotLocal,
  WrongCharacteristic,
  CentralityViolated,
  NotFiniteDimensional,
  InconsistentRelations,
  UnsupportedCase,
  NotApplicable,
  ZeroDefect,
  MissingAnnotation,
  DivisibilityViolated,
  ClassificationViolated,
  ParseError,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

inline void require(bool cond, ErrorKind kind, const std::string& msg) {
  if (!cond) fail(kind, msg);
}

}  // namespace bc
