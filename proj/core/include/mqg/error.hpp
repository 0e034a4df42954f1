#pragma once

#include <stdexcept>
#include <string>

namespace mqg {

enum class ErrorKind {
  DivisionByZero,
  DenominatorVanishes,
  OrderMismatch,
  NotExpandable,
  ShapeMismatch,
  PivotPole,
  NotASubspace,
  InvalidParams,
  BadIndices,
  RequiresCubeRoot,
  NotReducible,
  Unsupported,
  NotAntisymmetric,
  DimensionOverflow,
  NotInvertible,
  IncompatibleStructures,
  SplitFails,
  NotIsomorphic,
  ParseError,
  InputError,
};

const char* error_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind k, const std::string& msg)
      : std::runtime_error(std::string(error_name(k)) + ": " + msg), kind_(k) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

}  // namespace mqg
