#pragma once

#include <stdexcept>
#include <string>

namespace phl {

enum class ErrorKind {
  InvalidParams,
  ZeroArgument,
  InsufficientPrecision,
  NotAUnit,
  Singular,
  ShapeMismatch,
  BudgetTooSmall,
  NotInSupport,
  NotInWJ,
  TooLarge,
  DimensionCap,
  NormalizationError,
  Parse,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace phl
