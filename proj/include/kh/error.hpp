#pragma once

#include <stdexcept>
#include <string>

namespace kh {

enum class Err {
  DivisionByZero,
  BadEvaluationPoint,
  SubstitutionKillsDenominator,
  SchemaError,
  NonPlanarEvent,
  ClosedFreeComponent,
  InactiveBridge,
  WordTooLong,
  NonInvertiblePivot,
  NeedsWordReduction,
  BoundaryMismatch,
  VariableCollision,
  UnknownFixture,
  StateBudgetExceeded,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
 public:
  Error(Err kind, const std::string& msg)
      : std::runtime_error(std::string(err_name(kind)) + ": " + msg), kind_(kind) {}
  Err kind() const { return kind_; }

 private:
  Err kind_;
};

}  // namespace kh
