#pragma once

#include <stdexcept>
#include <string>

namespace bratteli {

// Every failure the library can signal. Codes are grouped into three classes
// that the CLI maps onto exit codes: bad input (1), mathematically impossible
// for the given data (2), and resource/budget limits (3).
enum class Errc {
  // bad input
  EmptySummands,
  NonPositiveSummand,
  ShapeMismatch,
  NonUnitalMap,
  RankOutOfBounds,
  InvalidMap,
  InvalidChain,
  InvalidElement,
  InvalidMeasure,
  NonPositive,
  NotWidthOne,
  NonPrimeBase,
  ParseError,
  IoError,
  // mathematically impossible
  WidthMismatch,
  NotInterior,
  NotTracePreserving,
  TraceNotPreservable,
  FiberInfeasible,
  VertexNotInterior,
  HullViolation,
  NotInClass,
  DivisibilityViolation,
  NotCoprime,
  NotYetEquivalent,
  IrrationalBreakpoint,
  ContractViolation,
  // budget / resource
  BudgetExceeded,
  Overflow,
};

enum class ErrorClass { BadInput = 1, Impossible = 2, Budget = 3 };

ErrorClass classify(Errc code) noexcept;
const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

  Errc code() const noexcept { return code_; }
  ErrorClass error_class() const noexcept { return classify(code_); }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace bratteli
