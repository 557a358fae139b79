#include "bratteli/rational.hpp"

#include <cctype>
#include <limits>

namespace bratteli {

ErrorClass classify(Errc code) noexcept {
  switch (code) {
    case Errc::EmptySummands:
    case Errc::NonPositiveSummand:
    case Errc::ShapeMismatch:
    case Errc::NonUnitalMap:
    case Errc::RankOutOfBounds:
    case Errc::InvalidMap:
    case Errc::InvalidChain:
    case Errc::InvalidElement:
    case Errc::InvalidMeasure:
    case Errc::NonPositive:
    case Errc::NotWidthOne:
    case Errc::NonPrimeBase:
    case Errc::ParseError:
    case Errc::IoError:
      return ErrorClass::BadInput;
    case Errc::WidthMismatch:
    case Errc::NotInterior:
    case Errc::NotTracePreserving:
    case Errc::TraceNotPreservable:
    case Errc::FiberInfeasible:
    case Errc::VertexNotInterior:
    case Errc::HullViolation:
    case Errc::NotInClass:
    case Errc::DivisibilityViolation:
    case Errc::NotCoprime:
    case Errc::NotYetEquivalent:
    case Errc::IrrationalBreakpoint:
    case Errc::ContractViolation:
      return ErrorClass::Impossible;
    case Errc::BudgetExceeded:
    case Errc::Overflow:
      return ErrorClass::Budget;
  }
  return ErrorClass::BadInput;
}

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::EmptySummands: return "EmptySummands";
    case Errc::NonPositiveSummand: return "NonPositiveSummand";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::NonUnitalMap: return "NonUnitalMap";
    case Errc::RankOutOfBounds: return "RankOutOfBounds";
    case Errc::InvalidMap: return "InvalidMap";
    case Errc::InvalidChain: return "InvalidChain";
    case Errc::InvalidElement: return "InvalidElement";
    case Errc::InvalidMeasure: return "InvalidMeasure";
    case Errc::NonPositive: return "NonPositive";
    case Errc::NotWidthOne: return "NotWidthOne";
    case Errc::NonPrimeBase: return "NonPrimeBase";
    case Errc::ParseError: return "ParseError";
    case Errc::IoError: return "IoError";
    case Errc::WidthMismatch: return "WidthMismatch";
    case Errc::NotInterior: return "NotInterior";
    case Errc::NotTracePreserving: return "NotTracePreserving";
    case Errc::TraceNotPreservable: return "TraceNotPreservable";
    case Errc::FiberInfeasible: return "FiberInfeasible";
    case Errc::VertexNotInterior: return "VertexNotInterior";
    case Errc::HullViolation: return "HullViolation";
    case Errc::NotInClass: return "NotInClass";
    case Errc::DivisibilityViolation: return "DivisibilityViolation";
    case Errc::NotCoprime: return "NotCoprime";
    case Errc::NotYetEquivalent: return "NotYetEquivalent";
    case Errc::IrrationalBreakpoint: return "IrrationalBreakpoint";
    case Errc::ContractViolation: return "ContractViolation";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::Overflow: return "Overflow";
  }
  return "UnknownError";
}

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) fail(Errc::Overflow, "integer addition overflow");
  return r;
}

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) fail(Errc::Overflow, "integer multiplication overflow");
  return r;
}

Int to_int(const mpz_class& z) {
  static_assert(sizeof(long) == sizeof(Int), "LP64 platform expected");
  if (!mpz_fits_slong_p(z.get_mpz_t()))
    fail(Errc::Overflow, "value exceeds 64-bit range: " + z.get_str());
  return static_cast<Int>(mpz_get_si(z.get_mpz_t()));
}

Int checked_lcm(Int a, Int b) {
  mpz_class l;
  mpz_lcm(l.get_mpz_t(), mpz_class(static_cast<long>(a)).get_mpz_t(),
          mpz_class(static_cast<long>(b)).get_mpz_t());
  return to_int(l);
}

Rat rat_parse(std::string_view text) {
  auto bad = [&]() -> Rat {
    fail(Errc::ParseError, "expected integer or fraction a/b, got \"" + std::string(text) + "\"");
  };
  if (text.empty()) return bad();
  std::string_view num = text, den;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
    if (den.empty()) return bad();
  }
  auto is_int = [](std::string_view s) {
    if (!s.empty() && s.front() == '-') s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  if (!is_int(num) || (!den.empty() && !is_int(den))) return bad();
  mpz_class n(std::string(num), 10);
  mpz_class d = den.empty() ? mpz_class(1) : mpz_class(std::string(den), 10);
  if (d == 0) fail(Errc::ParseError, "zero denominator in \"" + std::string(text) + "\"");
  Rat q(n, d);
  q.canonicalize();
  return q;
}

std::string rat_str(const Rat& q) { return q.get_str(); }

mpz_class den_lcm(const std::vector<Rat>& qs) {
  mpz_class l(1);
  for (const Rat& q : qs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  return l;
}

}  // namespace bratteli
