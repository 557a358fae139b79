#pragma once

#include <map>
#include <string>

#include "bratteli/rational.hpp"

namespace bratteli {

// Exponent marker for an unbounded prime power.
inline constexpr Int kUnbounded = -1;

// Formal product over primes p of p^e with e a positive integer or
// unbounded. Only primes that actually occur are stored.
struct SupernaturalNumber {
  std::map<Int, Int> exponents;

  bool operator==(const SupernaturalNumber&) const = default;
};

bool is_prime(Int n);

// m-th prime, 1-based: nth_prime(1) == 2.
Int nth_prime(Int m);

// Exact prime factorization of a positive integer (1 factorizes to {}).
std::map<Int, Int> factorize(Int n);

// True when every prime power dividing n is dominated by q's exponents.
bool divides_supernatural(Int n, const SupernaturalNumber& q);

// Parse "2^inf*3^2*5": factors joined by '*', each a prime base optionally
// followed by '^' and a nonnegative integer exponent or "inf". A bare base
// means exponent 1; zero exponents are dropped. Repeated bases and anything
// outside the grammar raise ParseError; a composite base raises NonPrimeBase.
SupernaturalNumber parse_supernatural(const std::string& text);

// Inverse of parse_supernatural: ascending bases, "^e" omitted when e = 1,
// "^inf" for unbounded entries. The empty product prints as "1".
std::string supernatural_str(const SupernaturalNumber& q);

}  // namespace bratteli
