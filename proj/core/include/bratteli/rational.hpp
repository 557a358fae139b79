#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bratteli/error.hpp"

namespace bratteli {

// Exact rational scalar. mpq_class keeps values canonical (reduced, positive
// denominator), which the whole library relies on for == and hashing of
// string forms.
using Rat = mpq_class;

// Combinatorial integers (summand sizes, multiplicities, ranks). Kept at
// 64 bits because the wire format stores them as JSON numbers; composing
// paths go through checked_mul/checked_add and raise Errc::Overflow rather
// than wrapping.
using Int = std::int64_t;

Int checked_add(Int a, Int b);
Int checked_mul(Int a, Int b);
Int checked_lcm(Int a, Int b);

// Parses "num", "num/den" with optional leading '-'. Rejects decimals and
// anything else; normalizes the result. Throws Errc::ParseError.
Rat rat_parse(std::string_view text);

// Canonical form: "num" when the denominator is 1, else "num/den".
std::string rat_str(const Rat& q);

// Least n >= 1 such that n*q is an integer for every q in the list.
mpz_class den_lcm(const std::vector<Rat>& qs);

// mpz -> Int with range check (Errc::Overflow).
Int to_int(const mpz_class& z);

inline Rat rat_of(Int num, Int den) {
  Rat q(static_cast<long>(num), static_cast<long>(den));
  q.canonicalize();
  return q;
}

}  // namespace bratteli
