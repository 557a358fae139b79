#include "bratteli/supernatural.hpp"

#include <cctype>

#include "bratteli/error.hpp"

namespace bratteli {

bool is_prime(Int n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (Int d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

Int nth_prime(Int m) {
  if (m < 1) fail(Errc::NonPositive, "prime index must be positive");
  Int count = 0;
  for (Int p = 2;; ++p) {
    if (is_prime(p) && ++count == m) return p;
  }
}

std::map<Int, Int> factorize(Int n) {
  if (n < 1) fail(Errc::NonPositive, "factorize expects a positive integer");
  std::map<Int, Int> out;
  for (Int p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  if (n > 1) ++out[n];
  return out;
}

bool divides_supernatural(Int n, const SupernaturalNumber& q) {
  for (const auto& [p, e] : factorize(n)) {
    auto it = q.exponents.find(p);
    if (it == q.exponents.end()) return false;
    if (it->second != kUnbounded && it->second < e) return false;
  }
  return true;
}

namespace {

// One factor "base", "base^e", or "base^inf"; `pos` is advanced past it.
void parse_factor(const std::string& text, size_t& pos, SupernaturalNumber& out) {
  size_t start = pos;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos == start) fail(Errc::ParseError, "expected a prime base in supernatural number");
  if (pos - start > 18) fail(Errc::ParseError, "supernatural base out of range");
  Int base = std::stoll(text.substr(start, pos - start));

  Int exponent = 1;
  if (pos < text.size() && text[pos] == '^') {
    ++pos;
    if (text.compare(pos, 3, "inf") == 0) {
      exponent = kUnbounded;
      pos += 3;
    } else {
      size_t estart = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos == estart) fail(Errc::ParseError, "expected an exponent or 'inf' after '^'");
      if (pos - estart > 18) fail(Errc::ParseError, "supernatural exponent out of range");
      exponent = std::stoll(text.substr(estart, pos - estart));
    }
  }

  if (!is_prime(base))
    fail(Errc::NonPrimeBase, "base " + std::to_string(base) + " is not prime");
  if (out.exponents.count(base))
    fail(Errc::ParseError, "repeated base " + std::to_string(base));
  if (exponent != 0) out.exponents[base] = exponent;
}

}  // namespace

SupernaturalNumber parse_supernatural(const std::string& text) {
  std::string compact;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  }
  if (compact.empty()) fail(Errc::ParseError, "empty supernatural number");

  SupernaturalNumber out;
  size_t pos = 0;
  for (;;) {
    parse_factor(compact, pos, out);
    if (pos == compact.size()) break;
    if (compact[pos] != '*')
      fail(Errc::ParseError, std::string("unexpected character '") + compact[pos] + "'");
    ++pos;
  }
  return out;
}

std::string supernatural_str(const SupernaturalNumber& q) {
  if (q.exponents.empty()) return "1";
  std::string out;
  for (const auto& [p, e] : q.exponents) {
    if (!out.empty()) out += '*';
    out += std::to_string(p);
    if (e == kUnbounded) {
      out += "^inf";
    } else if (e != 1) {
      out += '^' + std::to_string(e);
    }
  }
  return out;
}

}  // namespace bratteli
