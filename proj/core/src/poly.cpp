#include "bratteli/poly.hpp"

#include <algorithm>
#include <cstdlib>

#include "bratteli/error.hpp"

namespace bratteli {

namespace {

void trim(std::vector<Rat>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

Poly monic(const Poly& p) {
  if (poly_is_zero(p)) return p;
  return poly_scale(p, Rat(1) / p.c.back());
}

// Exact division used inside factor bookkeeping, where the remainder is
// zero by construction; a nonzero remainder means corrupted state.
Poly exact_div(const Poly& a, const Poly& b) {
  auto [q, r] = poly_divmod(a, b);
  if (!poly_is_zero(r)) fail(Errc::ContractViolation, "inexact polynomial division");
  return q;
}

// Largest i with breaks[i] <= t, clamped so i indexes a piece.
size_t locate_piece(const std::vector<Rat>& breaks, const Rat& t) {
  size_t i = breaks.size() - 1;
  while (i > 0 && breaks[i] > t) --i;
  return std::min(i, breaks.size() - 2);
}

}  // namespace

Poly poly_make(std::vector<Rat> coeffs) {
  trim(coeffs);
  return Poly{std::move(coeffs)};
}

Poly poly_constant(const Rat& value) { return poly_make({value}); }

Int poly_deg(const Poly& p) { return static_cast<Int>(p.c.size()) - 1; }

Poly poly_add(const Poly& a, const Poly& b) {
  std::vector<Rat> c(std::max(a.c.size(), b.c.size()), Rat(0));
  for (size_t i = 0; i < a.c.size(); ++i) c[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) c[i] += b.c[i];
  return poly_make(std::move(c));
}

Poly poly_sub(const Poly& a, const Poly& b) { return poly_add(a, poly_neg(b)); }

Poly poly_mul(const Poly& a, const Poly& b) {
  if (poly_is_zero(a) || poly_is_zero(b)) return {};
  std::vector<Rat> c(a.c.size() + b.c.size() - 1, Rat(0));
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) c[i + j] += a.c[i] * b.c[j];
  return poly_make(std::move(c));
}

Poly poly_neg(const Poly& a) {
  Poly out = a;
  for (Rat& x : out.c) x = -x;
  return out;
}

Poly poly_scale(const Poly& a, const Rat& s) {
  if (s == 0) return {};
  Poly out = a;
  for (Rat& x : out.c) x *= s;
  return out;
}

Rat poly_eval(const Poly& p, const Rat& t) {
  Rat acc(0);
  for (size_t i = p.c.size(); i-- > 0;) acc = acc * t + p.c[i];
  return acc;
}

Poly poly_derive(const Poly& p) {
  if (p.c.size() <= 1) return {};
  std::vector<Rat> c(p.c.size() - 1);
  for (size_t i = 1; i < p.c.size(); ++i) c[i - 1] = p.c[i] * Rat(static_cast<long>(i));
  return poly_make(std::move(c));
}

Poly poly_antiderivative(const Poly& p) {
  std::vector<Rat> c(p.c.size() + 1, Rat(0));
  for (size_t i = 0; i < p.c.size(); ++i) c[i + 1] = p.c[i] / Rat(static_cast<long>(i + 1));
  return poly_make(std::move(c));
}

Rat poly_integrate(const Poly& p, const Rat& a, const Rat& b) {
  Poly anti = poly_antiderivative(p);
  return poly_eval(anti, b) - poly_eval(anti, a);
}

Poly poly_compose(const Poly& p, const Poly& q) {
  Poly acc;
  for (size_t i = p.c.size(); i-- > 0;) acc = poly_add(poly_mul(acc, q), poly_constant(p.c[i]));
  return acc;
}

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
  if (poly_is_zero(b)) fail(Errc::ShapeMismatch, "polynomial division by zero");
  Poly r = a;
  if (a.c.size() < b.c.size()) return {{}, std::move(r)};
  std::vector<Rat> q(a.c.size() - b.c.size() + 1, Rat(0));
  while (r.c.size() >= b.c.size()) {
    size_t k = r.c.size() - b.c.size();
    Rat coef = r.c.back() / b.c.back();
    q[k] = coef;
    for (size_t i = 0; i < b.c.size(); ++i) r.c[k + i] -= coef * b.c[i];
    trim(r.c);
    if (r.c.empty()) break;
  }
  return {poly_make(std::move(q)), std::move(r)};
}

Poly poly_gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!poly_is_zero(y)) {
    Poly rem = poly_divmod(x, y).second;
    x = std::move(y);
    y = std::move(rem);
  }
  return monic(x);
}

std::vector<Poly> yun_squarefree(const Poly& p) {
  if (poly_is_zero(p)) fail(Errc::ShapeMismatch, "squarefree decomposition of zero");
  Poly f = monic(p);
  if (poly_deg(f) == 0) return {};
  Poly fp = poly_derive(f);
  Poly d = poly_gcd(f, fp);
  Poly b = exact_div(f, d);
  Poly c = exact_div(fp, d);
  Poly e = poly_sub(c, poly_derive(b));
  std::vector<Poly> out;
  while (poly_deg(b) > 0) {
    Poly a = poly_gcd(b, e);
    out.push_back(a);
    b = exact_div(b, a);
    c = exact_div(e, a);
    e = poly_sub(c, poly_derive(b));
  }
  return out;
}

Poly odd_multiplicity_part(const Poly& p) {
  Poly s = poly_constant(Rat(1));
  std::vector<Poly> factors = yun_squarefree(p);
  for (size_t i = 0; i < factors.size(); ++i)
    if (i % 2 == 0) s = poly_mul(s, factors[i]);  // multiplicity i+1 is odd
  return monic(s);
}

Int count_roots_open(const Poly& p, const Rat& a, const Rat& b) {
  if (poly_is_zero(p)) fail(Errc::ShapeMismatch, "root count of the zero polynomial");
  if (a > b) fail(Errc::ShapeMismatch, "interval endpoints out of order");
  if (a == b) return 0;
  Poly s = exact_div(monic(p), poly_gcd(p, poly_derive(p)));
  for (const Rat& endpoint : {a, b}) {
    if (poly_deg(s) > 0 && poly_eval(s, endpoint) == 0)
      s = exact_div(s, poly_make({-endpoint, Rat(1)}));
  }
  if (poly_deg(s) <= 0) return 0;

  std::vector<Poly> chain = {s, poly_derive(s)};
  while (!poly_is_zero(chain.back()))
    chain.push_back(poly_neg(poly_divmod(chain[chain.size() - 2], chain.back()).second));
  chain.pop_back();

  auto changes_at = [&](const Rat& x) {
    Int count = 0;
    int last = 0;
    for (const Poly& f : chain) {
      Rat v = poly_eval(f, x);
      int sg = v > 0 ? 1 : (v < 0 ? -1 : 0);
      if (sg != 0) {
        if (last != 0 && sg != last) ++count;
        last = sg;
      }
    }
    return count;
  };
  return changes_at(a) - changes_at(b);
}

bool poly_nonneg_on(const Poly& p, const Rat& a, const Rat& b) {
  if (a > b) fail(Errc::ShapeMismatch, "interval endpoints out of order");
  if (poly_is_zero(p)) return true;
  if (a == b) return poly_eval(p, a) >= 0;
  if (poly_eval(p, a) < 0 || poly_eval(p, b) < 0) return false;
  Poly s = odd_multiplicity_part(p);
  if (poly_deg(s) > 0 && count_roots_open(s, a, b) > 0) return false;
  // The sign is now constant off a finite set; sample it, stepping past
  // even-touch zeros deterministically.
  Rat t = (a + b) / 2;
  for (long k = 3; poly_eval(p, t) == 0; ++k) {
    if (k > poly_deg(p) + 4) fail(Errc::ContractViolation, "sign sampling failed to terminate");
    t = a + (b - a) / Rat(k);
  }
  return poly_eval(p, t) > 0;
}

namespace {

std::vector<Int> divisors_of(const mpz_class& n_in) {
  mpz_class n = abs(n_in);
  if (n > mpz_class(1000000000000L))
    fail(Errc::BudgetExceeded, "coefficient too large for rational root enumeration");
  Int m = to_int(n);
  std::vector<Int> out;
  for (Int d = 1; d * d <= m; ++d) {
    if (m % d == 0) {
      out.push_back(d);
      if (d != m / d) out.push_back(m / d);
    }
  }
  return out;
}

}  // namespace

std::vector<Rat> rational_roots_in(const Poly& p, const Rat& a, const Rat& b) {
  if (poly_is_zero(p)) fail(Errc::ShapeMismatch, "root search in the zero polynomial");
  if (a > b) fail(Errc::ShapeMismatch, "interval endpoints out of order");
  std::vector<Rat> roots;
  // Integer model: clear denominators, then strip powers of t.
  mpz_class den(1);
  for (const Rat& x : p.c) den = lcm(den, x.get_den());
  std::vector<mpz_class> n(p.c.size());
  for (size_t i = 0; i < p.c.size(); ++i) {
    Rat scaled = p.c[i] * Rat(den);
    n[i] = scaled.get_num();
  }
  size_t low = 0;
  while (low < n.size() && n[low] == 0) ++low;
  if (low > 0 && a <= 0 && 0 <= b) roots.push_back(Rat(0));
  if (n.size() - low <= 1) return roots;  // only powers of t remained
  for (Int dnum : divisors_of(n[low])) {
    for (Int dden : divisors_of(n.back())) {
      for (int sign : {1, -1}) {
        Rat cand = rat_of(sign * dnum, dden);
        if (cand < a || cand > b) continue;
        if (poly_eval(p, cand) == 0) roots.push_back(cand);
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

PiecewisePoly pw_make(std::vector<Rat> breaks, std::vector<Poly> pieces) {
  if (breaks.size() < 2 || pieces.size() + 1 != breaks.size())
    fail(Errc::ShapeMismatch, "need one piece per breakpoint interval");
  for (size_t i = 0; i + 1 < breaks.size(); ++i)
    if (!(breaks[i] < breaks[i + 1]))
      fail(Errc::ShapeMismatch, "breakpoints must be strictly increasing");
  return PiecewisePoly{std::move(breaks), std::move(pieces)};
}

PiecewisePoly pw_poly(const Rat& lo, const Rat& hi, Poly p) {
  return pw_make({lo, hi}, {std::move(p)});
}

Rat pw_eval(const PiecewisePoly& f, const Rat& t) {
  if (t < f.breaks.front() || t > f.breaks.back())
    fail(Errc::ShapeMismatch, "evaluation point outside the domain");
  return poly_eval(f.pieces[locate_piece(f.breaks, t)], t);
}

bool pw_is_continuous(const PiecewisePoly& f) {
  for (size_t i = 1; i < f.pieces.size(); ++i)
    if (poly_eval(f.pieces[i - 1], f.breaks[i]) != poly_eval(f.pieces[i], f.breaks[i]))
      return false;
  return true;
}

PiecewisePoly pw_refine(const PiecewisePoly& f, const std::vector<Rat>& extra_breaks) {
  std::vector<Rat> merged = f.breaks;
  for (const Rat& x : extra_breaks) {
    if (x < f.breaks.front() || x > f.breaks.back())
      fail(Errc::ShapeMismatch, "refinement point outside the domain");
    merged.push_back(x);
  }
  std::sort(merged.begin(), merged.end());
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  std::vector<Poly> pieces;
  for (size_t i = 0; i + 1 < merged.size(); ++i)
    pieces.push_back(f.pieces[locate_piece(f.breaks, merged[i])]);
  return pw_make(std::move(merged), std::move(pieces));
}

namespace {

template <typename Op>
PiecewisePoly pw_combine(const PiecewisePoly& f, const PiecewisePoly& g, Op op) {
  if (f.breaks.front() != g.breaks.front() || f.breaks.back() != g.breaks.back())
    fail(Errc::ShapeMismatch, "piecewise operands live on different domains");
  PiecewisePoly fr = pw_refine(f, g.breaks);
  PiecewisePoly gr = pw_refine(g, f.breaks);
  std::vector<Poly> pieces;
  for (size_t i = 0; i < fr.pieces.size(); ++i) pieces.push_back(op(fr.pieces[i], gr.pieces[i]));
  return pw_make(fr.breaks, std::move(pieces));
}

}  // namespace

PiecewisePoly pw_add(const PiecewisePoly& f, const PiecewisePoly& g) {
  return pw_combine(f, g, poly_add);
}

PiecewisePoly pw_mul(const PiecewisePoly& f, const PiecewisePoly& g) {
  return pw_combine(f, g, poly_mul);
}

PiecewisePoly pw_scale(const PiecewisePoly& f, const Rat& s) {
  PiecewisePoly out = f;
  for (Poly& p : out.pieces) p = poly_scale(p, s);
  return out;
}

Rat pw_integral(const PiecewisePoly& f) {
  Rat total(0);
  for (size_t i = 0; i < f.pieces.size(); ++i)
    total += poly_integrate(f.pieces[i], f.breaks[i], f.breaks[i + 1]);
  return total;
}

PiecewisePoly pw_compose(const PiecewisePoly& f, const PiecewisePoly& q) {
  if (!pw_is_continuous(q))
    fail(Errc::ShapeMismatch, "inner function of a composition must be continuous");
  for (size_t j = 0; j < q.pieces.size(); ++j) {
    Poly d = poly_derive(q.pieces[j]);
    if (poly_is_zero(d) || !poly_nonneg_on(d, q.breaks[j], q.breaks[j + 1]))
      fail(Errc::ShapeMismatch, "inner function of a composition must be strictly increasing");
  }
  if (pw_eval(q, q.breaks.front()) != f.breaks.front() ||
      pw_eval(q, q.breaks.back()) != f.breaks.back())
    fail(Errc::ShapeMismatch, "inner function range must equal the outer domain");

  // Breakpoints of the composite: q's own, plus preimages of f's breakpoints.
  std::vector<Rat> values;
  for (const Rat& u : q.breaks) values.push_back(pw_eval(q, u));
  std::vector<Rat> tbreaks = q.breaks;
  for (size_t bi = 1; bi + 1 < f.breaks.size(); ++bi) {
    const Rat& beta = f.breaks[bi];
    size_t j = values.size() - 1;
    while (j > 0 && values[j] > beta) --j;
    if (values[j] == beta) continue;  // preimage is already a breakpoint of q
    Poly shifted = poly_sub(q.pieces[j], poly_constant(beta));
    std::vector<Rat> roots = rational_roots_in(shifted, q.breaks[j], q.breaks[j + 1]);
    if (roots.empty())
      fail(Errc::IrrationalBreakpoint,
           "a breakpoint preimage under the inner function is not rational");
    tbreaks.push_back(roots.front());
  }
  std::sort(tbreaks.begin(), tbreaks.end());
  tbreaks.erase(std::unique(tbreaks.begin(), tbreaks.end()), tbreaks.end());

  std::vector<Poly> pieces;
  for (size_t i = 0; i + 1 < tbreaks.size(); ++i) {
    size_t j = locate_piece(q.breaks, tbreaks[i]);
    Rat mid = (tbreaks[i] + tbreaks[i + 1]) / 2;
    Rat v = poly_eval(q.pieces[j], mid);
    size_t fi = locate_piece(f.breaks, v);
    pieces.push_back(poly_compose(f.pieces[fi], q.pieces[j]));
  }
  return pw_make(std::move(tbreaks), std::move(pieces));
}

}  // namespace bratteli
