#pragma once

#include <utility>
#include <vector>

#include "bratteli/rational.hpp"

namespace bratteli {

// Univariate polynomial with rational coefficients, c[i] multiplying t^i.
// Normal form: no trailing zero coefficients; the zero polynomial has an
// empty coefficient list.
struct Poly {
  std::vector<Rat> c;

  bool operator==(const Poly&) const = default;
};

Poly poly_make(std::vector<Rat> coeffs);
Poly poly_constant(const Rat& value);
inline bool poly_is_zero(const Poly& p) { return p.c.empty(); }
// Degree, with the zero polynomial at -1.
Int poly_deg(const Poly& p);

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_neg(const Poly& a);
Poly poly_scale(const Poly& a, const Rat& s);
Rat poly_eval(const Poly& p, const Rat& t);
Poly poly_derive(const Poly& p);
Poly poly_antiderivative(const Poly& p);
Rat poly_integrate(const Poly& p, const Rat& a, const Rat& b);
// p(q(t)).
Poly poly_compose(const Poly& p, const Poly& q);

// Euclidean division (quotient, remainder); b must be nonzero.
std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b);
// Monic gcd; gcd(0, 0) = 0.
Poly poly_gcd(const Poly& a, const Poly& b);
// Yun decomposition: p = lc(p) * prod out[i]^(i+1) with out[i] monic and
// squarefree, pairwise coprime. p must be nonzero.
std::vector<Poly> yun_squarefree(const Poly& p);
// Monic product of the odd-multiplicity squarefree factors: the locus where
// p changes sign. p must be nonzero.
Poly odd_multiplicity_part(const Poly& p);

// Number of distinct real roots in the open interval (a, b), by a Sturm
// chain on the squarefree part with endpoint roots divided out first.
// p must be nonzero and a <= b.
Int count_roots_open(const Poly& p, const Rat& a, const Rat& b);
// Exact decision of p(t) >= 0 for all t in [a, b]: endpoint values, absence
// of odd-multiplicity roots inside, and the sign of an interior sample
// (deterministically perturbed off even-touch zeros).
bool poly_nonneg_on(const Poly& p, const Rat& a, const Rat& b);
// All rational roots of p lying in the closed interval [a, b], ascending.
// p must be nonzero. Candidate enumeration is capped (BudgetExceeded).
std::vector<Rat> rational_roots_in(const Poly& p, const Rat& a, const Rat& b);

// Continuous piecewise polynomial on [breaks.front(), breaks.back()]:
// pieces[i] applies on [breaks[i], breaks[i+1]]. Breaks are strictly
// increasing and pieces is one shorter than breaks. Continuity is part of
// pw_make's contract checkable via pw_is_continuous, not an implicit
// invariant of the struct.
struct PiecewisePoly {
  std::vector<Rat> breaks;
  std::vector<Poly> pieces;

  bool operator==(const PiecewisePoly&) const = default;
};

PiecewisePoly pw_make(std::vector<Rat> breaks, std::vector<Poly> pieces);
// Single piece covering [lo, hi].
PiecewisePoly pw_poly(const Rat& lo, const Rat& hi, Poly p);
Rat pw_eval(const PiecewisePoly& f, const Rat& t);
bool pw_is_continuous(const PiecewisePoly& f);
// Same function on a refined breakpoint set including extra_breaks (those
// inside the domain; outside points are rejected).
PiecewisePoly pw_refine(const PiecewisePoly& f, const std::vector<Rat>& extra_breaks);
PiecewisePoly pw_add(const PiecewisePoly& f, const PiecewisePoly& g);
PiecewisePoly pw_mul(const PiecewisePoly& f, const PiecewisePoly& g);
PiecewisePoly pw_scale(const PiecewisePoly& f, const Rat& s);
Rat pw_integral(const PiecewisePoly& f);

// f(q(t)) as a piecewise polynomial in t. Requires q continuous and
// strictly increasing on each piece, with q of the endpoints of its domain
// equal to f's domain endpoints. New breakpoints are the q-preimages of f's
// breakpoints; when such a preimage is not rational the composition has no
// representation here and IrrationalBreakpoint is raised.
PiecewisePoly pw_compose(const PiecewisePoly& f, const PiecewisePoly& q);

}  // namespace bratteli
