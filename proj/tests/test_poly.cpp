#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "bratteli/poly.hpp"
#include "test_util.hpp"

using namespace bratteli;

namespace {

Poly from_ints(std::vector<long> coeffs) {
  std::vector<Rat> c;
  for (long v : coeffs) c.emplace_back(v);
  return poly_make(std::move(c));
}

// t^k helper.
Poly monomial(int k) {
  std::vector<Rat> c(k + 1, Rat(0));
  c[k] = 1;
  return poly_make(std::move(c));
}

Poly random_poly(std::mt19937_64& rng, int max_deg) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_int_distribution<int> num(-3, 3);
  std::uniform_int_distribution<int> den(1, 2);
  std::vector<Rat> c(deg(rng) + 1);
  for (Rat& v : c) v = rat_of(num(rng), den(rng));
  return poly_make(std::move(c));
}

}  // namespace

TEST_CASE("normal form strips trailing zeros") {
  CHECK(poly_make({Rat(1), Rat(2), Rat(0)}).c == std::vector<Rat>{Rat(1), Rat(2)});
  CHECK(poly_is_zero(poly_make({Rat(0), Rat(0)})));
  CHECK(poly_deg(from_ints({1, 2, 3})) == 2);
  CHECK(poly_deg(Poly{}) == -1);
  CHECK(poly_constant(Rat(0)) == Poly{});
}

TEST_CASE("ring operations against hand values") {
  Poly p = from_ints({1, 2});   // 1 + 2t
  Poly q = from_ints({-1, 1});  // t - 1
  CHECK(poly_add(p, q) == from_ints({0, 3}));
  CHECK(poly_sub(p, q) == from_ints({2, 1}));
  CHECK(poly_mul(p, q) == from_ints({-1, -1, 2}));
  CHECK(poly_neg(q) == from_ints({1, -1}));
  CHECK(poly_scale(p, Rat(1, 2)) == poly_make({Rat(1, 2), Rat(1)}));
  CHECK(poly_eval(p, Rat(3)) == 7);
  CHECK(poly_eval(Poly{}, Rat(5)) == 0);
  CHECK(poly_mul(p, Poly{}) == Poly{});
}

TEST_CASE("calculus operations") {
  Poly p = from_ints({0, 0, 3});  // 3t^2
  CHECK(poly_derive(p) == from_ints({0, 6}));
  CHECK(poly_antiderivative(p) == from_ints({0, 0, 0, 1}));
  CHECK(poly_integrate(p, Rat(0), Rat(1)) == 1);
  CHECK(poly_integrate(from_ints({1}), Rat(2), Rat(5)) == 3);
  CHECK(poly_integrate(from_ints({0, 1}), Rat(0), Rat(1)) == Rat(1, 2));
}

TEST_CASE("composition") {
  Poly p = from_ints({1, 0, 1});  // 1 + t^2
  Poly q = from_ints({0, 2});     // 2t
  CHECK(poly_compose(p, q) == from_ints({1, 0, 4}));
  CHECK(poly_compose(q, p) == from_ints({2, 0, 2}));
  CHECK(poly_compose(p, Poly{}) == from_ints({1}));
}

TEST_CASE("divmod and gcd") {
  Poly a = from_ints({-1, 0, 1});  // t^2 - 1
  Poly b = from_ints({-1, 1});     // t - 1
  auto [quot, rem] = poly_divmod(a, b);
  CHECK(quot == from_ints({1, 1}));
  CHECK(poly_is_zero(rem));
  CHECK(poly_gcd(a, b) == from_ints({-1, 1}));  // monic t - 1
  CHECK(poly_gcd(Poly{}, Poly{}) == Poly{});
  // gcd of coprime polynomials is 1.
  CHECK(poly_gcd(from_ints({1, 1}), from_ints({2, 1})) == from_ints({1}));
}

TEST_CASE("divmod identity a = q b + r on random inputs") {
  std::mt19937_64 rng(424242);
  for (int trial = 0; trial < 60; ++trial) {
    Poly a = random_poly(rng, 5);
    Poly b = random_poly(rng, 3);
    if (poly_is_zero(b)) continue;
    auto [quot, rem] = poly_divmod(a, b);
    CHECK(poly_add(poly_mul(quot, b), rem) == a);
    CHECK(poly_deg(rem) < poly_deg(b));
  }
}

TEST_CASE("yun_squarefree splits multiplicities") {
  // p = (t-1)^2 (t+2): squarefree parts (t+2) at multiplicity 1, (t-1) at 2.
  Poly p = poly_mul(poly_mul(from_ints({-1, 1}), from_ints({-1, 1})), from_ints({2, 1}));
  std::vector<Poly> parts = yun_squarefree(p);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0] == from_ints({2, 1}));
  CHECK(parts[1] == from_ints({-1, 1}));
  // Reassembly: lc * parts[0]^1 * parts[1]^2 = p.
  Poly rebuilt = poly_mul(parts[0], poly_mul(parts[1], parts[1]));
  CHECK(rebuilt == p);
}

TEST_CASE("odd_multiplicity_part is the sign-change locus") {
  Poly square = poly_mul(from_ints({-1, 2}), from_ints({-1, 2}));  // (2t-1)^2
  CHECK(odd_multiplicity_part(square) == from_ints({1}));
  Poly cube = poly_mul(square, from_ints({-1, 2}));
  CHECK(odd_multiplicity_part(cube) == poly_make({Rat(-1, 2), Rat(1)}));  // monic
  CHECK(odd_multiplicity_part(from_ints({3})) == from_ints({1}));
}

TEST_CASE("count_roots_open counts distinct roots in the open interval") {
  Poly p = poly_mul(from_ints({0, 1}), from_ints({-1, 1}));  // t(t-1)
  CHECK(count_roots_open(p, Rat(0), Rat(1)) == 0);   // both roots are endpoints
  CHECK(count_roots_open(p, Rat(-1), Rat(2)) == 2);
  CHECK(count_roots_open(p, Rat(-1), Rat(1, 2)) == 1);
  // Double roots count once.
  Poly sq = poly_mul(from_ints({-1, 2}), from_ints({-1, 2}));
  CHECK(count_roots_open(sq, Rat(0), Rat(1)) == 1);
  // No real roots.
  CHECK(count_roots_open(from_ints({1, 0, 1}), Rat(-10), Rat(10)) == 0);
  CHECK(count_roots_open(from_ints({5}), Rat(0), Rat(1)) == 0);
}

TEST_CASE("poly_nonneg_on decides sign exactly") {
  CHECK(poly_nonneg_on(from_ints({0, 0, 1}), Rat(-1), Rat(1)));       // t^2
  CHECK_FALSE(poly_nonneg_on(from_ints({0, 1}), Rat(-1), Rat(1)));    // t
  CHECK(poly_nonneg_on(from_ints({0, 1}), Rat(0), Rat(1)));
  // Touching zero inside the interval is still nonnegative.
  Poly sq = poly_mul(from_ints({-1, 2}), from_ints({-1, 2}));  // (2t-1)^2
  CHECK(poly_nonneg_on(sq, Rat(0), Rat(1)));
  CHECK_FALSE(poly_nonneg_on(poly_neg(sq), Rat(0), Rat(1)));
  // t(t-1) dips below zero strictly inside [0,1].
  CHECK_FALSE(poly_nonneg_on(poly_mul(from_ints({0, 1}), from_ints({-1, 1})), Rat(0), Rat(1)));
  CHECK(poly_nonneg_on(from_ints({0}), Rat(0), Rat(1)));  // the zero polynomial
  CHECK(poly_nonneg_on(from_ints({2}), Rat(0), Rat(0)));  // degenerate interval
}

TEST_CASE("rational_roots_in finds exactly the rational roots") {
  // (2t-1)(t-2)(t+3) has roots 1/2, 2, -3.
  Poly p = poly_mul(poly_mul(from_ints({-1, 2}), from_ints({-2, 1})), from_ints({3, 1}));
  CHECK(rational_roots_in(p, Rat(0), Rat(1)) == std::vector<Rat>{Rat(1, 2)});
  CHECK(rational_roots_in(p, Rat(-5), Rat(5)) ==
        std::vector<Rat>{Rat(-3), Rat(1, 2), Rat(2)});
  CHECK(rational_roots_in(p, Rat(3), Rat(4)).empty());
  // t^2 - 2 has no rational roots.
  CHECK(rational_roots_in(from_ints({-2, 0, 1}), Rat(-2), Rat(2)).empty());
  // Roots at zero come from the stripped power of t.
  CHECK(rational_roots_in(from_ints({0, 0, 1}), Rat(-1), Rat(1)) ==
        std::vector<Rat>{Rat(0)});
  // Endpoints are included (closed interval).
  CHECK(rational_roots_in(from_ints({-1, 1}), Rat(0), Rat(1)) == std::vector<Rat>{Rat(1)});
}

TEST_CASE("piecewise construction and evaluation") {
  // |2t - 1| on [0,1].
  PiecewisePoly vee = pw_make({Rat(0), Rat(1, 2), Rat(1)},
                              {poly_make({Rat(1), Rat(-2)}), poly_make({Rat(-1), Rat(2)})});
  CHECK(pw_eval(vee, Rat(0)) == 1);
  CHECK(pw_eval(vee, Rat(1, 2)) == 0);
  CHECK(pw_eval(vee, Rat(3, 4)) == Rat(1, 2));
  CHECK(pw_eval(vee, Rat(1)) == 1);
  CHECK(pw_is_continuous(vee));
  CHECK(pw_integral(vee) == Rat(1, 2));

  PiecewisePoly jump = pw_make({Rat(0), Rat(1, 2), Rat(1)},
                               {poly_constant(Rat(0)), poly_constant(Rat(1))});
  CHECK_FALSE(pw_is_continuous(jump));

  CHECK(code_of([] { pw_make({Rat(0)}, {}); }) == Errc::ShapeMismatch);
  CHECK(code_of([] { pw_make({Rat(1), Rat(0)}, {Poly{}}); }) == Errc::ShapeMismatch);
}

TEST_CASE("pw_refine keeps the function and adds breakpoints") {
  PiecewisePoly f = pw_poly(Rat(0), Rat(1), from_ints({0, 1}));
  PiecewisePoly fine = pw_refine(f, {Rat(1, 3), Rat(2, 3)});
  CHECK(fine.breaks == std::vector<Rat>{Rat(0), Rat(1, 3), Rat(2, 3), Rat(1)});
  for (int k = 0; k <= 6; ++k) {
    Rat t = rat_of(k, 6);
    CHECK(pw_eval(fine, t) == pw_eval(f, t));
  }
  CHECK(code_of([&] { pw_refine(f, {Rat(2)}); }) == Errc::ShapeMismatch);
}

TEST_CASE("piecewise arithmetic merges breakpoints") {
  PiecewisePoly f = pw_make({Rat(0), Rat(1, 2), Rat(1)},
                            {poly_constant(Rat(1)), poly_constant(Rat(2))});
  PiecewisePoly g = pw_make({Rat(0), Rat(1, 3), Rat(1)},
                            {poly_constant(Rat(10)), poly_constant(Rat(20))});
  PiecewisePoly sum = pw_add(f, g);
  CHECK(sum.breaks == std::vector<Rat>{Rat(0), Rat(1, 3), Rat(1, 2), Rat(1)});
  CHECK(pw_eval(sum, Rat(1, 4)) == 11);
  CHECK(pw_eval(sum, Rat(2, 5)) == 21);
  CHECK(pw_eval(sum, Rat(3, 4)) == 22);
  PiecewisePoly prod = pw_mul(f, g);
  CHECK(pw_eval(prod, Rat(1, 4)) == 10);
  CHECK(pw_eval(prod, Rat(3, 4)) == 40);
  CHECK(pw_eval(pw_scale(f, Rat(3)), Rat(3, 4)) == 6);
}

TEST_CASE("pw_integral is additive over pieces") {
  PiecewisePoly f = pw_make({Rat(0), Rat(1, 2), Rat(1)},
                            {from_ints({0, 1}), poly_constant(Rat(1, 2))});
  // Integral of t on [0,1/2] is 1/8; of 1/2 on [1/2,1] is 1/4.
  CHECK(pw_integral(f) == Rat(3, 8));
}

TEST_CASE("pw_compose with a quantile reparametrization") {
  // f(s) = s on [0,1], q(t) = t^2: composition is t^2.
  PiecewisePoly f = pw_poly(Rat(0), Rat(1), from_ints({0, 1}));
  PiecewisePoly q = pw_poly(Rat(0), Rat(1), from_ints({0, 0, 1}));
  PiecewisePoly comp = pw_compose(f, q);
  CHECK(pw_eval(comp, Rat(1, 2)) == Rat(1, 4));
  CHECK(pw_integral(comp) == Rat(1, 3));

  // f with an interior break at 1/4: the preimage under t^2 is 1/2.
  PiecewisePoly broken = pw_make({Rat(0), Rat(1, 4), Rat(1)},
                                 {from_ints({0, 2}), poly_make({Rat(1, 4), Rat(1)})});
  PiecewisePoly comp2 = pw_compose(broken, q);
  CHECK(comp2.breaks == std::vector<Rat>{Rat(0), Rat(1, 2), Rat(1)});
  CHECK(pw_eval(comp2, Rat(1, 4)) == Rat(1, 8));   // 2 * (1/16)
  CHECK(pw_eval(comp2, Rat(3, 4)) == Rat(9, 16) + Rat(1, 4));
}

TEST_CASE("pw_compose rejects irrational preimages and non-monotone inner maps") {
  // Break at 1/2 pulls back to sqrt(1/2) under t^2.
  PiecewisePoly f = pw_make({Rat(0), Rat(1, 2), Rat(1)},
                            {from_ints({0, 1}), from_ints({0, 1})});
  PiecewisePoly q = pw_poly(Rat(0), Rat(1), from_ints({0, 0, 1}));
  CHECK(code_of([&] { pw_compose(f, q); }) == Errc::IrrationalBreakpoint);

  // Non-monotone inner map: q(t) = 4t(1-t) maps [0,1] onto [0,1] but folds.
  PiecewisePoly fold = pw_poly(Rat(0), Rat(1), from_ints({0, 4, -4}));
  PiecewisePoly ident = pw_poly(Rat(0), Rat(1), from_ints({0, 1}));
  CHECK_THROWS_AS(pw_compose(ident, fold), Error);

  // Range mismatch: q(t) = t/2 does not reach f's domain end.
  PiecewisePoly half = pw_poly(Rat(0), Rat(1), poly_make({Rat(0), Rat(1, 2)}));
  CHECK_THROWS_AS(pw_compose(ident, half), Error);
}

TEST_CASE("budget on rational root candidate enumeration") {
  // Leading/trailing coefficients with astronomically many divisors are
  // rejected rather than enumerated.
  Poly p = poly_make({Rat(Int(1) << 62) * Rat(Int(1) << 10), Rat(1)});
  CHECK(code_of([&] { rational_roots_in(p, Rat(-1), Rat(1)); }) == Errc::BudgetExceeded);
}
