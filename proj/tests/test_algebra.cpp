#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bratteli/algebra.hpp"
#include "test_util.hpp"

using namespace bratteli;

TEST_CASE("make_algebra validates summand sizes") {
  FdAlgebra a = make_algebra({2, 3});
  CHECK(a.width() == 2);
  CHECK(a.total_size() == 5);
  CHECK(a.dimension() == 13);
  CHECK(code_of([] { make_algebra({}); }) == Errc::EmptySummands);
  CHECK(code_of([] { make_algebra({2, 0}); }) == Errc::NonPositiveSummand);
  CHECK(code_of([] { make_algebra({-1}); }) == Errc::NonPositiveSummand);
}

TEST_CASE("make_trace validates convex weights") {
  RationalTrace t = make_trace({Rat(1, 3), Rat(2, 3)});
  CHECK(t.width() == 2);
  CHECK(is_interior(t));
  CHECK_FALSE(is_interior(make_trace({Rat(0), Rat(1)})));
  CHECK(code_of([] { make_trace({}); }) == Errc::EmptySummands);
  CHECK(code_of([] { make_trace({Rat(1, 2)}); }) == Errc::NotInterior);
  CHECK(code_of([] { make_trace({Rat(3, 2), Rat(-1, 2)}); }) == Errc::NonPositive);
  CHECK(barycenter_trace(4).weights == std::vector<Rat>(4, Rat(1, 4)));
}

TEST_CASE("validate_embedding registers the row equations") {
  FdAlgebra a = make_algebra({1, 1});
  FdAlgebra b = make_algebra({2, 2});
  CHECK(validate_embedding(BratteliMap{a, b, true, {{1, 1}, {1, 1}}}).ok);
  // Row 0 fills 1 of 2: not unital.
  CHECK_FALSE(validate_embedding(BratteliMap{a, b, true, {{1, 0}, {1, 1}}}).ok);
  // Same data declared non-unital is fine.
  CHECK(validate_embedding(BratteliMap{a, b, false, {{1, 0}, {0, 1}}}).ok);
  // Overfull row fails even when non-unital.
  CHECK_FALSE(validate_embedding(BratteliMap{a, b, false, {{3, 0}, {0, 1}}}).ok);
}

TEST_CASE("validate_embedding rejects annihilated summands and bad shapes") {
  FdAlgebra a = make_algebra({1, 1});
  FdAlgebra b = make_algebra({2, 2});
  ValidationReport dead = validate_embedding(BratteliMap{a, b, true, {{2, 0}, {2, 0}}});
  CHECK_FALSE(dead.ok);
  CHECK(dead.detail.find("annihilated") != std::string::npos);
  CHECK_FALSE(validate_embedding(BratteliMap{a, b, true, {{1, 1}}}).ok);
  CHECK_FALSE(validate_embedding(BratteliMap{a, b, true, {{1}, {1, 1}}}).ok);
  CHECK_FALSE(validate_embedding(BratteliMap{a, b, true, {{-1, 3}, {1, 1}}}).ok);
}

TEST_CASE("make_embedding throws what validate_embedding reports") {
  FdAlgebra a = make_algebra({1, 1});
  CHECK(code_of([&] { make_embedding(a, make_algebra({2, 2}), {{1, 0}, {1, 1}}); }) ==
        Errc::NonUnitalMap);
  CHECK(code_of([&] { make_embedding(a, make_algebra({2}), {{1, 1}, {1, 1}}); }) ==
        Errc::ShapeMismatch);
  CHECK(code_of([&] { make_embedding(a, make_algebra({2, 2}), {{2, 0}, {2, 0}}); }) ==
        Errc::InvalidMap);
}

TEST_CASE("pushforward_trace computes the exact source weights") {
  FdAlgebra a = make_algebra({1, 1});
  BratteliMap psi = make_embedding(a, make_algebra({3, 3}), {{1, 2}, {2, 1}});
  RationalTrace gamma = make_trace({Rat(1, 2), Rat(1, 2)});
  RationalTrace alpha = pushforward_trace(psi, gamma);
  CHECK(alpha.weights == std::vector<Rat>{Rat(1, 2), Rat(1, 2)});

  RationalTrace skew = pushforward_trace(psi, make_trace({Rat(1, 4), Rat(3, 4)}));
  // sigma_1 = 1*(1/4)/3*1 + 1*(3/4)/3*2 = 1/12 + 6/12 = 7/12.
  CHECK(skew.weights == std::vector<Rat>{Rat(7, 12), Rat(5, 12)});

  CHECK(is_trace_preserving(psi, alpha, gamma));
  CHECK_FALSE(is_trace_preserving(psi, make_trace({Rat(1, 3), Rat(2, 3)}), gamma));
}

TEST_CASE("pushforward_trace rejects non-unital maps and wrong widths") {
  FdAlgebra a = make_algebra({1, 1});
  BratteliMap corner = BratteliMap{a, make_algebra({3, 3}), false, {{1, 1}, {1, 1}}};
  CHECK(code_of([&] { pushforward_trace(corner, make_trace({Rat(1, 2), Rat(1, 2)})); }) ==
        Errc::NonUnitalMap);
  BratteliMap psi = make_embedding(a, make_algebra({3, 3}), {{1, 2}, {2, 1}});
  CHECK(code_of([&] { pushforward_trace(psi, make_trace({Rat(1)})); }) ==
        Errc::WidthMismatch);
}

TEST_CASE("compose multiplies multiplicity matrices in path order") {
  FdAlgebra m2 = make_algebra({2});
  BratteliMap f = make_embedding(m2, make_algebra({4}), {{2}});
  BratteliMap g = make_embedding(make_algebra({4}), make_algebra({8}), {{2}});
  BratteliMap gf = compose(f, g);
  CHECK(gf.source == m2);
  CHECK(gf.target == make_algebra({8}));
  CHECK(gf.mult == std::vector<std::vector<Int>>{{4}});
  CHECK(gf.unital);

  FdAlgebra c2 = make_algebra({1, 1});
  BratteliMap swap = make_embedding(c2, c2, {{0, 1}, {1, 0}});
  BratteliMap twice = compose(swap, swap);
  CHECK(twice.mult == std::vector<std::vector<Int>>{{1, 0}, {0, 1}});

  CHECK(code_of([&] { compose(g, f); }) == Errc::ShapeMismatch);
}

TEST_CASE("composing through a non-unital leg clears the unital flag") {
  FdAlgebra m1 = make_algebra({1});
  FdAlgebra m2 = make_algebra({2});
  BratteliMap corner{m1, m2, false, {{1}}};
  BratteliMap full = make_embedding(m2, make_algebra({4}), {{2}});
  CHECK_FALSE(compose(corner, full).unital);
}

TEST_CASE("trace_of_projection and project_ranks") {
  FdAlgebra a = make_algebra({2, 3});
  RationalTrace t = make_trace({Rat(1, 2), Rat(1, 2)});
  CHECK(trace_of_projection(a, t, {1, 2}) == Rat(1, 2) * Rat(1, 2) + Rat(1, 2) * Rat(2, 3));
  CHECK(trace_of_projection(a, t, {0, 0}) == 0);
  CHECK(trace_of_projection(a, t, {2, 3}) == 1);
  CHECK(code_of([&] { trace_of_projection(a, t, {3, 0}); }) == Errc::RankOutOfBounds);

  BratteliMap phi = make_embedding(make_algebra({1, 1}), make_algebra({2, 2}),
                                   {{1, 1}, {1, 1}});
  CHECK(project_ranks(phi, {1, 0}) == RankVector{1, 1});
  CHECK(project_ranks(phi, {0, 1}) == RankVector{1, 1});
}

TEST_CASE("unitary equivalence of embeddings is equality of multiplicity data") {
  FdAlgebra a = make_algebra({1, 1});
  FdAlgebra b = make_algebra({3});
  BratteliMap f = make_embedding(a, b, {{1, 2}});
  BratteliMap g = make_embedding(a, b, {{2, 1}});
  CHECK(unitarily_equivalent(f, f));
  CHECK_FALSE(unitarily_equivalent(f, g));
}
