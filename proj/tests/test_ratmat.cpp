#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "bratteli/ratmat.hpp"
#include "test_util.hpp"

using namespace bratteli;

namespace {

// Independent check that a x == b, entry by entry.
bool solves(const RatMat& a, const RatVec& x, const RatVec& b) {
  for (size_t i = 0; i < a.size(); ++i) {
    Rat acc(0);
    for (size_t j = 0; j < a[i].size(); ++j) acc += a[i][j] * x[j];
    if (acc != b[i]) return false;
  }
  return true;
}

RatMat random_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  RatMat a(rows, RatVec(cols));
  for (auto& row : a)
    for (auto& entry : row) entry = rat_of(num(rng), den(rng));
  return a;
}

}  // namespace

TEST_CASE("rat_mul and rat_transpose against hand values") {
  RatMat a = {{Rat(1), Rat(2)}, {Rat(3), Rat(4)}};
  RatMat b = {{Rat(0), Rat(1)}, {Rat(1), Rat(0)}};
  CHECK(rat_mul(a, b) == RatMat{{Rat(2), Rat(1)}, {Rat(4), Rat(3)}});
  CHECK(rat_transpose(a) == RatMat{{Rat(1), Rat(3)}, {Rat(2), Rat(4)}});
  CHECK(rat_mul_vec(a, {Rat(1), Rat(1, 2)}) == RatVec{Rat(2), Rat(5)});
  CHECK(rat_mul(rat_identity(2), a) == a);
}

TEST_CASE("rat_rank on pinned matrices") {
  CHECK(rat_rank({{Rat(1), Rat(2)}, {Rat(2), Rat(4)}}) == 1);
  CHECK(rat_rank({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}) == 2);
  CHECK(rat_rank({{Rat(0), Rat(0)}, {Rat(0), Rat(0)}}) == 0);
  CHECK(rat_rank({{Rat(1, 2), Rat(1, 3), Rat(1)}, {Rat(1), Rat(2, 3), Rat(2)}}) == 1);
  CHECK(rat_rank(rat_identity(5)) == 5);
}

TEST_CASE("rat_rank is transpose invariant on random matrices") {
  std::mt19937_64 rng(20240517);
  for (int trial = 0; trial < 50; ++trial) {
    RatMat a = random_matrix(rng, 1 + trial % 4, 1 + (trial / 4) % 4);
    CHECK(rat_rank(a) == rat_rank(rat_transpose(a)));
  }
}

TEST_CASE("rat_solve returns exact solutions and complete nullspaces") {
  RatMat a = {{Rat(1), Rat(1)}, {Rat(1), Rat(-1)}};
  RatVec b = {Rat(3), Rat(1)};
  auto sol = rat_solve(a, b);
  REQUIRE(sol.has_value());
  CHECK(sol->particular == RatVec{Rat(2), Rat(1)});
  CHECK(sol->nullspace.empty());

  // Inconsistent system.
  CHECK_FALSE(rat_solve({{Rat(1), Rat(1)}, {Rat(2), Rat(2)}}, {Rat(1), Rat(3)}).has_value());

  // Underdetermined: x + y + z = 1.
  auto under = rat_solve({{Rat(1), Rat(1), Rat(1)}}, {Rat(1)});
  REQUIRE(under.has_value());
  CHECK(solves({{Rat(1), Rat(1), Rat(1)}}, under->particular, {Rat(1)}));
  CHECK(under->nullspace.size() == 2);
  for (const RatVec& v : under->nullspace)
    CHECK(solves({{Rat(1), Rat(1), Rat(1)}}, v, {Rat(0)}));
}

TEST_CASE("rat_solve satisfies a x = b on random consistent systems") {
  std::mt19937_64 rng(987654);
  for (int trial = 0; trial < 60; ++trial) {
    int rows = 1 + trial % 3, cols = 1 + (trial / 3) % 4;
    RatMat a = random_matrix(rng, rows, cols);
    // Make b consistent by construction: b = a * x0.
    RatMat x0 = random_matrix(rng, cols, 1);
    RatVec x0v(cols);
    for (int j = 0; j < cols; ++j) x0v[j] = x0[j][0];
    RatVec b(rows, Rat(0));
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) b[i] += a[i][j] * x0v[j];
    auto sol = rat_solve(a, b);
    REQUIRE(sol.has_value());
    CHECK(solves(a, sol->particular, b));
    CHECK(static_cast<int>(sol->nullspace.size()) + rat_rank(a) == cols);
    for (const RatVec& v : sol->nullspace) CHECK(solves(a, v, RatVec(rows, Rat(0))));
  }
}

TEST_CASE("standard_form_vertices of the simplex are the unit vectors") {
  RatMat a = {{Rat(1), Rat(1), Rat(1)}};
  auto verts = standard_form_vertices(a, {Rat(1)});
  std::vector<RatVec> expected = {{Rat(0), Rat(0), Rat(1)},
                                  {Rat(0), Rat(1), Rat(0)},
                                  {Rat(1), Rat(0), Rat(0)}};
  CHECK(verts == expected);
}

TEST_CASE("standard_form_vertices of a segment") {
  // x1 + x2 = 1, x2 + x3 = 1: solutions (1-t, t, 1-t).
  RatMat a = {{Rat(1), Rat(1), Rat(0)}, {Rat(0), Rat(1), Rat(1)}};
  auto verts = standard_form_vertices(a, {Rat(1), Rat(1)});
  std::vector<RatVec> expected = {{Rat(0), Rat(1), Rat(0)}, {Rat(1), Rat(0), Rat(1)}};
  CHECK(verts == expected);
}

TEST_CASE("standard_form_feasible detects empty systems") {
  CHECK(standard_form_feasible({{Rat(1), Rat(1)}}, {Rat(1)}));
  CHECK_FALSE(standard_form_feasible({{Rat(1), Rat(1)}}, {Rat(-1)}));
  CHECK_FALSE(
      standard_form_feasible({{Rat(1), Rat(0)}, {Rat(1), Rat(0)}}, {Rat(1), Rat(2)}));
}

TEST_CASE("in_convex_hull on segments and triangles") {
  std::vector<RatVec> segment = {{Rat(0), Rat(1)}, {Rat(1), Rat(0)}};
  CHECK(in_convex_hull({Rat(1, 2), Rat(1, 2)}, segment));
  CHECK(in_convex_hull({Rat(3, 4), Rat(1, 4)}, segment));
  CHECK_FALSE(in_convex_hull({Rat(1, 2), Rat(1, 4)}, segment));
  CHECK_FALSE(in_convex_hull({Rat(2), Rat(-1)}, segment));
  CHECK(in_convex_hull({Rat(0), Rat(1)}, segment));
}

TEST_CASE("extreme_points drops interior points and duplicates") {
  std::vector<RatVec> points = {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(0), Rat(1)},
                                {Rat(1, 4), Rat(1, 4)}, {Rat(1), Rat(0)}};
  auto ext = extreme_points(points);
  std::vector<RatVec> expected = {{Rat(0), Rat(0)}, {Rat(0), Rat(1)}, {Rat(1), Rat(0)}};
  CHECK(ext == expected);
}

TEST_CASE("convex_combination returns exact certified weights") {
  std::vector<RatVec> points = {{Rat(0), Rat(1)}, {Rat(1), Rat(0)}, {Rat(1, 2), Rat(1, 2)}};
  RatVec target = {Rat(1, 3), Rat(2, 3)};
  auto lambda = convex_combination(target, points, points.size());
  REQUIRE(lambda.has_value());
  Rat sum(0);
  RatVec mix(2, Rat(0));
  for (size_t i = 0; i < points.size(); ++i) {
    CHECK((*lambda)[i] >= 0);
    sum += (*lambda)[i];
    for (size_t d = 0; d < 2; ++d) mix[d] += (*lambda)[i] * points[i][d];
  }
  CHECK(sum == 1);
  CHECK(mix == target);

  CHECK_FALSE(convex_combination({Rat(2), Rat(-1)}, points, points.size()).has_value());
}

TEST_CASE("convex_combination respects the support cap") {
  std::vector<RatVec> points = {{Rat(0)}, {Rat(1)}, {Rat(1, 2)}};
  auto lambda = convex_combination({Rat(1, 4)}, points, 2);
  REQUIRE(lambda.has_value());
  int support = 0;
  for (const Rat& l : *lambda) support += l != 0;
  CHECK(support <= 2);
}
