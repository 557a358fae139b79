#pragma once

#include <optional>
#include <vector>

#include "bratteli/rational.hpp"

namespace bratteli {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;  // row-major, rectangular

RatMat rat_identity(int n);
RatMat rat_transpose(const RatMat& a);
RatMat rat_mul(const RatMat& a, const RatMat& b);
RatVec rat_mul_vec(const RatMat& a, const RatVec& x);

// Rank over the rationals (exact Gaussian elimination).
int rat_rank(RatMat a);

struct LinearSolution {
  RatVec particular;             // one solution of a x = b (free variables 0)
  std::vector<RatVec> nullspace; // basis of {x : a x = 0}
};

// Exact solve; nullopt when the system is inconsistent.
std::optional<LinearSolution> rat_solve(const RatMat& a, const RatVec& b);

// Basis of the nullspace of a.
std::vector<RatVec> rat_nullspace(const RatMat& a);

// Vertices (basic feasible solutions) of {x >= 0, a x = b}, deduplicated and
// sorted lexicographically. The polytope must be bounded for this to be the
// complete vertex set, which holds for all callers here (subsets of products
// of simplices).
std::vector<RatVec> standard_form_vertices(const RatMat& a, const RatVec& b);

// Feasibility of {x >= 0, a x = b} via exact phase-one simplex (Bland's rule).
bool standard_form_feasible(const RatMat& a, const RatVec& b);

// Is p in the convex hull of the given points?
bool in_convex_hull(const RatVec& p, const std::vector<RatVec>& points);

// The extreme points among `points` (each kept iff outside the hull of the
// others), deduplicated and sorted lexicographically.
std::vector<RatVec> extreme_points(std::vector<RatVec> points);

// Given target = sum lambda_i points[i] with lambda a convex combination,
// returns such a lambda supported on at most dim+1 points (constructive
// Caratheodory, deterministic); nullopt if target is not in the hull.
std::optional<RatVec> convex_combination(const RatVec& target,
                                         const std::vector<RatVec>& points,
                                         size_t max_support);

}  // namespace bratteli
