#pragma once

#include <string>
#include <vector>

#include "bratteli/rational.hpp"

namespace bratteli {

// Finite-dimensional algebra M_{k_1} + ... + M_{k_n}, recorded by its summand
// sizes. Summand order is significant everywhere: maps and traces are indexed
// by position, and no canonical sorting is applied.
struct FdAlgebra {
  std::vector<Int> summands;

  int width() const { return static_cast<int>(summands.size()); }
  // Sum of matrix sizes k_i (used for search bounds).
  Int total_size() const;
  // Vector-space dimension, sum of k_i^2.
  Int dimension() const;

  bool operator==(const FdAlgebra&) const = default;
};

FdAlgebra make_algebra(std::vector<Int> summands);

// Convex weights (beta_1, ..., beta_n), one per summand, summing to 1.
// The associated tracial state takes tr_{k_i} normalized on each summand.
struct RationalTrace {
  std::vector<Rat> weights;

  int width() const { return static_cast<int>(weights.size()); }
  bool operator==(const RationalTrace&) const = default;
};

RationalTrace make_trace(std::vector<Rat> weights);
bool is_interior(const RationalTrace& trace);

// Uniform trace (1/n, ..., 1/n).
RationalTrace barycenter_trace(int width);

// Embedding between finite-dimensional algebras recorded by its multiplicity
// matrix: mult[j][i] = how many copies of source summand i land in target
// summand j (rows are indexed by target summands).
struct BratteliMap {
  FdAlgebra source;
  FdAlgebra target;
  bool unital = true;
  std::vector<std::vector<Int>> mult;

  bool operator==(const BratteliMap&) const = default;
};

struct ValidationReport {
  bool ok = true;
  std::string detail;  // names the violated constraint when !ok
};

// Structural check: shape, injectivity (no all-zero column), and the row
// equations sum_i mult[j][i]*k_i = l_j (unital) or <= l_j (non-unital).
ValidationReport validate_embedding(const BratteliMap& map);

// Like validate_embedding but throws (ShapeMismatch / InvalidMap /
// NonUnitalMap) instead of reporting.
BratteliMap make_embedding(FdAlgebra source, FdAlgebra target,
                           std::vector<std::vector<Int>> mult, bool unital = true);

// Ranks of a projection, one entry per summand, 0 <= r_i <= k_i.
using RankVector = std::vector<Int>;

// Pulls a trace on the target back to the source along a unital embedding:
// sigma_i = h_i * sum_j (beta_j / l_j) * mult[j][i]. Throws NonUnitalMap for
// non-unital maps and WidthMismatch if the trace does not fit the target.
RationalTrace pushforward_trace(const BratteliMap& map, const RationalTrace& target_trace);

// Exact test of pushforward_trace(map, target) == source.
bool is_trace_preserving(const BratteliMap& map, const RationalTrace& source_trace,
                         const RationalTrace& target_trace);

// g after f: f must end where g starts; multiplicities multiply as M_g * M_f.
BratteliMap compose(const BratteliMap& f, const BratteliMap& g);

// Value of the trace on a projection with the given summand ranks:
// sum_i weights[i] * ranks[i] / k_i.
Rat trace_of_projection(const FdAlgebra& algebra, const RationalTrace& trace,
                        const RankVector& ranks);

// Image ranks of a projection under an embedding: s_j = sum_i mult[j][i]*r_i.
RankVector project_ranks(const BratteliMap& map, const RankVector& ranks);

// Two embeddings are unitarily equivalent iff they share source, target, and
// multiplicity matrix.
bool unitarily_equivalent(const BratteliMap& f, const BratteliMap& g);

}  // namespace bratteli
