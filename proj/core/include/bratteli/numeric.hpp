#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "bratteli/chain.hpp"

namespace bratteli {

using Complex = std::complex<double>;

// Dense row-major complex matrix. Plain storage only; the numeric kernels
// behind it live in the implementation file.
struct CMat {
  Int rows = 0;
  Int cols = 0;
  std::vector<Complex> data;

  Complex& at(Int r, Int c) { return data[static_cast<size_t>(r * cols + c)]; }
  const Complex& at(Int r, Int c) const { return data[static_cast<size_t>(r * cols + c)]; }

  static CMat zero(Int r, Int c);
  static CMat identity(Int n);
};

CMat cmat_mul(const CMat& a, const CMat& b);
CMat cmat_sub(const CMat& a, const CMat& b);
CMat cmat_adjoint(const CMat& a);
// u x u^* for unitary u.
CMat cmat_conjugate(const CMat& u, const CMat& x);
// Largest singular value (deterministic decomposition, tolerance ~1e-12).
double operator_norm(const CMat& a);
// tau(x^* x)^{1/2} with tau the normalized trace of the ambient matrix.
double trace_norm(const CMat& a);
Complex normalized_trace(const CMat& a);
// Entrywise sup of |a - b| (defect checks).
double max_abs_diff(const CMat& a, const CMat& b);

// Matrix unit e_{row,col} of summand `block`, embedded block-diagonally.
struct GenIndex {
  Int block = 0;
  Int row = 0;
  Int col = 0;

  bool operator==(const GenIndex&) const = default;
};

// Block-diagonal matrix model of an FdAlgebra. Generators are the standard
// matrix units of each summand, enumerated block-major then row-major; the
// dense form of any one of them comes from generator_matrix (entries exactly
// 0 or 1).
struct ConcreteAlgebra {
  std::vector<Int> blocks;
  Int ambient = 0;  // sum of blocks
  std::vector<GenIndex> generators;
};

ConcreteAlgebra realize_algebra(const FdAlgebra& a);
CMat generator_matrix(const ConcreteAlgebra& a, const GenIndex& g);
// Exact check of e_{st} e_{uv} = delta_{tu} e_{sv} and e_{st}^* = e_{ts} on
// all generator pairs (integer arithmetic, no tolerance).
bool generators_satisfy_relations(const ConcreteAlgebra& a);

// One stretch of a target block's diagonal: a copy of a source block, or a
// run of padding zeros (src == -1) for the non-unital part.
struct Slot {
  Int src = -1;
  Int size = 0;

  bool operator==(const Slot&) const = default;
};

// A *-homomorphism between block-diagonal models, stored as the image of
// every source generator plus the diagonal arrangement that produced those
// images. Canonical realizations list source blocks in ascending order and
// pad last; concrete composition splices arrangements and may interleave.
struct ConcreteEmbedding {
  ConcreteAlgebra source;
  ConcreteAlgebra target;
  BratteliMap provenance;
  std::vector<std::vector<Slot>> arrangement;  // one list per target block
  std::vector<CMat> generator_images;          // one per source generator
};

// Canonical block-diagonal model of a multiplicity matrix: inside target
// block j, source block i repeats mult[j][i] times in ascending i, then
// zero padding fills any non-unital remainder. Exact 0/1 entries.
ConcreteEmbedding realize_embedding(const BratteliMap& map);

// g after f, spliced exactly (no floating-point products).
ConcreteEmbedding compose_concrete(const ConcreteEmbedding& f, const ConcreteEmbedding& g);

enum class MatrixNorm { Operator, Trace };

// max over source generators of the chosen norm of image differences.
double generator_distance(const ConcreteEmbedding& f, const ConcreteEmbedding& g,
                          MatrixNorm norm);

// Exact certificate that generator_distance(f, g, Operator) >= 1: an ambient
// diagonal position where the images of some source unit e_{11} differ as
// 0/1 diagonal projections. Always present when the provenance multiplicity
// matrices differ.
std::optional<Int> rank_witness_coordinate(const ConcreteEmbedding& f,
                                           const ConcreteEmbedding& g);

// Block-permutation u with Ad(u) . f = g exactly, when the provenance
// matrices are equal (absent exactly when they differ). Requires matching
// source/target shapes (ShapeMismatch).
std::optional<CMat> find_conjugating_unitary(const ConcreteEmbedding& f,
                                             const ConcreteEmbedding& g);

struct HomogeneityResult {
  CMat unitary;
  double distance = 0.0;  // post-conjugation generator distance
  Int stage = 0;          // stage at which the two maps agree up to Ad
};

// Push two embeddings into stage `stage` along the chain to stage `push_to`,
// realize both composites, and conjugate one onto the other. Errors:
// NotYetEquivalent when the composites still differ at push_to; the message
// reports the first later stage that equalizes them, if any.
HomogeneityResult homogeneity_check(const InductiveChain& chain, const BratteliMap& f,
                                    const BratteliMap& g, Int stage, Int push_to);

// Haar-distributed unitary: orthonormalization of a seeded complex Gaussian
// matrix with phase correction. Deterministic per seed.
CMat haar_unitary(Int n, std::uint64_t seed);

// 1-Lipschitz functionals on the embedding space M_k -> M_n used by the
// oscillation demo.
enum class ColoringKind { Constant, DistanceToReference, TracePolynomial };

struct RamseyReport {
  double oscillation = 0.0;
  std::vector<Int> histogram;
  std::uint64_t seed = 0;
  Int samples = 0;
  double min_value = 0.0;
  double max_value = 0.0;
};

// Samples Ad(u) . canonical over Haar u and reports the empirical max - min
// of the coloring with a fixed-width histogram. Exploratory output only.
// Errors: DivisibilityViolation (k must divide n), NonPositive.
RamseyReport ramsey_oscillation_demo(Int k, Int n, ColoringKind coloring, Int samples,
                                     std::uint64_t seed);

}  // namespace bratteli
