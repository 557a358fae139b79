#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bratteli/algebra.hpp"
#include "bratteli/amalgam.hpp"
#include "bratteli/supernatural.hpp"

namespace bratteli {

enum class ChainKind { Uhf, FiniteFactors, WidthTraced, Commutative, CompactOperators };
enum class MetricTag { Generator, Trace };

const char* chain_kind_name(ChainKind kind);
const char* metric_tag_name(MetricTag tag);

// Which inductive family a chain approximates, with the data pinning the
// family down: the supernatural program for UHF limits, the seed width and
// distinguished trace for the traced width classes.
struct ClassDescriptor {
  ChainKind kind = ChainKind::Uhf;
  SupernaturalNumber program;  // Uhf only
  Int width = 0;               // WidthTraced
  RationalTrace trace;         // WidthTraced
  bool unital = true;          // false only for CompactOperators
  MetricTag metric = MetricTag::Generator;

  bool operator==(const ClassDescriptor&) const = default;
};

// A finite inductive system: stages, one connecting map per adjacent pair,
// and (for traced classes) one trace per stage, coherent under pushforward:
// pushforward_trace(maps[m], traces[m+1]) == traces[m].
struct InductiveChain {
  ClassDescriptor descriptor;
  std::vector<FdAlgebra> stages;
  std::vector<BratteliMap> maps;
  std::vector<RationalTrace> traces;  // empty, or one per stage
  std::vector<std::string> log;       // one line per construction step
};

// Shape, per-map validity (unitality per descriptor), and trace coherence.
ValidationReport validate_chain(const InductiveChain& chain);

// Composite of maps[from .. to): rows index stage `to`, columns stage
// `from`; from == to yields the identity of that stage.
BratteliMap composite(const InductiveChain& chain, Int from, Int to);

// Stage sizes k_1 | k_2 | ... generated by a supernatural program:
// k_m is the product of p^min(e_p, m) over program primes p <= nth_prime(m).
// Connecting maps are the unital multiplicity-(k_{m+1}/k_m) embeddings and
// every stage carries its unique trace.
InductiveChain build_uhf_chain(const SupernaturalNumber& program, Int length);

// One construction step of a width-class chain.
struct StepSpec {
  enum class Type { Shrink, Divisibility, Positivity };
  Type type = Type::Shrink;
  Int prime = 0;  // Divisibility: tensor with M_prime
  Rat epsilon;    // Shrink: l1 radius around the current trace, in (0, 2)

  bool operator==(const StepSpec&) const = default;
};

// Rotating schedule shrink(2^-m) / divisibility(next prime) / positivity,
// truncated to `steps` entries; primes advance 2, 3, 5, ... per rotation.
std::vector<StepSpec> standard_schedule(Int steps);

// Append one stage realizing the given vertex traces on the current last
// stage: new summand i gets the least size N_i making all multiplicities
// m_ij = vertices[i][j] * N_i / l_j integral, and the new trace is the
// canonical convex representation of the current trace in the vertices.
// Errors: VertexNotInterior (a vertex touches the simplex boundary),
// HullViolation (current trace outside the vertex hull).
InductiveChain extend_width_chain(InductiveChain chain,
                                  const std::vector<RationalTrace>& vertices,
                                  const std::string& log_line = "");

// Width-n chain over the seed (C^n, tau) following the schedule (stage
// count = schedule length + 1). Requires n >= 2 (NotInClass) and tau
// interior of width n (NotInterior).
InductiveChain build_width_class_chain(Int n, const RationalTrace& tau,
                                       const std::vector<StepSpec>& schedule);

// Same, with standard_schedule(length - 1).
InductiveChain build_width_class_chain(Int n, const RationalTrace& tau, Int length);

// Binary-splitting chain of commutative algebras C^(2^m) with uniform traces.
InductiveChain build_commutative_chain(Int length);

// Non-unital corner chain M_1 -> M_2 -> ... -> M_length (no traces).
InductiveChain build_compacts_chain(Int length);

// Full-factor chain M_{1!} -> M_{2!} -> ... -> M_{length!}.
InductiveChain build_factors_chain(Int length);

// Least unital trace-preserving embedding of the seed (C^n, tau) into
// (a, alpha), by exhaustive search over multiplicity matrices with rows in
// ascending lexicographic order (last row varies fastest). Absent exactly
// when (a, alpha) does not embed the seed, i.e. is not a class member.
std::optional<BratteliMap> embed_minimal(Int n, const RationalTrace& tau,
                                         const FdAlgebra& a, const RationalTrace& alpha);

// Joint embedding of two class members into a common one.
struct JepResult {
  FdAlgebra target;
  RationalTrace target_trace;  // width 0 for the untraced classes
  BratteliMap from_a;
  BratteliMap from_b;
};

// Class-specific joint embedding: UHF and factor classes join width-1
// members into M_lcm, the commutative class joins into C^max, compacts into
// the larger corner, and the traced width class amalgamates the two minimal
// seed embeddings. NotInClass when either member fails the membership test.
JepResult jep(const ClassDescriptor& cls, const FdAlgebra& a, const FdAlgebra& b,
              const RationalTrace& alpha = RationalTrace{},
              const RationalTrace& beta = RationalTrace{});

}  // namespace bratteli
