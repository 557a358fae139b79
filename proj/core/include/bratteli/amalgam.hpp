#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bratteli/algebra.hpp"
#include "bratteli/polytope.hpp"

namespace bratteli {

// One traced embedding with a distinguished interior trace on each end:
// phi : (A, alpha) -> (B, beta) with pushforward_trace(phi, beta) == alpha.
// Bundled for the amalgamation entry points below.
struct TracedProblem {
  FdAlgebra A;
  RationalTrace alpha;
  FdAlgebra B;
  RationalTrace beta;
  BratteliMap phi;  // A -> B
  FdAlgebra C;
  RationalTrace gamma;
  BratteliMap psi;  // A -> C
};

// Multiplicities with which B and C embed into a single matrix algebra M_N
// over a common trace: row vectors s (per B summand) and r (per C summand).
struct MatrixAmalgamSolution {
  Int N = 0;
  std::vector<Int> s;
  std::vector<Int> r;
};

// Exact verification of the four matching equations for a candidate
// solution: sum l_i s_i = N = sum k_i r_i, beta_j N = l_j s_j,
// gamma_j N = k_j r_j, and equal composite columns
// sum_i phi[i][j] s_i = sum_i psi[i][j] r_i.
bool amalgam_equations_hold(const TracedProblem& p, const MatrixAmalgamSolution& sol,
                            std::string* why = nullptr);

// Minimal single-factor amalgam of (B, beta) and (C, gamma) over (A, alpha):
// the smallest N with trace-preserving embeddings of B and C into M_N whose
// composites with phi and psi agree. Errors: WidthMismatch, NotInterior,
// NotTracePreserving (with the failing summand index).
MatrixAmalgamSolution solve_matrix_amalgam(const TracedProblem& p);

// Width-n amalgam: D has one matrix summand per chosen trace vertex, the
// distinguished trace delta is interior, both legs are trace-preserving, and
// the two composites agree exactly.
struct AmalgamResult {
  FdAlgebra D;
  RationalTrace delta;
  BratteliMap psiB;  // B -> D
  BratteliMap psiC;  // C -> D
  TracePolytope preserved;           // Phi_*T(B) intersect Psi_*T(C)
  std::vector<RatVec> tau;           // chosen vertices, one per D summand
  std::vector<MatrixAmalgamSolution> solves;
};

AmalgamResult amalgamate_width_n(const TracedProblem& p, int width_budget = 6);

// Exhaustive search for any exact amalgam target: a finite-dimensional D with
// unital embeddings psiB, psiC such that psiB.phi == psiC.psi, scanning
// summand size tuples with total size <= max_total_size (sizes enumerated up
// to permutation; total ascending, then width, then lexicographic). No traces
// involved.
struct BruteforceOutcome {
  bool found = false;
  FdAlgebra D;       // meaningful when found
  BratteliMap psiB;  // B -> D
  BratteliMap psiC;  // C -> D
  Int work = 0;      // enumeration units spent
};

BruteforceOutcome find_exact_amalgam_bruteforce(const BratteliMap& phi, const BratteliMap& psi,
                                                Int max_total_size,
                                                Int work_cap = 50'000'000);

// Rank dichotomy check: two composable pairs A -> B_i -> C are either exactly
// equal as Bratteli data or at operator-norm distance >= 1; a reported
// distance < 1 with unequal composites is flagged.
struct NearExactVerdict {
  bool exact = false;
  bool contract_violated = false;
  std::string detail;
};

NearExactVerdict near_to_exact(const BratteliMap& psi0, const BratteliMap& psi1,
                               const BratteliMap& phi0, const BratteliMap& phi1,
                               double distance);

}  // namespace bratteli
