#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bratteli/amalgam.hpp"
#include "bratteli/certificates.hpp"
#include "bratteli/chain.hpp"
#include "bratteli/dimdrop.hpp"
#include "bratteli/numeric.hpp"

namespace bratteli {

// Insertion-ordered JSON keeps emitted files deterministic.
using Json = nlohmann::ordered_json;

// Rationals travel as exact "num/den" strings (integers without the slash).
Json json_of_rat(const Rat& x);
Rat rat_of_json(const Json& j);
Json json_of_rvec(const RatVec& v);
RatVec rvec_of_json(const Json& j);

// {"summands":[2,2]}
Json json_of_algebra(const FdAlgebra& a);
FdAlgebra algebra_of_json(const Json& j);
// {"weights":["1/2","1/2"]}
Json json_of_trace(const RationalTrace& t);
RationalTrace trace_of_json(const Json& j);
// {"source":…,"target":…,"unital":true,"multiplicities":[[…]]}
Json json_of_map(const BratteliMap& m);
BratteliMap map_of_json(const Json& j);

// {"A":…,"alpha":…,"B":…,"beta":…,"phi":…,"C":…,"gamma":…,"psi":…}
Json json_of_problem(const TracedProblem& p);
TracedProblem problem_of_json(const Json& j);
// {"N":12,"s":[3,3],"r":[2,2]}
Json json_of_solution(const MatrixAmalgamSolution& s);
MatrixAmalgamSolution solution_of_json(const Json& j);
// Full construction record, including {"polytope":{"vertices":[…]}}.
Json json_of_amalgam_result(const AmalgamResult& r);

Json json_of_descriptor(const ClassDescriptor& d);
ClassDescriptor descriptor_of_json(const Json& j);
// {"descriptor":…,"stages":[…],"maps":[…],"traces":[…],"log":[…]}
Json json_of_chain(const InductiveChain& c);
InductiveChain chain_of_json(const Json& j);
// Bratteli diagram: node "m_j" per stage-m summand labeled with its size,
// one edge per nonzero multiplicity labeled with it. Byte-deterministic.
std::string dot_of_chain(const InductiveChain& c);

Json json_of_supernatural_report(const ChainSupernatural& s);
Json json_of_k0(const K0Report& r);
Json json_of_simplicity(const std::vector<SimplicityWitness>& w);
Json json_of_diameters(const std::vector<Rat>& d);

// {"rows":…,"cols":…,"data":[[re,im],…]} row-major.
Json json_of_cmat(const CMat& m);
CMat cmat_of_json(const Json& j);
Json json_of_homogeneity(const HomogeneityResult& h);
// {"oscillation":…,"histogram":[…],"seed":…,…}
Json json_of_ramsey(const RamseyReport& r);

// {"breaks":["0","1/2","1"],"pieces":[{"coeffs":["0","1"]},…]}
Json json_of_pw(const PiecewisePoly& f);
PiecewisePoly pw_of_json(const Json& j);
// Matrix case: each piece's "coeffs" is a row-major list of coefficient
// lists; "dim" is explicit.
Json json_of_pm(const PiecewiseMatrix& x);
PiecewiseMatrix pm_of_json(const Json& j);
// Adds {"p":…,"q":…} to the matrix layout.
Json json_of_element(const DimDropElement& e);
DimDropElement element_of_json(const Json& j);
Json json_of_measure(const QuantileMeasure& mu);
QuantileMeasure measure_of_json(const Json& j);

// Parse with library exceptions mapped to ParseError.
Json json_parse(const std::string& text);
// Two-space indent plus trailing newline; the canonical file form.
std::string json_dumps(const Json& j);
std::string read_text_file(const std::string& path);
// Write-then-rename so readers never observe a partial file.
void write_text_file(const std::string& path, const std::string& content);
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace bratteli
