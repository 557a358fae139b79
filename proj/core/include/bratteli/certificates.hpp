#pragma once

#include <vector>

#include "bratteli/chain.hpp"

namespace bratteli {

// Recovered classification data of a width-1 chain: exponent of p = largest
// p-adic valuation among the stage sizes, plus the primes whose exponents
// the chain's own program certifies as unbounded. Errors: NotWidthOne.
struct ChainSupernatural {
  SupernaturalNumber number;
  std::vector<Int> certified_unbounded;
};

ChainSupernatural supernatural_of_chain(const InductiveChain& chain);

// One composite that vanishes mod p: every multiplicity of the composite
// from stage `from` to stage `to` is divisible by p.
struct DivisibilityCertificate {
  Int p = 0;
  Int from = 0;
  Int to = 0;

  bool operator==(const DivisibilityCertificate&) const = default;
};

// Ordered-group data read off the chain: the stabilized rank over Q of long
// composites (sup over start stages of the rank into the last stage; the
// width of a single-stage chain), the ranks of the composites out of stage
// 0, and all composites vanishing mod a prime. Primes are scanned from the
// single-step maps: p qualifies when it divides every entry of some step.
struct K0Report {
  Int rank = 0;
  std::vector<Int> per_stage_image_ranks;  // rank of composite(0, m), m = 0..L
  std::vector<DivisibilityCertificate> divisibility;
  // rank >= 2 obstructs absorbing a full matrix factor (the limit cannot be
  // a single UHF algebra).
  bool self_absorption_obstruction = false;
};

K0Report k0_of_chain(const InductiveChain& chain);

// A strictly positive composite certifies simplicity of everything past its
// start. Returns, for each start stage, the least end stage whose composite
// is strictly positive, when one exists within the chain. An empty list
// means no certificate at this finite length - not a refutation.
struct SimplicityWitness {
  Int from = 0;
  Int to = 0;

  bool operator==(const SimplicityWitness&) const = default;
};

std::vector<SimplicityWitness> simplicity_certificate(const InductiveChain& chain);

// Entry m = exact l1 diameter of the stage-m trace simplex pushed forward
// to stage 0. Non-increasing; small values certify that all traces of the
// eventual limit agree far enough along the chain. Requires a unital chain.
std::vector<Rat> trace_uniqueness_diameters(const InductiveChain& chain);

}  // namespace bratteli
