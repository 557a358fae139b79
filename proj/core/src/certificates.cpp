#include "bratteli/certificates.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "bratteli/error.hpp"
#include "bratteli/polytope.hpp"
#include "bratteli/ratmat.hpp"

namespace bratteli {

namespace {

void require_valid(const InductiveChain& chain) {
  ValidationReport r = validate_chain(chain);
  if (!r.ok) fail(Errc::InvalidChain, r.detail);
}

RatMat to_rational(const std::vector<std::vector<Int>>& m) {
  RatMat out;
  for (const auto& row : m) out.emplace_back(row.begin(), row.end());
  return out;
}

}  // namespace

ChainSupernatural supernatural_of_chain(const InductiveChain& chain) {
  require_valid(chain);
  for (const FdAlgebra& stage : chain.stages)
    if (stage.width() != 1)
      fail(Errc::NotWidthOne, "supernatural data is defined for width-1 chains");

  ChainSupernatural out;
  for (const FdAlgebra& stage : chain.stages) {
    for (const auto& [p, e] : factorize(stage.summands[0])) {
      Int& cur = out.number.exponents[p];
      cur = std::max(cur, e);
    }
  }
  if (chain.descriptor.kind == ChainKind::Uhf) {
    for (const auto& [p, e] : chain.descriptor.program.exponents) {
      if (e == kUnbounded) {
        out.certified_unbounded.push_back(p);
        out.number.exponents[p] = kUnbounded;
      }
    }
  }
  return out;
}

K0Report k0_of_chain(const InductiveChain& chain) {
  require_valid(chain);
  const Int last = static_cast<Int>(chain.stages.size()) - 1;

  K0Report report;
  if (last == 0) {
    report.rank = chain.stages[0].width();
  } else {
    for (Int a = 0; a < last; ++a)
      report.rank = std::max(report.rank,
                             static_cast<Int>(rat_rank(to_rational(composite(chain, a, last).mult))));
  }
  for (Int m = 0; m <= last; ++m)
    report.per_stage_image_ranks.push_back(rat_rank(to_rational(composite(chain, 0, m).mult)));

  // Candidate primes: divisors of the entry gcd of some single step.
  std::set<Int> primes;
  for (const BratteliMap& map : chain.maps) {
    Int g = 0;
    for (const auto& row : map.mult)
      for (Int v : row) g = std::gcd(g, v);
    for (const auto& [p, e] : factorize(std::max<Int>(g, 1))) primes.insert(p);
  }
  for (Int p : primes) {
    for (Int from = 0; from < last; ++from) {
      for (Int to = from + 1; to <= last; ++to) {
        bool all = true;
        for (const auto& row : composite(chain, from, to).mult)
          for (Int v : row) all = all && v % p == 0;
        if (all) report.divisibility.push_back({p, from, to});
      }
    }
  }
  report.self_absorption_obstruction = report.rank >= 2;
  return report;
}

std::vector<SimplicityWitness> simplicity_certificate(const InductiveChain& chain) {
  require_valid(chain);
  const Int last = static_cast<Int>(chain.stages.size()) - 1;

  std::vector<SimplicityWitness> out;
  for (Int from = 0; from < last; ++from) {
    for (Int to = from + 1; to <= last; ++to) {
      bool positive = true;
      for (const auto& row : composite(chain, from, to).mult)
        for (Int v : row) positive = positive && v > 0;
      if (positive) {
        out.push_back({from, to});
        break;  // least end stage for this start
      }
    }
  }
  return out;
}

std::vector<Rat> trace_uniqueness_diameters(const InductiveChain& chain) {
  require_valid(chain);
  if (!chain.descriptor.unital)
    fail(Errc::NonUnitalMap, "trace diameters are defined for unital chains");

  std::vector<Rat> out;
  for (Int m = 0; m < static_cast<Int>(chain.stages.size()); ++m) {
    BratteliMap to_zero = composite(chain, 0, m);
    // Corner e_i of the stage-m simplex pushes to the stage-0 trace whose
    // j-th weight is h_j * mult[i][j] / l_i.
    std::vector<RatVec> corners;
    for (int i = 0; i < chain.stages[m].width(); ++i) {
      RatVec w(chain.stages[0].width());
      for (int j = 0; j < chain.stages[0].width(); ++j)
        w[j] = Rat(chain.stages[0].summands[j]) * to_zero.mult[i][j] / chain.stages[m].summands[i];
      corners.push_back(std::move(w));
    }
    out.push_back(l1_diameter(corners));
  }
  return out;
}

}  // namespace bratteli
