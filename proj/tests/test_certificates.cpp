#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "bratteli/certificates.hpp"
#include "test_util.hpp"

using namespace bratteli;

namespace {

// Chain [1,1] -> [1,2] -> [3,2] whose first composite is strictly positive
// but whose single steps are not.
InductiveChain triangular_chain() {
  InductiveChain chain;
  chain.stages = {make_algebra({1, 1}), make_algebra({1, 2}), make_algebra({3, 2})};
  chain.maps = {make_embedding(chain.stages[0], chain.stages[1], {{1, 0}, {1, 1}}),
                make_embedding(chain.stages[1], chain.stages[2], {{1, 1}, {0, 1}})};
  return chain;
}

bool has_certificate(const K0Report& report, Int p, Int from, Int to) {
  return std::find(report.divisibility.begin(), report.divisibility.end(),
                   DivisibilityCertificate{p, from, to}) != report.divisibility.end();
}

}  // namespace

TEST_CASE("supernatural_of_chain recovers finite exponents exactly") {
  ChainSupernatural rec = supernatural_of_chain(build_uhf_chain(parse_supernatural("2^2*5"), 6));
  CHECK(rec.number == parse_supernatural("2^2*5"));
  CHECK(rec.certified_unbounded.empty());

  ChainSupernatural mixed =
      supernatural_of_chain(build_uhf_chain(parse_supernatural("2*3"), 3));
  CHECK(mixed.number == parse_supernatural("2*3"));
}

TEST_CASE("supernatural_of_chain flags unbounded program entries") {
  ChainSupernatural rec = supernatural_of_chain(build_uhf_chain(parse_supernatural("2^inf"), 3));
  CHECK(rec.number.exponents == std::map<Int, Int>{{2, kUnbounded}});
  CHECK(rec.certified_unbounded == std::vector<Int>{2});

  ChainSupernatural mixed =
      supernatural_of_chain(build_uhf_chain(parse_supernatural("2^inf*3"), 6));
  CHECK(mixed.number.exponents == std::map<Int, Int>{{2, kUnbounded}, {3, 1}});
  CHECK(mixed.certified_unbounded == std::vector<Int>{2});
}

TEST_CASE("supernatural_of_chain works on width-1 chains of any class") {
  ChainSupernatural factors = supernatural_of_chain(build_factors_chain(4));
  // Stage sizes 1, 2, 6, 24 = 2^3 * 3: largest valuations are 3 and 1.
  CHECK(factors.number.exponents == std::map<Int, Int>{{2, 3}, {3, 1}});
  CHECK(factors.certified_unbounded.empty());

  RationalTrace tau = make_trace({Rat(1, 3), Rat(2, 3)});
  InductiveChain wide = build_width_class_chain(2, tau, 3);
  CHECK(code_of([&] { supernatural_of_chain(wide); }) == Errc::NotWidthOne);
}

TEST_CASE("k0 of a UHF chain has rank one and per-step divisibility") {
  K0Report report = k0_of_chain(build_uhf_chain(parse_supernatural("2^inf"), 3));
  CHECK(report.rank == 1);
  CHECK(report.per_stage_image_ranks == std::vector<Int>{1, 1, 1});
  CHECK_FALSE(report.self_absorption_obstruction);
  CHECK(has_certificate(report, 2, 0, 1));
  CHECK(has_certificate(report, 2, 0, 2));
  CHECK(has_certificate(report, 2, 1, 2));
  CHECK(report.divisibility.size() == 3);
}

TEST_CASE("k0 of scheduled width chains keeps full rank") {
  RationalTrace tau2 = make_trace({Rat(1, 3), Rat(2, 3)});
  K0Report two = k0_of_chain(build_width_class_chain(2, tau2, 8));
  CHECK(two.rank == 2);
  CHECK(two.self_absorption_obstruction);
  CHECK(two.per_stage_image_ranks == std::vector<Int>(8, 2));
  CHECK(has_certificate(two, 2, 0, 2));
  CHECK(has_certificate(two, 3, 0, 5));

  RationalTrace tau3 = make_trace({Rat(1, 6), Rat(1, 3), Rat(1, 2)});
  K0Report three = k0_of_chain(build_width_class_chain(3, tau3, 8));
  CHECK(three.rank == 3);
  CHECK(two.rank != three.rank);  // the limits cannot be isomorphic
}

TEST_CASE("k0 of a single stage is the stage width") {
  InductiveChain single;
  single.stages = {make_algebra({2, 3})};
  K0Report report = k0_of_chain(single);
  CHECK(report.rank == 2);
  CHECK(report.per_stage_image_ranks == std::vector<Int>{2});
  CHECK(report.divisibility.empty());
}

TEST_CASE("simplicity witnesses name the least strictly positive composite") {
  std::vector<SimplicityWitness> uhf =
      simplicity_certificate(build_uhf_chain(parse_supernatural("2^inf"), 3));
  CHECK(uhf == std::vector<SimplicityWitness>{{0, 1}, {1, 2}});

  std::vector<SimplicityWitness> tri = simplicity_certificate(triangular_chain());
  CHECK(tri == std::vector<SimplicityWitness>{{0, 2}});

  // A chain of identity maps never certifies simplicity.
  InductiveChain flat;
  flat.stages = {make_algebra({1, 1}), make_algebra({1, 1})};
  flat.maps = {make_embedding(flat.stages[0], flat.stages[1], {{1, 0}, {0, 1}})};
  CHECK(simplicity_certificate(flat).empty());
}

TEST_CASE("width-chain simplicity witnesses stay within one schedule rotation") {
  RationalTrace tau = make_trace({Rat(1, 3), Rat(2, 3)});
  std::vector<SimplicityWitness> w =
      simplicity_certificate(build_width_class_chain(2, tau, 8));
  REQUIRE(!w.empty());
  for (const SimplicityWitness& witness : w) CHECK(witness.to - witness.from <= 3);
  CHECK(w.front().from == 0);
  CHECK(w.front().to <= 4);
}

TEST_CASE("trace diameters collapse after a trace-collapsing step") {
  InductiveChain chain;
  chain.stages = {make_algebra({1, 1}), make_algebra({2, 2})};
  chain.maps = {make_embedding(chain.stages[0], chain.stages[1], {{1, 1}, {1, 1}})};
  CHECK(trace_uniqueness_diameters(chain) == std::vector<Rat>{Rat(2), Rat(0)});

  InductiveChain single;
  single.stages = {make_algebra({1, 1})};
  CHECK(trace_uniqueness_diameters(single) == std::vector<Rat>{Rat(2)});
}

TEST_CASE("trace diameters are non-increasing and bounded by the shrink radius") {
  RationalTrace tau = make_trace({Rat(1, 3), Rat(2, 3)});
  InductiveChain chain = build_width_class_chain(2, tau, 8);
  std::vector<Rat> diam = trace_uniqueness_diameters(chain);
  REQUIRE(diam.size() == 8);
  for (size_t m = 0; m + 1 < diam.size(); ++m) CHECK(diam[m + 1] <= diam[m]);
  // Steps 1, 4, 7 (1-based) shrink with epsilon = 2^-m; afterwards the whole
  // stage simplex sits inside an l1 ball of radius epsilon, so diameter <=
  // 2 epsilon = 2 * 2^-m.
  CHECK(diam[1] <= Rat(2) * Rat(1, 2));
  CHECK(diam[4] <= Rat(2) * Rat(1, 16));
  CHECK(diam[7] <= Rat(2) * Rat(1, 128));
}

TEST_CASE("trace diameters reject non-unital chains") {
  CHECK(code_of([] { trace_uniqueness_diameters(build_compacts_chain(3)); }) ==
        Errc::NonUnitalMap);
}

TEST_CASE("certificates insist on valid chains") {
  InductiveChain broken;
  broken.stages = {make_algebra({2}), make_algebra({4})};
  broken.maps = {BratteliMap{broken.stages[0], broken.stages[1], true, {{3}}}};
  CHECK(code_of([&] { k0_of_chain(broken); }) == Errc::InvalidChain);
  CHECK(code_of([&] { simplicity_certificate(broken); }) == Errc::InvalidChain);
}
