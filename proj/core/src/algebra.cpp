#include "bratteli/algebra.hpp"

#include <sstream>

namespace bratteli {

Int FdAlgebra::total_size() const {
  Int t = 0;
  for (Int k : summands) t = checked_add(t, k);
  return t;
}

Int FdAlgebra::dimension() const {
  Int t = 0;
  for (Int k : summands) t = checked_add(t, checked_mul(k, k));
  return t;
}

FdAlgebra make_algebra(std::vector<Int> summands) {
  if (summands.empty()) fail(Errc::EmptySummands, "an algebra needs at least one summand");
  for (size_t i = 0; i < summands.size(); ++i)
    if (summands[i] <= 0)
      fail(Errc::NonPositiveSummand,
           "summand " + std::to_string(i) + " has size " + std::to_string(summands[i]));
  return FdAlgebra{std::move(summands)};
}

RationalTrace make_trace(std::vector<Rat> weights) {
  if (weights.empty()) fail(Errc::EmptySummands, "a trace needs at least one weight");
  Rat sum(0);
  for (size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] < 0)
      fail(Errc::NonPositive, "trace weight " + std::to_string(i) + " is negative");
    sum += weights[i];
  }
  if (sum != 1) fail(Errc::NotInterior, "trace weights sum to " + rat_str(sum) + ", expected 1");
  return RationalTrace{std::move(weights)};
}

bool is_interior(const RationalTrace& trace) {
  for (const Rat& w : trace.weights)
    if (w <= 0) return false;
  return true;
}

RationalTrace barycenter_trace(int width) {
  return make_trace(std::vector<Rat>(width, rat_of(1, width)));
}

namespace {

struct CheckResult {
  bool ok = true;
  Errc code = Errc::InvalidMap;
  std::string detail;
};

CheckResult check_embedding(const BratteliMap& map) {
  const auto& h = map.source.summands;
  const auto& l = map.target.summands;
  if (map.mult.size() != l.size())
    return {false, Errc::ShapeMismatch,
            "multiplicity matrix has " + std::to_string(map.mult.size()) +
                " rows, target has width " + std::to_string(l.size())};
  for (size_t j = 0; j < map.mult.size(); ++j)
    if (map.mult[j].size() != h.size())
      return {false, Errc::ShapeMismatch,
              "row " + std::to_string(j) + " has " + std::to_string(map.mult[j].size()) +
                  " entries, source has width " + std::to_string(h.size())};
  for (size_t j = 0; j < map.mult.size(); ++j)
    for (size_t i = 0; i < h.size(); ++i)
      if (map.mult[j][i] < 0)
        return {false, Errc::InvalidMap,
                "negative multiplicity at (" + std::to_string(j) + "," + std::to_string(i) + ")"};
  for (size_t i = 0; i < h.size(); ++i) {
    bool hit = false;
    for (size_t j = 0; j < map.mult.size(); ++j) hit = hit || map.mult[j][i] > 0;
    if (!hit)
      return {false, Errc::InvalidMap,
              "source summand " + std::to_string(i) +
                  " is annihilated (all-zero multiplicity column)"};
  }
  for (size_t j = 0; j < map.mult.size(); ++j) {
    Int used = 0;
    for (size_t i = 0; i < h.size(); ++i)
      used = checked_add(used, checked_mul(map.mult[j][i], h[i]));
    if (map.unital && used != l[j])
      return {false, Errc::NonUnitalMap,
              "row " + std::to_string(j) + " fills " + std::to_string(used) + " of " +
                  std::to_string(l[j]) + ", so the map cannot be unital"};
    if (!map.unital && used > l[j])
      return {false, Errc::InvalidMap,
              "row " + std::to_string(j) + " needs " + std::to_string(used) +
                  " > target size " + std::to_string(l[j])};
  }
  return {};
}

}  // namespace

ValidationReport validate_embedding(const BratteliMap& map) {
  CheckResult r = check_embedding(map);
  return {r.ok, r.detail};
}

BratteliMap make_embedding(FdAlgebra source, FdAlgebra target,
                           std::vector<std::vector<Int>> mult, bool unital) {
  BratteliMap map{std::move(source), std::move(target), unital, std::move(mult)};
  CheckResult r = check_embedding(map);
  if (!r.ok) fail(r.code, r.detail);
  return map;
}

RationalTrace pushforward_trace(const BratteliMap& map, const RationalTrace& target_trace) {
  if (!map.unital)
    fail(Errc::NonUnitalMap, "trace pushforward is defined for unital embeddings only");
  if (target_trace.width() != map.target.width())
    fail(Errc::WidthMismatch, "trace has width " + std::to_string(target_trace.width()) +
                                  ", target has width " + std::to_string(map.target.width()));
  const auto& h = map.source.summands;
  const auto& l = map.target.summands;
  std::vector<Rat> sigma(h.size(), Rat(0));
  for (size_t i = 0; i < h.size(); ++i) {
    for (size_t j = 0; j < l.size(); ++j)
      sigma[i] += target_trace.weights[j] / Rat(static_cast<long>(l[j])) *
                  Rat(static_cast<long>(map.mult[j][i]));
    sigma[i] *= Rat(static_cast<long>(h[i]));
  }
  return RationalTrace{std::move(sigma)};
}

bool is_trace_preserving(const BratteliMap& map, const RationalTrace& source_trace,
                         const RationalTrace& target_trace) {
  if (source_trace.width() != map.source.width())
    fail(Errc::WidthMismatch, "source trace width does not match the map's source");
  return pushforward_trace(map, target_trace) == source_trace;
}

BratteliMap compose(const BratteliMap& f, const BratteliMap& g) {
  if (f.target != g.source)
    fail(Errc::ShapeMismatch, "compose: f's target does not equal g's source");
  const size_t rows = g.mult.size(), mid = f.mult.size(), cols = f.source.summands.size();
  std::vector<std::vector<Int>> prod(rows, std::vector<Int>(cols, 0));
  for (size_t j = 0; j < rows; ++j)
    for (size_t m = 0; m < mid; ++m) {
      if (g.mult[j][m] == 0) continue;
      for (size_t i = 0; i < cols; ++i)
        prod[j][i] = checked_add(prod[j][i], checked_mul(g.mult[j][m], f.mult[m][i]));
    }
  return BratteliMap{f.source, g.target, f.unital && g.unital, std::move(prod)};
}

Rat trace_of_projection(const FdAlgebra& algebra, const RationalTrace& trace,
                        const RankVector& ranks) {
  if (trace.width() != algebra.width() || static_cast<int>(ranks.size()) != algebra.width())
    fail(Errc::WidthMismatch, "trace/ranks width does not match the algebra");
  Rat value(0);
  for (size_t i = 0; i < ranks.size(); ++i) {
    if (ranks[i] < 0 || ranks[i] > algebra.summands[i])
      fail(Errc::RankOutOfBounds, "rank " + std::to_string(ranks[i]) + " at summand " +
                                      std::to_string(i) + " exceeds size " +
                                      std::to_string(algebra.summands[i]));
    value += trace.weights[i] * rat_of(ranks[i], algebra.summands[i]);
  }
  return value;
}

RankVector project_ranks(const BratteliMap& map, const RankVector& ranks) {
  if (ranks.size() != map.source.summands.size())
    fail(Errc::WidthMismatch, "rank vector width does not match the map's source");
  for (size_t i = 0; i < ranks.size(); ++i)
    if (ranks[i] < 0 || ranks[i] > map.source.summands[i])
      fail(Errc::RankOutOfBounds, "rank out of bounds at summand " + std::to_string(i));
  RankVector out(map.mult.size(), 0);
  for (size_t j = 0; j < map.mult.size(); ++j)
    for (size_t i = 0; i < ranks.size(); ++i)
      out[j] = checked_add(out[j], checked_mul(map.mult[j][i], ranks[i]));
  return out;
}

bool unitarily_equivalent(const BratteliMap& f, const BratteliMap& g) {
  return f.source == g.source && f.target == g.target && f.unital == g.unital &&
         f.mult == g.mult;
}

}  // namespace bratteli
