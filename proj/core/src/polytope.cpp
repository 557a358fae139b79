#include "bratteli/polytope.hpp"

#include <algorithm>
#include <set>

namespace bratteli {

namespace {

// Column i of the pushforward in weight coordinates: the source weights of
// the target extreme trace e_j are an affine function sigma = S beta with
// S[i][j] = h_i * mult[j][i] / l_j (column-stochastic by unitality).
RatMat pushforward_matrix(const BratteliMap& map) {
  const auto& h = map.source.summands;
  const auto& l = map.target.summands;
  RatMat s(h.size(), RatVec(l.size(), Rat(0)));
  for (size_t i = 0; i < h.size(); ++i)
    for (size_t j = 0; j < l.size(); ++j)
      s[i][j] = rat_of(h[i], 1) * rat_of(map.mult[j][i], l[j]);
  return s;
}

}  // namespace

TracePolytope preserved_trace_polytope(const BratteliMap& phi, const BratteliMap& psi,
                                       int width_budget) {
  if (phi.source != psi.source)
    fail(Errc::ShapeMismatch, "preserved polytope needs both maps out of the same source");
  for (const BratteliMap* m : {&phi, &psi}) {
    auto v = validate_embedding(*m);
    if (!v.ok) fail(Errc::InvalidMap, v.detail);
    if (!m->unital) fail(Errc::NonUnitalMap, "preserved polytope is defined for unital maps");
  }
  const int n = phi.source.width();
  if (n > width_budget)
    fail(Errc::BudgetExceeded, "width " + std::to_string(n) + " exceeds the polytope budget " +
                                   std::to_string(width_budget));

  // Lift to pairs (beta, gamma) with equal pushforward, a standard-form
  // polytope; its vertices project onto a generating set of the
  // intersection.
  const RatMat sb = pushforward_matrix(phi);
  const RatMat sc = pushforward_matrix(psi);
  const size_t nb = sb[0].size(), nc = sc[0].size();
  RatMat a(n + 2, RatVec(nb + nc, Rat(0)));
  RatVec b(n + 2, Rat(0));
  for (int c = 0; c < n; ++c) {
    for (size_t j = 0; j < nb; ++j) a[c][j] = sb[c][j];
    for (size_t j = 0; j < nc; ++j) a[c][nb + j] = -sc[c][j];
  }
  for (size_t j = 0; j < nb; ++j) a[n][j] = 1;
  for (size_t j = 0; j < nc; ++j) a[n + 1][nb + j] = 1;
  b[n] = 1;
  b[n + 1] = 1;

  std::set<RatVec> projected;
  for (const RatVec& pair : standard_form_vertices(a, b)) {
    RatVec beta(pair.begin(), pair.begin() + nb);
    projected.insert(rat_mul_vec(sb, beta));
  }

  TracePolytope out;
  out.width = n;
  out.vertices = extreme_points({projected.begin(), projected.end()});
  return out;
}

void compute_facets(TracePolytope& polytope) {
  const auto& verts = polytope.vertices;
  if (verts.empty()) fail(Errc::ShapeMismatch, "facets of an empty polytope");
  const size_t w = verts[0].size();

  // Affine hull: directions relative to verts[0].
  RatMat dirs;
  for (size_t i = 1; i < verts.size(); ++i) {
    RatVec d(w);
    for (size_t c = 0; c < w; ++c) d[c] = verts[i][c] - verts[0][c];
    dirs.push_back(std::move(d));
  }
  // Independent spanning subset via incremental rank.
  RatMat span;
  for (const auto& d : dirs) {
    RatMat test = span;
    test.push_back(d);
    if (rat_rank(test) > static_cast<int>(span.size())) span = std::move(test);
  }
  const size_t dim = span.size();

  // Hull equations: nullspace of the span gives normals n with
  // n.(x - v0) == 0 on the hull.
  std::vector<TracePolytope::Equation> eqs;
  for (const RatVec& nrm : rat_nullspace(span)) {
    Rat off(0);
    for (size_t c = 0; c < w; ++c) off += nrm[c] * verts[0][c];
    eqs.push_back({nrm, off});
  }
  polytope.hull_equations = std::move(eqs);

  std::vector<TracePolytope::HalfSpace> facets;
  if (dim >= 1) {
    // Each facet is spanned by dim vertices; test all subsets.
    std::vector<size_t> idx;
    auto consider = [&]() {
      // Normal inside the hull: orthogonal to facet directions, expressible
      // as a combination of the hull's span rows.
      RatMat fd;  // facet directions
      for (size_t t = 1; t < idx.size(); ++t) {
        RatVec d(w);
        for (size_t c = 0; c < w; ++c) d[c] = verts[idx[t]][c] - verts[idx[0]][c];
        fd.push_back(std::move(d));
      }
      if (rat_rank(fd) != static_cast<int>(dim - 1)) return;
      // Solve for coefficients mu of span rows with (mu^T span) . d = 0 for
      // all facet directions d, i.e. (fd * span^T) mu = 0.
      RatMat sys = rat_mul(fd, rat_transpose(span));
      RatVec mu;
      if (dim == 1) {
        mu = RatVec{Rat(1)};
      } else {
        auto basis = rat_nullspace(sys);
        if (basis.size() != 1) return;  // degenerate subset
        mu = basis.front();
      }
      RatVec nrm(w, Rat(0));
      for (size_t r = 0; r < span.size(); ++r)
        for (size_t c = 0; c < w; ++c) nrm[c] += mu[r] * span[r][c];
      Rat off(0);
      for (size_t c = 0; c < w; ++c) off += nrm[c] * verts[idx[0]][c];
      // Orient so that every vertex satisfies nrm.x <= off; reject cuts.
      int below = 0, above = 0;
      for (const auto& v : verts) {
        Rat val(0);
        for (size_t c = 0; c < w; ++c) val += nrm[c] * v[c];
        if (val > off) ++above;
        if (val < off) ++below;
      }
      if (above > 0 && below > 0) return;
      if (above > 0) {
        for (auto& x : nrm) x = -x;
        off = -off;
      }
      // Canonical scaling for dedupe: first nonzero entry -> +-1.
      for (const Rat& x : nrm)
        if (x != 0) {
          Rat scale = abs(x);
          for (auto& y : nrm) y /= scale;
          off /= scale;
          break;
        }
      for (const auto& f : facets)
        if (f.normal == nrm && f.offset == off) return;
      facets.push_back({std::move(nrm), std::move(off)});
    };
    auto rec = [&](auto&& self, size_t start, size_t need) -> void {
      if (need == 0) {
        consider();
        return;
      }
      for (size_t i = start; i + need <= verts.size(); ++i) {
        idx.push_back(i);
        self(self, i + 1, need - 1);
        idx.pop_back();
      }
    };
    rec(rec, 0, dim);
  }
  polytope.facets = std::move(facets);
}

std::vector<RatVec> fiber_vertices(const BratteliMap& map, const RationalTrace& source_trace) {
  if (source_trace.width() != map.source.width())
    fail(Errc::WidthMismatch, "fiber: trace width does not match the map's source");
  const RatMat s = pushforward_matrix(map);
  const size_t cols = map.target.width();
  RatMat a(s.size() + 1, RatVec(cols, Rat(0)));
  RatVec b(s.size() + 1, Rat(0));
  for (size_t r = 0; r < s.size(); ++r) {
    a[r] = s[r];
    b[r] = source_trace.weights[r];
  }
  for (size_t j = 0; j < cols; ++j) a[s.size()][j] = 1;
  b[s.size()] = 1;
  return standard_form_vertices(a, b);
}

std::optional<RationalTrace> fiber_interior_point(const BratteliMap& map,
                                                  const RationalTrace& source_trace) {
  auto verts = fiber_vertices(map, source_trace);
  if (verts.empty()) return std::nullopt;
  RatVec avg(verts[0].size(), Rat(0));
  for (const auto& v : verts)
    for (size_t j = 0; j < v.size(); ++j) avg[j] += v[j];
  for (auto& x : avg) x /= Rat(static_cast<long>(verts.size()));
  return RationalTrace{std::move(avg)};
}

Rat l1_diameter(const std::vector<RatVec>& points) {
  Rat best(0);
  for (size_t i = 0; i < points.size(); ++i)
    for (size_t j = i + 1; j < points.size(); ++j) {
      Rat d(0);
      for (size_t c = 0; c < points[i].size(); ++c) d += abs(points[i][c] - points[j][c]);
      if (d > best) best = d;
    }
  return best;
}

}  // namespace bratteli
