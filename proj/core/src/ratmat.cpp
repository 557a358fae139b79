#include "bratteli/ratmat.hpp"

#include <algorithm>
#include <set>

namespace bratteli {

RatMat rat_identity(int n) {
  RatMat a(n, RatVec(n, Rat(0)));
  for (int i = 0; i < n; ++i) a[i][i] = 1;
  return a;
}

RatMat rat_transpose(const RatMat& a) {
  if (a.empty()) return {};
  RatMat t(a[0].size(), RatVec(a.size(), Rat(0)));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

RatMat rat_mul(const RatMat& a, const RatMat& b) {
  RatMat c(a.size(), RatVec(b.empty() ? 0 : b[0].size(), Rat(0)));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t k = 0; k < b.size(); ++k) {
      if (a[i][k] == 0) continue;
      for (size_t j = 0; j < b[k].size(); ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

RatVec rat_mul_vec(const RatMat& a, const RatVec& x) {
  RatVec y(a.size(), Rat(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  return y;
}

namespace {

// Reduced row echelon form of [a | b] (b may be empty). Returns pivot column
// of each row in `pivots`.
void rref(RatMat& a, std::vector<int>& pivots) {
  pivots.clear();
  if (a.empty()) return;
  const size_t rows = a.size(), cols = a[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[r], a[piv]);
    Rat inv = 1 / a[r][c];
    for (size_t j = c; j < cols; ++j) a[r][j] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rat f = a[i][c];
      for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
}

}  // namespace

int rat_rank(RatMat a) {
  std::vector<int> pivots;
  rref(a, pivots);
  return static_cast<int>(pivots.size());
}

std::optional<LinearSolution> rat_solve(const RatMat& a, const RatVec& b) {
  const size_t rows = a.size();
  const size_t cols = rows == 0 ? 0 : a[0].size();
  RatMat aug(rows, RatVec(cols + 1, Rat(0)));
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < cols; ++j) aug[i][j] = a[i][j];
    aug[i][cols] = b[i];
  }
  std::vector<int> pivots;
  rref(aug, pivots);
  for (int p : pivots)
    if (static_cast<size_t>(p) == cols) return std::nullopt;  // 0 = 1 row

  LinearSolution sol;
  sol.particular.assign(cols, Rat(0));
  std::vector<bool> is_pivot(cols, false);
  for (size_t r = 0; r < pivots.size(); ++r) {
    is_pivot[pivots[r]] = true;
    sol.particular[pivots[r]] = aug[r][cols];
  }
  for (size_t c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    RatVec v(cols, Rat(0));
    v[c] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -aug[r][c];
    sol.nullspace.push_back(std::move(v));
  }
  return sol;
}

std::vector<RatVec> rat_nullspace(const RatMat& a) {
  if (a.empty()) return {};
  auto sol = rat_solve(a, RatVec(a.size(), Rat(0)));
  return sol ? sol->nullspace : std::vector<RatVec>{};
}

std::vector<RatVec> standard_form_vertices(const RatMat& a, const RatVec& b) {
  const size_t cols = a.empty() ? 0 : a[0].size();
  const int r = rat_rank(a);
  std::set<RatVec> found;

  std::vector<size_t> subset;
  // Enumerate column subsets of size r; each nonsingular one yields at most
  // one basic solution.
  auto try_subset = [&]() {
    RatMat sub(a.size(), RatVec(subset.size(), Rat(0)));
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < subset.size(); ++j) sub[i][j] = a[i][subset[j]];
    auto sol = rat_solve(sub, b);
    if (!sol || !sol->nullspace.empty()) return;  // inconsistent or not a basis
    RatVec x(cols, Rat(0));
    for (size_t j = 0; j < subset.size(); ++j) {
      if (sol->particular[j] < 0) return;
      x[subset[j]] = sol->particular[j];
    }
    found.insert(std::move(x));
  };

  auto rec = [&](auto&& self, size_t start, int remaining) -> void {
    if (remaining == 0) {
      try_subset();
      return;
    }
    for (size_t c = start; c + remaining <= cols; ++c) {
      subset.push_back(c);
      self(self, c + 1, remaining - 1);
      subset.pop_back();
    }
  };
  rec(rec, 0, r);

  if (r == 0) {
    // A == 0: the only candidate basic solution is the origin.
    bool zero_ok = true;
    for (const Rat& v : b) zero_ok = zero_ok && v == 0;
    if (zero_ok) found.insert(RatVec(cols, Rat(0)));
  }
  return {found.begin(), found.end()};
}

bool standard_form_feasible(const RatMat& a, const RatVec& b) {
  const size_t m = a.size();
  const size_t k = m == 0 ? 0 : a[0].size();
  // Tableau [A | I | b] with artificial basis; phase-one objective
  // min sum(artificials), Bland's rule, exact arithmetic.
  RatMat t(m, RatVec(k + m + 1, Rat(0)));
  for (size_t i = 0; i < m; ++i) {
    Rat s = b[i] < 0 ? Rat(-1) : Rat(1);
    for (size_t j = 0; j < k; ++j) t[i][j] = s * a[i][j];
    t[i][k + i] = 1;
    t[i][k + m] = s * b[i];
  }
  RatVec red(k + m, Rat(0));  // reduced costs
  Rat obj(0);
  for (size_t j = 0; j < k; ++j)
    for (size_t i = 0; i < m; ++i) red[j] -= t[i][j];
  for (size_t i = 0; i < m; ++i) obj += t[i][k + m];
  std::vector<size_t> basis(m);
  for (size_t i = 0; i < m; ++i) basis[i] = k + i;

  for (;;) {
    size_t enter = k + m;
    for (size_t j = 0; j < k + m; ++j)
      if (red[j] < 0) { enter = j; break; }
    if (enter == k + m) break;
    size_t leave = m;
    for (size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      if (leave == m) { leave = i; continue; }
      Rat cur = t[i][k + m] / t[i][enter];
      Rat best = t[leave][k + m] / t[leave][enter];
      if (cur < best || (cur == best && basis[i] < basis[leave])) leave = i;
    }
    if (leave == m) break;  // unbounded direction; cannot happen in phase one
    Rat piv = t[leave][enter];
    for (auto& v : t[leave]) v /= piv;
    for (size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rat f = t[i][enter];
      for (size_t j = 0; j <= k + m; ++j) t[i][j] -= f * t[leave][j];
    }
    Rat rf = red[enter];
    if (rf != 0)
      for (size_t j = 0; j < k + m; ++j) red[j] -= rf * t[leave][j];
    obj += rf * t[leave][k + m];
    basis[leave] = enter;
  }
  return obj == 0;
}

bool in_convex_hull(const RatVec& p, const std::vector<RatVec>& points) {
  if (points.empty()) return false;
  const size_t dim = p.size();
  RatMat a(dim + 1, RatVec(points.size(), Rat(0)));
  RatVec b(dim + 1, Rat(0));
  for (size_t i = 0; i < points.size(); ++i) {
    for (size_t c = 0; c < dim; ++c) a[c][i] = points[i][c];
    a[dim][i] = 1;
  }
  for (size_t c = 0; c < dim; ++c) b[c] = p[c];
  b[dim] = 1;
  return standard_form_feasible(a, b);
}

std::vector<RatVec> extreme_points(std::vector<RatVec> points) {
  std::set<RatVec> uniq(points.begin(), points.end());
  std::vector<RatVec> distinct(uniq.begin(), uniq.end());
  std::vector<RatVec> out;
  for (size_t i = 0; i < distinct.size(); ++i) {
    std::vector<RatVec> others;
    for (size_t j = 0; j < distinct.size(); ++j)
      if (j != i) others.push_back(distinct[j]);
    if (others.empty() || !in_convex_hull(distinct[i], others)) out.push_back(distinct[i]);
  }
  return out;
}

std::optional<RatVec> convex_combination(const RatVec& target,
                                         const std::vector<RatVec>& points,
                                         size_t max_support) {
  if (points.empty()) return std::nullopt;
  const size_t dim = target.size();
  RatMat a(dim + 1, RatVec(points.size(), Rat(0)));
  RatVec b(dim + 1, Rat(0));
  for (size_t i = 0; i < points.size(); ++i) {
    for (size_t c = 0; c < dim; ++c) a[c][i] = points[i][c];
    a[dim][i] = 1;
  }
  for (size_t c = 0; c < dim; ++c) b[c] = target[c];
  b[dim] = 1;

  auto verts = standard_form_vertices(a, b);
  if (verts.empty()) return std::nullopt;
  // Relative-interior representative: coordinate i vanishes iff it vanishes
  // in every convex representation of the target.
  RatVec lambda(points.size(), Rat(0));
  for (const auto& v : verts)
    for (size_t i = 0; i < points.size(); ++i) lambda[i] += v[i];
  for (auto& x : lambda) x /= Rat(static_cast<long>(verts.size()));

  auto support_size = [&]() {
    size_t s = 0;
    for (const Rat& x : lambda) s += x > 0;
    return s;
  };

  // Caratheodory reduction: walk along affine dependencies of the supported
  // points until the support is small enough.
  while (support_size() > max_support) {
    std::vector<size_t> sup;
    for (size_t i = 0; i < points.size(); ++i)
      if (lambda[i] > 0) sup.push_back(i);
    RatMat m(dim + 1, RatVec(sup.size(), Rat(0)));
    for (size_t j = 0; j < sup.size(); ++j) {
      for (size_t c = 0; c < dim; ++c) m[c][j] = points[sup[j]][c];
      m[dim][j] = 1;
    }
    auto null_basis = rat_nullspace(m);
    if (null_basis.empty()) return std::nullopt;  // affinely independent, cannot shrink
    RatVec mu = null_basis.front();
    bool has_pos = false;
    for (const Rat& x : mu) has_pos = has_pos || x > 0;
    if (!has_pos)
      for (auto& x : mu) x = -x;
    Rat t(0);
    bool first = true;
    for (size_t j = 0; j < sup.size(); ++j) {
      if (mu[j] <= 0) continue;
      Rat cand = lambda[sup[j]] / mu[j];
      if (first || cand < t) { t = cand; first = false; }
    }
    for (size_t j = 0; j < sup.size(); ++j) lambda[sup[j]] -= t * mu[j];
  }
  return lambda;
}

}  // namespace bratteli
