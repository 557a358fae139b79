#include "bratteli/dimdrop.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "bratteli/error.hpp"

namespace bratteli {

DimensionDropAlgebra make_zpq(Int p, Int q) {
  if (p < 1 || q < 1) fail(Errc::NonPositive, "dimension-drop parameters must be positive");
  return {p, q, std::gcd(p, q) == 1};
}

namespace {

size_t locate_piece(const std::vector<Rat>& breaks, const Rat& t) {
  size_t i = breaks.size() - 1;
  while (i > 0 && breaks[i] > t) --i;
  return std::min(i, breaks.size() - 2);
}

RatMat zero_mat(Int dim) {
  return RatMat(static_cast<size_t>(dim), RatVec(static_cast<size_t>(dim), Rat(0)));
}

PiecewiseMatrix pm_refine(const PiecewiseMatrix& x, const std::vector<Rat>& extra) {
  std::vector<Rat> merged = x.breaks;
  for (const Rat& b : extra) {
    if (b < x.breaks.front() || b > x.breaks.back())
      fail(Errc::ShapeMismatch, "refinement point outside the domain");
    merged.push_back(b);
  }
  std::sort(merged.begin(), merged.end());
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  std::vector<std::vector<Poly>> pieces;
  for (size_t i = 0; i + 1 < merged.size(); ++i)
    pieces.push_back(x.pieces[locate_piece(x.breaks, merged[i])]);
  return pm_make(x.dim, std::move(merged), std::move(pieces));
}

std::pair<PiecewiseMatrix, PiecewiseMatrix> aligned(const PiecewiseMatrix& x,
                                                    const PiecewiseMatrix& y) {
  if (x.breaks.front() != y.breaks.front() || x.breaks.back() != y.breaks.back())
    fail(Errc::ShapeMismatch, "piecewise operands live on different domains");
  return {pm_refine(x, y.breaks), pm_refine(y, x.breaks)};
}

}  // namespace

PiecewiseMatrix pm_make(Int dim, std::vector<Rat> breaks, std::vector<std::vector<Poly>> pieces) {
  if (dim < 1) fail(Errc::NonPositive, "matrix dimension must be positive");
  if (breaks.size() < 2 || pieces.size() + 1 != breaks.size())
    fail(Errc::ShapeMismatch, "need one matrix piece per breakpoint interval");
  for (size_t i = 0; i + 1 < breaks.size(); ++i)
    if (!(breaks[i] < breaks[i + 1]))
      fail(Errc::ShapeMismatch, "breakpoints must be strictly increasing");
  for (const std::vector<Poly>& piece : pieces)
    if (piece.size() != static_cast<size_t>(dim * dim))
      fail(Errc::ShapeMismatch, "matrix piece has the wrong number of entries");
  return PiecewiseMatrix{dim, std::move(breaks), std::move(pieces)};
}

PiecewiseMatrix pm_constant(const RatMat& value) {
  Int dim = static_cast<Int>(value.size());
  if (dim < 1) fail(Errc::NonPositive, "matrix dimension must be positive");
  std::vector<Poly> piece;
  for (const RatVec& row : value) {
    if (row.size() != static_cast<size_t>(dim))
      fail(Errc::ShapeMismatch, "constant value must be square");
    for (const Rat& v : row) piece.push_back(poly_constant(v));
  }
  return pm_make(dim, {Rat(0), Rat(1)}, {std::move(piece)});
}

PiecewiseMatrix pm_identity(Int dim) { return pm_constant(rat_identity(static_cast<int>(dim))); }

PiecewiseMatrix pm_scalar(Int dim, const PiecewisePoly& f) {
  if (dim < 1) fail(Errc::NonPositive, "matrix dimension must be positive");
  std::vector<std::vector<Poly>> pieces;
  for (const Poly& p : f.pieces) {
    std::vector<Poly> piece(static_cast<size_t>(dim * dim));
    for (Int d = 0; d < dim; ++d) piece[static_cast<size_t>(d * dim + d)] = p;
    pieces.push_back(std::move(piece));
  }
  return pm_make(dim, f.breaks, std::move(pieces));
}

RatMat pm_eval(const PiecewiseMatrix& x, const Rat& t) {
  if (t < x.breaks.front() || t > x.breaks.back())
    fail(Errc::ShapeMismatch, "evaluation point outside the domain");
  const std::vector<Poly>& piece = x.pieces[locate_piece(x.breaks, t)];
  RatMat out = zero_mat(x.dim);
  for (Int r = 0; r < x.dim; ++r)
    for (Int c = 0; c < x.dim; ++c)
      out[static_cast<size_t>(r)][static_cast<size_t>(c)] =
          poly_eval(piece[static_cast<size_t>(r * x.dim + c)], t);
  return out;
}

bool pm_is_continuous(const PiecewiseMatrix& x) {
  for (size_t i = 1; i < x.pieces.size(); ++i)
    for (size_t e = 0; e < x.pieces[i].size(); ++e)
      if (poly_eval(x.pieces[i - 1][e], x.breaks[i]) != poly_eval(x.pieces[i][e], x.breaks[i]))
        return false;
  return true;
}

PiecewiseMatrix pm_add(const PiecewiseMatrix& x, const PiecewiseMatrix& y) {
  if (x.dim != y.dim) fail(Errc::ShapeMismatch, "matrix sum dimensions do not match");
  auto [a, b] = aligned(x, y);
  for (size_t i = 0; i < a.pieces.size(); ++i)
    for (size_t e = 0; e < a.pieces[i].size(); ++e)
      a.pieces[i][e] = poly_add(a.pieces[i][e], b.pieces[i][e]);
  return a;
}

PiecewiseMatrix pm_mul(const PiecewiseMatrix& x, const PiecewiseMatrix& y) {
  if (x.dim != y.dim) fail(Errc::ShapeMismatch, "matrix product dimensions do not match");
  auto [a, b] = aligned(x, y);
  const Int n = a.dim;
  std::vector<std::vector<Poly>> pieces;
  for (size_t i = 0; i < a.pieces.size(); ++i) {
    std::vector<Poly> piece(static_cast<size_t>(n * n));
    for (Int r = 0; r < n; ++r)
      for (Int c = 0; c < n; ++c) {
        Poly acc;
        for (Int k = 0; k < n; ++k)
          acc = poly_add(acc, poly_mul(a.pieces[i][static_cast<size_t>(r * n + k)],
                                       b.pieces[i][static_cast<size_t>(k * n + c)]));
        piece[static_cast<size_t>(r * n + c)] = std::move(acc);
      }
    pieces.push_back(std::move(piece));
  }
  return pm_make(n, a.breaks, std::move(pieces));
}

PiecewiseMatrix pm_adjoint(const PiecewiseMatrix& x) {
  PiecewiseMatrix out = x;
  for (std::vector<Poly>& piece : out.pieces)
    for (Int r = 0; r < x.dim; ++r)
      for (Int c = r + 1; c < x.dim; ++c)
        std::swap(piece[static_cast<size_t>(r * x.dim + c)],
                  piece[static_cast<size_t>(c * x.dim + r)]);
  return out;
}

PiecewiseMatrix pm_scale(const PiecewiseMatrix& x, const Rat& s) {
  PiecewiseMatrix out = x;
  for (std::vector<Poly>& piece : out.pieces)
    for (Poly& p : piece) p = poly_scale(p, s);
  return out;
}

PiecewiseMatrix pm_kron(const PiecewiseMatrix& x, const PiecewiseMatrix& y) {
  auto [a, b] = aligned(x, y);
  const Int m = a.dim, n = b.dim, dim = m * n;
  std::vector<std::vector<Poly>> pieces;
  for (size_t i = 0; i < a.pieces.size(); ++i) {
    std::vector<Poly> piece(static_cast<size_t>(dim * dim));
    for (Int r1 = 0; r1 < m; ++r1)
      for (Int c1 = 0; c1 < m; ++c1)
        for (Int r2 = 0; r2 < n; ++r2)
          for (Int c2 = 0; c2 < n; ++c2)
            piece[static_cast<size_t>((r1 * n + r2) * dim + (c1 * n + c2))] =
                poly_mul(a.pieces[i][static_cast<size_t>(r1 * m + c1)],
                         b.pieces[i][static_cast<size_t>(r2 * n + c2)]);
    pieces.push_back(std::move(piece));
  }
  return pm_make(dim, a.breaks, std::move(pieces));
}

PiecewisePoly pm_normalized_trace(const PiecewiseMatrix& x) {
  std::vector<Poly> pieces;
  for (const std::vector<Poly>& piece : x.pieces) {
    Poly acc;
    for (Int d = 0; d < x.dim; ++d)
      acc = poly_add(acc, piece[static_cast<size_t>(d * x.dim + d)]);
    pieces.push_back(poly_scale(acc, Rat(1) / Rat(static_cast<long>(x.dim))));
  }
  return pw_make(x.breaks, std::move(pieces));
}

PiecewiseMatrix pm_compose(const PiecewiseMatrix& x, const PiecewisePoly& inner) {
  std::vector<PiecewisePoly> entries;
  for (Int r = 0; r < x.dim; ++r)
    for (Int c = 0; c < x.dim; ++c) {
      std::vector<Poly> entry;
      for (const std::vector<Poly>& piece : x.pieces)
        entry.push_back(piece[static_cast<size_t>(r * x.dim + c)]);
      entries.push_back(pw_compose(pw_make(x.breaks, std::move(entry)), inner));
    }
  // Composition breakpoints depend only on the two breakpoint lists, so all
  // entries agree on them.
  for (const PiecewisePoly& e : entries)
    if (e.breaks != entries.front().breaks)
      fail(Errc::ContractViolation, "entrywise composition produced mismatched breakpoints");
  std::vector<std::vector<Poly>> pieces(entries.front().pieces.size(),
                                        std::vector<Poly>(static_cast<size_t>(x.dim * x.dim)));
  for (size_t e = 0; e < entries.size(); ++e)
    for (size_t i = 0; i < pieces.size(); ++i) pieces[i][e] = entries[e].pieces[i];
  return pm_make(x.dim, entries.front().breaks, std::move(pieces));
}

bool in_left_corner(const RatMat& x, Int p, Int q) {
  for (Int a = 0; a < p; ++a)
    for (Int b = 0; b < p; ++b)
      for (Int i = 0; i < q; ++i)
        for (Int j = 0; j < q; ++j) {
          const Rat& v = x[static_cast<size_t>(a * q + i)][static_cast<size_t>(b * q + j)];
          if (i != j && v != 0) return false;
          if (i == j && v != x[static_cast<size_t>(a * q)][static_cast<size_t>(b * q)])
            return false;
        }
  return true;
}

bool in_right_corner(const RatMat& x, Int p, Int q) {
  for (Int a = 0; a < p; ++a)
    for (Int b = 0; b < p; ++b)
      for (Int i = 0; i < q; ++i)
        for (Int j = 0; j < q; ++j) {
          const Rat& v = x[static_cast<size_t>(a * q + i)][static_cast<size_t>(b * q + j)];
          if (a != b && v != 0) return false;
          if (a == b && v != x[static_cast<size_t>(i)][static_cast<size_t>(j)]) return false;
        }
  return true;
}

QuantileMeasure make_quantile(PiecewisePoly quantile) {
  if (quantile.breaks.empty() || quantile.breaks.front() != 0 || quantile.breaks.back() != 1)
    fail(Errc::InvalidMeasure, "quantile function must be defined on [0,1]");
  if (!pw_is_continuous(quantile))
    fail(Errc::InvalidMeasure, "quantile function must be continuous");
  for (size_t i = 0; i < quantile.pieces.size(); ++i) {
    Poly d = poly_derive(quantile.pieces[i]);
    if (poly_is_zero(d) || !poly_nonneg_on(d, quantile.breaks[i], quantile.breaks[i + 1]))
      fail(Errc::InvalidMeasure, "quantile function must be strictly increasing");
  }
  if (pw_eval(quantile, Rat(0)) != 0 || pw_eval(quantile, Rat(1)) != 1)
    fail(Errc::InvalidMeasure, "quantile function must map 0 to 0 and 1 to 1");
  return QuantileMeasure{std::move(quantile)};
}

QuantileMeasure lebesgue_measure() {
  return make_quantile(pw_poly(Rat(0), Rat(1), poly_make({Rat(0), Rat(1)})));
}

DimDropElement make_element(DimensionDropAlgebra algebra, PiecewiseMatrix value) {
  if (value.dim != algebra.fiber_dim())
    fail(Errc::ShapeMismatch, "element values must be " + std::to_string(algebra.fiber_dim()) +
                                  "-dimensional matrices");
  return DimDropElement{algebra, std::move(value)};
}

ValidationReport check_element(const DimDropElement& e) {
  if (e.value.dim != e.algebra.fiber_dim())
    fail(Errc::ShapeMismatch, "element values must be " +
                                  std::to_string(e.algebra.fiber_dim()) +
                                  "-dimensional matrices");
  if (e.value.breaks.size() < 2 || e.value.pieces.size() + 1 != e.value.breaks.size())
    return {false, "element function has no pieces"};
  if (e.value.breaks.front() != 0 || e.value.breaks.back() != 1)
    return {false, "element functions must be defined on [0,1]"};
  if (!pm_is_continuous(e.value)) return {false, "element function jumps at a breakpoint"};
  if (!in_left_corner(pm_eval(e.value, Rat(0)), e.algebra.p, e.algebra.q))
    return {false, "value at 0 must be of the form x (x) 1"};
  if (!in_right_corner(pm_eval(e.value, Rat(1)), e.algebra.p, e.algebra.q))
    return {false, "value at 1 must be of the form 1 (x) y"};
  return {true, "ok"};
}

namespace {

void require_same_algebra(const DimDropElement& x, const DimDropElement& y) {
  if (!(x.algebra == y.algebra))
    fail(Errc::ShapeMismatch, "operands belong to different dimension-drop algebras");
}

}  // namespace

DimDropElement dd_add(const DimDropElement& x, const DimDropElement& y) {
  require_same_algebra(x, y);
  return {x.algebra, pm_add(x.value, y.value)};
}

DimDropElement dd_mul(const DimDropElement& x, const DimDropElement& y) {
  require_same_algebra(x, y);
  return {x.algebra, pm_mul(x.value, y.value)};
}

DimDropElement dd_adjoint(const DimDropElement& x) { return {x.algebra, pm_adjoint(x.value)}; }

DimDropElement dd_scale(const DimDropElement& x, const Rat& s) {
  return {x.algebra, pm_scale(x.value, s)};
}

DimDropElement scalar_element(const DimensionDropAlgebra& algebra, const PiecewisePoly& f) {
  return make_element(algebra, pm_scalar(algebra.fiber_dim(), f));
}

DimDropElement constant_element(const DimensionDropAlgebra& algebra, const RatMat& value) {
  return make_element(algebra, pm_constant(value));
}

DimDropElement identity_element(const DimensionDropAlgebra& algebra) {
  return constant_element(algebra, rat_identity(static_cast<int>(algebra.fiber_dim())));
}

Rat trace_eval(const DimDropElement& e, const QuantileMeasure& mu) {
  ValidationReport report = check_element(e);
  if (!report.ok) fail(Errc::InvalidElement, report.detail);
  return pw_integral(pw_compose(pm_normalized_trace(e.value), mu.quantile));
}

DimDropElement apply_reparametrization(const DimDropElement& e, const QuantileMeasure& mu) {
  ValidationReport report = check_element(e);
  if (!report.ok) fail(Errc::InvalidElement, report.detail);
  return {e.algebra, pm_compose(e.value, mu.quantile)};
}

TaggedElement make_tagged(DimensionDropAlgebra algebra, std::vector<TensorTerm> terms) {
  for (const TensorTerm& term : terms) {
    if (term.left.dim != algebra.p || term.right.dim != algebra.q)
      fail(Errc::ShapeMismatch, "tensor factors must be p- and q-dimensional");
  }
  return TaggedElement{algebra, std::move(terms)};
}

TaggedElement identity_tagged(const DimensionDropAlgebra& algebra) {
  return make_tagged(algebra, {{pm_identity(algebra.p), pm_identity(algebra.q)}});
}

DimDropElement expand_tagged(const TaggedElement& a) {
  PiecewiseMatrix acc = pm_constant(zero_mat(a.algebra.fiber_dim()));
  for (const TensorTerm& term : a.terms) acc = pm_add(acc, pm_kron(term.left, term.right));
  return make_element(a.algebra, std::move(acc));
}

JepTensorResult jep_tensor(const DimensionDropAlgebra& a, const QuantileMeasure& mu_a,
                           const DimensionDropAlgebra& b, const QuantileMeasure& mu_b) {
  const Int values[] = {a.p, a.q, b.p, b.q};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (std::gcd(values[i], values[j]) != 1)
        fail(Errc::NotCoprime, "joint embedding needs pairwise coprime fiber parameters");
  DimensionDropAlgebra target = make_zpq(checked_mul(a.p, b.p), checked_mul(a.q, b.q));
  return {target, mu_a, mu_b};
}

TaggedElement jep_embed_a(const TaggedElement& x, const DimensionDropAlgebra& a,
                          const DimensionDropAlgebra& b) {
  if (!(x.algebra == a)) fail(Errc::ShapeMismatch, "element does not belong to the first factor");
  DimensionDropAlgebra target = make_zpq(checked_mul(a.p, b.p), checked_mul(a.q, b.q));
  std::vector<TensorTerm> terms;
  for (const TensorTerm& t : x.terms)
    terms.push_back({pm_kron(t.left, pm_identity(b.p)), pm_kron(t.right, pm_identity(b.q))});
  return make_tagged(target, std::move(terms));
}

TaggedElement jep_embed_b(const TaggedElement& x, const DimensionDropAlgebra& a,
                          const DimensionDropAlgebra& b) {
  if (!(x.algebra == b)) fail(Errc::ShapeMismatch, "element does not belong to the second factor");
  DimensionDropAlgebra target = make_zpq(checked_mul(a.p, b.p), checked_mul(a.q, b.q));
  std::vector<TensorTerm> terms;
  for (const TensorTerm& t : x.terms)
    terms.push_back({pm_kron(pm_identity(a.p), t.left), pm_kron(pm_identity(a.q), t.right)});
  return make_tagged(target, std::move(terms));
}

Rat product_trace_eval(const ProductElement& x, const QuantileMeasure& mu_a,
                       const QuantileMeasure& mu_b) {
  Rat total(0);
  for (const ProductTerm& term : x.terms) {
    if (!(term.from_a.algebra == x.a) || !(term.from_b.algebra == x.b))
      fail(Errc::ShapeMismatch, "product term factors belong to the wrong algebras");
    total += trace_eval(expand_tagged(term.from_a), mu_a) *
             trace_eval(expand_tagged(term.from_b), mu_b);
  }
  return total;
}

DimDropElement expand_product(const ProductElement& x) {
  DimensionDropAlgebra target = make_zpq(checked_mul(x.a.p, x.b.p), checked_mul(x.a.q, x.b.q));
  DimDropElement acc = make_element(target, pm_constant(zero_mat(target.fiber_dim())));
  for (const ProductTerm& term : x.terms) {
    DimDropElement lhs = expand_tagged(jep_embed_a(term.from_a, x.a, x.b));
    DimDropElement rhs = expand_tagged(jep_embed_b(term.from_b, x.a, x.b));
    acc = dd_add(acc, dd_mul(lhs, rhs));
  }
  return acc;
}

}  // namespace bratteli
