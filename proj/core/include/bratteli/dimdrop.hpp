#pragma once

#include <vector>

#include "bratteli/algebra.hpp"
#include "bratteli/poly.hpp"
#include "bratteli/ratmat.hpp"

namespace bratteli {

// Continuous M_{pq}-valued functions on [0,1] whose endpoint values lie in
// M_p tensor 1_q (at 0) and 1_p tensor M_q (at 1).
struct DimensionDropAlgebra {
  Int p = 1;
  Int q = 1;
  bool prime = false;  // gcd(p, q) == 1

  Int fiber_dim() const { return p * q; }
  bool operator==(const DimensionDropAlgebra&) const = default;
};

// Errors: NonPositive.
DimensionDropAlgebra make_zpq(Int p, Int q);

// Matrix-valued piecewise polynomial with one shared breakpoint list;
// pieces[i] is a dim x dim matrix of polynomials, row-major.
struct PiecewiseMatrix {
  Int dim = 0;
  std::vector<Rat> breaks;
  std::vector<std::vector<Poly>> pieces;

  bool operator==(const PiecewiseMatrix&) const = default;
};

PiecewiseMatrix pm_make(Int dim, std::vector<Rat> breaks, std::vector<std::vector<Poly>> pieces);
// Constant function on [0,1].
PiecewiseMatrix pm_constant(const RatMat& value);
// Identity of size dim on [0,1].
PiecewiseMatrix pm_identity(Int dim);
// f times the identity of size dim, on f's domain.
PiecewiseMatrix pm_scalar(Int dim, const PiecewisePoly& f);
RatMat pm_eval(const PiecewiseMatrix& x, const Rat& t);
bool pm_is_continuous(const PiecewiseMatrix& x);
PiecewiseMatrix pm_add(const PiecewiseMatrix& x, const PiecewiseMatrix& y);
PiecewiseMatrix pm_mul(const PiecewiseMatrix& x, const PiecewiseMatrix& y);
// Transpose; coefficients are real rationals, so this is the adjoint.
PiecewiseMatrix pm_adjoint(const PiecewiseMatrix& x);
PiecewiseMatrix pm_scale(const PiecewiseMatrix& x, const Rat& s);
// Kronecker product (pointwise in t).
PiecewiseMatrix pm_kron(const PiecewiseMatrix& x, const PiecewiseMatrix& y);
// Normalized trace (1/dim) sum of diagonal entries, as a scalar function.
PiecewisePoly pm_normalized_trace(const PiecewiseMatrix& x);
// Entrywise composition x(inner(t)); same requirements as pw_compose.
PiecewiseMatrix pm_compose(const PiecewiseMatrix& x, const PiecewisePoly& inner);

// Membership of a fiber value in M_p tensor 1_q, respectively 1_p tensor
// M_q, inside M_{pq} with row index a*q + i. Exact.
bool in_left_corner(const RatMat& x, Int p, Int q);
bool in_right_corner(const RatMat& x, Int p, Int q);

// A diffuse full-support probability measure on [0,1], represented by its
// quantile function Q: continuous, strictly increasing, Q(0)=0, Q(1)=1.
struct QuantileMeasure {
  PiecewisePoly quantile;
};

// Errors: InvalidMeasure when Q fails any of the invariants above.
QuantileMeasure make_quantile(PiecewisePoly quantile);
// Q(t) = t.
QuantileMeasure lebesgue_measure();

struct DimDropElement {
  DimensionDropAlgebra algebra;
  PiecewiseMatrix value;
};

// Shape gate only (value must be fiber_dim square on some breakpoint list);
// the analytic invariants are check_element's. Errors: ShapeMismatch.
DimDropElement make_element(DimensionDropAlgebra algebra, PiecewiseMatrix value);
// Full invariant check: domain [0,1], continuity across breakpoints, and
// both endpoint memberships. Errors: ShapeMismatch (wrong matrix size).
ValidationReport check_element(const DimDropElement& e);

DimDropElement dd_add(const DimDropElement& x, const DimDropElement& y);
DimDropElement dd_mul(const DimDropElement& x, const DimDropElement& y);
DimDropElement dd_adjoint(const DimDropElement& x);
DimDropElement dd_scale(const DimDropElement& x, const Rat& s);
// f(t) times the identity; an element whenever f(0) = 0 or f is constant at
// the ends -- no check here, check_element decides.
DimDropElement scalar_element(const DimensionDropAlgebra& algebra, const PiecewisePoly& f);
DimDropElement constant_element(const DimensionDropAlgebra& algebra, const RatMat& value);
DimDropElement identity_element(const DimensionDropAlgebra& algebra);

// Exact value of the trace induced by mu: the normalized matrix trace of
// e(Q(t)) integrated over [0,1]. Errors: InvalidElement when check_element
// rejects e; IrrationalBreakpoint from the composition.
Rat trace_eval(const DimDropElement& e, const QuantileMeasure& mu);

// The automorphism sigma(e)(t) = e(Q(t)). Trace contract:
// trace_eval(e, mu) == trace_eval(sigma(e), lebesgue_measure()).
// Errors: InvalidElement, IrrationalBreakpoint.
DimDropElement apply_reparametrization(const DimDropElement& e, const QuantileMeasure& mu);

// Element written as a sum of elementary tensors a_k(t) (x) b_k(t) with
// a_k p x p and b_k q x q: the sub-representation on which the tensor
// joint-embedding formulas are defined.
struct TensorTerm {
  PiecewiseMatrix left;
  PiecewiseMatrix right;
};

struct TaggedElement {
  DimensionDropAlgebra algebra;
  std::vector<TensorTerm> terms;
};

// Validates term dimensions (left p x p, right q x q). Errors: ShapeMismatch.
TaggedElement make_tagged(DimensionDropAlgebra algebra, std::vector<TensorTerm> terms);
TaggedElement identity_tagged(const DimensionDropAlgebra& algebra);
// The concrete element sum_k kron(a_k, b_k).
DimDropElement expand_tagged(const TaggedElement& a);

// Joint embedding of Z_{p,q} and Z_{p',q'} into Z_{pp',qq'}: the first
// factor lands as (a1 (x) 1_{p'}) (x) (a2 (x) 1_{q'}), the second as
// (1_p (x) b1) (x) (1_q (x) b2). The target trace is carried by the input
// measure pair, evaluated by product_trace_eval.
struct JepTensorResult {
  DimensionDropAlgebra target;
  QuantileMeasure mu_a;
  QuantileMeasure mu_b;
};

// Errors: NotCoprime unless {p, q, p', q'} are pairwise coprime (which
// makes the target prime).
JepTensorResult jep_tensor(const DimensionDropAlgebra& a, const QuantileMeasure& mu_a,
                           const DimensionDropAlgebra& b, const QuantileMeasure& mu_b);
TaggedElement jep_embed_a(const TaggedElement& x, const DimensionDropAlgebra& a,
                          const DimensionDropAlgebra& b);
TaggedElement jep_embed_b(const TaggedElement& x, const DimensionDropAlgebra& a,
                          const DimensionDropAlgebra& b);

// Sums of products (image of a_k) (image of b_k): the subspace on which the
// joint trace evaluates in closed form.
struct ProductTerm {
  TaggedElement from_a;
  TaggedElement from_b;
};

struct ProductElement {
  DimensionDropAlgebra a;
  DimensionDropAlgebra b;
  std::vector<ProductTerm> terms;
};

// sum_k trace(a_k, mu_a) * trace(b_k, mu_b): multiplicative on commuting
// images, and restricting to one factor recovers that factor's trace.
Rat product_trace_eval(const ProductElement& x, const QuantileMeasure& mu_a,
                       const QuantileMeasure& mu_b);
// The concrete target element sum_k embed_a(a_k) * embed_b(b_k).
DimDropElement expand_product(const ProductElement& x);

}  // namespace bratteli
