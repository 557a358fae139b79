#pragma once

#include <optional>
#include <vector>

#include "bratteli/algebra.hpp"
#include "bratteli/ratmat.hpp"

namespace bratteli {

// A polytope of trace weight vectors inside the standard simplex, stored by
// its exact extreme points (lexicographically sorted). The inequality form is
// optional; when present it describes the same set inside the affine hull.
struct TracePolytope {
  int width = 0;
  std::vector<RatVec> vertices;

  struct HalfSpace {
    RatVec normal;
    Rat offset;  // normal . x <= offset
  };
  struct Equation {
    RatVec normal;
    Rat offset;  // normal . x == offset
  };
  std::optional<std::vector<HalfSpace>> facets;
  std::optional<std::vector<Equation>> hull_equations;

  bool empty() const { return vertices.empty(); }
  bool is_point() const { return vertices.size() == 1; }
  bool contains(const RatVec& point) const { return in_convex_hull(point, vertices); }
};

// Exact vertex set of { Phi_*(traces on B) } intersect { Psi_*(traces on C) }
// for unital embeddings Phi, Psi out of the same source. Width is capped at
// `width_budget` (BudgetExceeded beyond it); the default matches the library
// wide cap of 6.
TracePolytope preserved_trace_polytope(const BratteliMap& phi, const BratteliMap& psi,
                                       int width_budget = 6);

// Fills in facets/hull_equations for a nonempty polytope (exact; intended for
// the same desk scale as the rest of the module).
void compute_facets(TracePolytope& polytope);

// All traces on the target that push forward to `source_trace`, as a polytope
// in target weight coordinates (may be empty).
std::vector<RatVec> fiber_vertices(const BratteliMap& map, const RationalTrace& source_trace);

// The relative-interior representative of the fiber (average of its
// vertices); nullopt when the fiber is empty. Every strictly positive
// coordinate pattern achievable on the fiber is strictly positive here.
std::optional<RationalTrace> fiber_interior_point(const BratteliMap& map,
                                                  const RationalTrace& source_trace);

// l1 diameter of a finite point set (max over pairs).
Rat l1_diameter(const std::vector<RatVec>& points);

}  // namespace bratteli
