#include "bratteli/amalgam.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace bratteli {

namespace {

void validate_problem(const TracedProblem& p, bool need_equal_width) {
  for (const auto& [map, src, tgt, name] :
       {std::tuple{&p.phi, &p.A, &p.B, "phi"}, std::tuple{&p.psi, &p.A, &p.C, "psi"}}) {
    if (map->source != *src || map->target != *tgt)
      fail(Errc::ShapeMismatch, std::string(name) + " endpoints do not match A/B/C");
    auto v = validate_embedding(*map);
    if (!v.ok) fail(Errc::InvalidMap, std::string(name) + ": " + v.detail);
    if (!map->unital) fail(Errc::NonUnitalMap, std::string(name) + " must be unital");
  }
  if (p.alpha.width() != p.A.width() || p.beta.width() != p.B.width() ||
      p.gamma.width() != p.C.width())
    fail(Errc::WidthMismatch, "trace widths do not match their algebras");
  if (need_equal_width && (p.A.width() != p.B.width() || p.A.width() != p.C.width()))
    fail(Errc::WidthMismatch, "A, B, C must share one width, got " +
                                  std::to_string(p.A.width()) + ", " +
                                  std::to_string(p.B.width()) + ", " +
                                  std::to_string(p.C.width()));
  for (const auto& [trace, name] : {std::pair{&p.alpha, "alpha"}, std::pair{&p.beta, "beta"},
                                    std::pair{&p.gamma, "gamma"}}) {
    if (!is_interior(*trace))
      fail(Errc::NotInterior, std::string(name) + " must have strictly positive weights");
  }
  for (const auto& [map, trace, name] :
       {std::tuple{&p.phi, &p.beta, "phi"}, std::tuple{&p.psi, &p.gamma, "psi"}}) {
    RationalTrace push = pushforward_trace(*map, *trace);
    for (int j = 0; j < p.alpha.width(); ++j)
      if (push.weights[j] != p.alpha.weights[j])
        fail(Errc::NotTracePreserving,
             std::string(name) + " pushes the trace to " + rat_str(push.weights[j]) +
                 " at summand " + std::to_string(j) + ", distinguished trace has " +
                 rat_str(p.alpha.weights[j]));
  }
}

}  // namespace

bool amalgam_equations_hold(const TracedProblem& p, const MatrixAmalgamSolution& sol,
                            std::string* why) {
  auto report = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  const auto& l = p.B.summands;
  const auto& k = p.C.summands;
  if (sol.s.size() != l.size() || sol.r.size() != k.size())
    return report("solution shape does not match B/C widths");
  Int sumB = 0, sumC = 0;
  for (size_t i = 0; i < l.size(); ++i) sumB = checked_add(sumB, checked_mul(l[i], sol.s[i]));
  for (size_t i = 0; i < k.size(); ++i) sumC = checked_add(sumC, checked_mul(k[i], sol.r[i]));
  if (sumB != sol.N || sumC != sol.N)
    return report("size equation fails: sum l_i s_i = " + std::to_string(sumB) +
                  ", sum k_i r_i = " + std::to_string(sumC) + ", N = " + std::to_string(sol.N));
  for (size_t j = 0; j < l.size(); ++j)
    if (p.beta.weights[j] * rat_of(sol.N, 1) != rat_of(checked_mul(l[j], sol.s[j]), 1))
      return report("B trace equation fails at summand " + std::to_string(j));
  for (size_t j = 0; j < k.size(); ++j)
    if (p.gamma.weights[j] * rat_of(sol.N, 1) != rat_of(checked_mul(k[j], sol.r[j]), 1))
      return report("C trace equation fails at summand " + std::to_string(j));
  for (int j = 0; j < p.A.width(); ++j) {
    Int viaB = 0, viaC = 0;
    for (size_t i = 0; i < l.size(); ++i)
      viaB = checked_add(viaB, checked_mul(p.phi.mult[i][j], sol.s[i]));
    for (size_t i = 0; i < k.size(); ++i)
      viaC = checked_add(viaC, checked_mul(p.psi.mult[i][j], sol.r[i]));
    if (viaB != viaC)
      return report("composite columns differ at source summand " + std::to_string(j));
  }
  return true;
}

MatrixAmalgamSolution solve_matrix_amalgam(const TracedProblem& p) {
  validate_problem(p, /*need_equal_width=*/true);
  const int n = p.B.width();
  const auto& l = p.B.summands;
  const auto& k = p.C.summands;
  const auto& b = p.beta.weights;
  const auto& c = p.gamma.weights;

  // One-parameter family: s_i = (b_i l_n / b_n l_i) s_n and
  // r_i = (c_i l_n / k_i b_n) s_n. The least positive integer choice of s_n
  // clears every denominator at once.
  std::vector<Rat> s_ratio(n), r_ratio(n);
  for (int i = 0; i < n; ++i) {
    s_ratio[i] = (b[i] * rat_of(l[n - 1], l[i])) / b[n - 1];
    r_ratio[i] = (c[i] * rat_of(l[n - 1], k[i])) / b[n - 1];
  }
  std::vector<Rat> all = s_ratio;
  all.insert(all.end(), r_ratio.begin(), r_ratio.end());
  const Int s_n = to_int(den_lcm(all));

  MatrixAmalgamSolution sol;
  sol.s.resize(n);
  sol.r.resize(n);
  for (int i = 0; i < n; ++i) {
    Rat si = s_ratio[i] * rat_of(s_n, 1);
    Rat ri = r_ratio[i] * rat_of(s_n, 1);
    if (si.get_den() != 1 || ri.get_den() != 1)
      fail(Errc::ContractViolation, "solver scaling did not clear denominators");
    sol.s[i] = to_int(si.get_num());
    sol.r[i] = to_int(ri.get_num());
  }
  Int N = 0;
  for (int i = 0; i < n; ++i) N = checked_add(N, checked_mul(l[i], sol.s[i]));
  sol.N = N;

  std::string why;
  if (!amalgam_equations_hold(p, sol, &why))
    fail(Errc::ContractViolation, "solver postcondition failed: " + why);
  return sol;
}

AmalgamResult amalgamate_width_n(const TracedProblem& p, int width_budget) {
  validate_problem(p, /*need_equal_width=*/true);
  const int n = p.A.width();

  AmalgamResult out;
  out.preserved = preserved_trace_polytope(p.phi, p.psi, width_budget);
  if (out.preserved.empty())
    fail(Errc::TraceNotPreservable, "no trace on the source is preserved by both maps");
  if (!out.preserved.contains(p.alpha.weights))
    fail(Errc::TraceNotPreservable,
         "the distinguished trace is not in the preserved polytope");

  // alpha as a positive combination of at most n polytope vertices
  // (repetition of support entries pads the list up to width n).
  auto lambda = convex_combination(p.alpha.weights, out.preserved.vertices, n);
  if (!lambda) fail(Errc::TraceNotPreservable, "no convex representation of the trace");
  std::vector<size_t> support;
  for (size_t i = 0; i < lambda->size(); ++i)
    if ((*lambda)[i] > 0) support.push_back(i);

  std::vector<size_t> chosen = support;  // indices into preserved.vertices
  std::vector<Rat> weight;
  for (size_t i : support) weight.push_back((*lambda)[i]);
  while (static_cast<int>(chosen.size()) < n) {
    // duplicate the first support vertex, splitting its weight
    chosen.push_back(support[0]);
    weight.push_back(Rat(0));
  }
  {
    // split weight[0] across its duplicates evenly
    int copies = 1 + static_cast<int>(chosen.size() - support.size());
    Rat share = weight[0] / copies;
    weight[0] = share;
    for (size_t i = support.size(); i < chosen.size(); ++i) weight[i] = share;
  }

  // Interior fiber representatives over each vertex.
  std::vector<RationalTrace> yB, yC;
  for (size_t idx = 0; idx < chosen.size(); ++idx) {
    RationalTrace v{out.preserved.vertices[chosen[idx]]};
    auto fb = fiber_interior_point(p.phi, v);
    auto fc = fiber_interior_point(p.psi, v);
    if (!fb || !fc)
      fail(Errc::FiberInfeasible, "polytope vertex has no trace preimage");  // unreachable
    yB.push_back(*fb);
    yC.push_back(*fc);
  }

  // Shrink toward the distinguished traces until the corrected fibers are
  // interior: tau_i = (1-eta) alpha + eta v_i, fibers beta_i = (1-eta) beta
  // + eta y_i + correction, where the correction resolves
  // sum delta_i beta_i == beta exactly and pushes to zero.
  for (int halving = 1; halving <= 64; ++halving) {
    Rat eta = rat_of(1, 1) / (Rat(1) << halving);
    std::vector<RatVec> tau(chosen.size());
    std::vector<RationalTrace> betas(chosen.size()), gammas(chosen.size());
    for (size_t i = 0; i < chosen.size(); ++i) {
      const RatVec& v = out.preserved.vertices[chosen[i]];
      tau[i].resize(n);
      for (int c = 0; c < n; ++c)
        tau[i][c] = (1 - eta) * p.alpha.weights[c] + eta * v[c];
    }
    auto correct = [&](const RationalTrace& base, const std::vector<RationalTrace>& y,
                       std::vector<RationalTrace>& fixed) {
      const size_t w = base.weights.size();
      RatVec mix(w, Rat(0));
      for (size_t i = 0; i < chosen.size(); ++i)
        for (size_t c = 0; c < w; ++c)
          mix[c] += weight[i] * ((1 - eta) * base.weights[c] + eta * y[i].weights[c]);
      bool interior = true;
      for (size_t i = 0; i < chosen.size(); ++i) {
        RatVec f(w);
        for (size_t c = 0; c < w; ++c) {
          f[c] = (1 - eta) * base.weights[c] + eta * y[i].weights[c] +
                 (base.weights[c] - mix[c]);
          interior = interior && f[c] > 0;
        }
        fixed[i] = RationalTrace{std::move(f)};
      }
      return interior;
    };
    if (!correct(p.beta, yB, betas) || !correct(p.gamma, yC, gammas)) continue;

    // Solve per vertex and assemble D.
    out.tau = tau;
    out.solves.clear();
    std::vector<Int> sizes;
    std::vector<std::vector<Int>> multB, multC;
    for (size_t i = 0; i < chosen.size(); ++i) {
      TracedProblem sub{p.A,    RationalTrace{tau[i]}, p.B, betas[i],
                        p.phi,  p.C,                   gammas[i], p.psi};
      MatrixAmalgamSolution sol = solve_matrix_amalgam(sub);
      sizes.push_back(sol.N);
      multB.push_back(sol.s);
      multC.push_back(sol.r);
      out.solves.push_back(std::move(sol));
    }
    out.D = make_algebra(sizes);
    out.psiB = make_embedding(p.B, out.D, std::move(multB));
    out.psiC = make_embedding(p.C, out.D, std::move(multC));
    out.delta = make_trace(weight);

    // Exact postconditions.
    if (compose(p.phi, out.psiB) != compose(p.psi, out.psiC))
      fail(Errc::ContractViolation, "amalgam composites differ");
    if (!is_trace_preserving(out.psiB, p.beta, out.delta) ||
        !is_trace_preserving(out.psiC, p.gamma, out.delta))
      fail(Errc::ContractViolation, "amalgam legs are not trace-preserving");
    if (!is_interior(out.delta)) fail(Errc::ContractViolation, "amalgam trace not interior");
    return out;
  }
  fail(Errc::FiberInfeasible, "no interior fiber system found while shrinking toward the trace");
}

namespace {

// Non-negative integer rows u with sum_i u_i * sizes_i == total, enumerated
// lexicographically.
void enumerate_rows(const std::vector<Int>& sizes, Int total, std::vector<Int>& row,
                    size_t at, std::vector<std::vector<Int>>& out, Int& work, Int work_cap) {
  if (++work > work_cap) fail(Errc::BudgetExceeded, "amalgam search budget exhausted");
  if (at + 1 == sizes.size()) {
    if (total % sizes[at] == 0) {
      row[at] = total / sizes[at];
      out.push_back(row);
    }
    return;
  }
  for (Int c = 0; c * sizes[at] <= total; ++c) {
    row[at] = c;
    enumerate_rows(sizes, total - c * sizes[at], row, at + 1, out, work, work_cap);
  }
}

}  // namespace

BruteforceOutcome find_exact_amalgam_bruteforce(const BratteliMap& phi, const BratteliMap& psi,
                                                Int max_total_size, Int work_cap) {
  if (phi.source != psi.source)
    fail(Errc::ShapeMismatch, "brute-force search needs maps out of the same source");
  for (const BratteliMap* m : {&phi, &psi}) {
    auto v = validate_embedding(*m);
    if (!v.ok) fail(Errc::InvalidMap, v.detail);
  }
  if (max_total_size < 1) fail(Errc::BudgetExceeded, "size budget must be at least 1");

  BruteforceOutcome outcome;
  Int& work = outcome.work;
  const int na = phi.source.width();
  const auto& bsz = phi.target.summands;
  const auto& csz = psi.target.summands;

  // Per candidate summand size d: all row pairs (u, v) that fill a size-d
  // target summand unitally on both legs with equal composite columns.
  // A summand of any amalgam target must take one of these; absence for every
  // d settles the search immediately.
  std::vector<std::vector<std::pair<std::vector<Int>, std::vector<Int>>>> rows_for(
      max_total_size + 1);
  for (Int d = 1; d <= max_total_size; ++d) {
    std::vector<std::vector<Int>> us, vs;
    std::vector<Int> rowB(bsz.size(), 0), rowC(csz.size(), 0);
    enumerate_rows(bsz, d, rowB, 0, us, work, work_cap);
    enumerate_rows(csz, d, rowC, 0, vs, work, work_cap);
    std::map<std::vector<Int>, std::vector<size_t>> by_composite;
    for (size_t t = 0; t < vs.size(); ++t) {
      std::vector<Int> comp(na, 0);
      for (int j = 0; j < na; ++j)
        for (size_t i = 0; i < csz.size(); ++i)
          comp[j] = checked_add(comp[j], checked_mul(psi.mult[i][j], vs[t][i]));
      by_composite[comp].push_back(t);
    }
    for (const auto& u : us) {
      std::vector<Int> comp(na, 0);
      for (int j = 0; j < na; ++j)
        for (size_t i = 0; i < bsz.size(); ++i)
          comp[j] = checked_add(comp[j], checked_mul(phi.mult[i][j], u[i]));
      if (auto it = by_composite.find(comp); it != by_composite.end())
        for (size_t t : it->second) rows_for[d].push_back({u, vs[t]});
    }
  }
  std::vector<Int> candidates;
  for (Int d = 1; d <= max_total_size; ++d)
    if (!rows_for[d].empty()) candidates.push_back(d);
  if (candidates.empty()) return outcome;

  // Enumerate targets by total size, then width, then lexicographic summand
  // tuples (non-decreasing; permutations are equivalent targets), then
  // lexicographic row choices. First hit is the reported witness.
  std::vector<Int> tuple;
  std::vector<size_t> pick;
  auto rows_ok = [&](const std::vector<Int>& sizes) -> bool {
    // choose one (u, v) per summand such that jointly no source column of
    // either leg is all zero
    auto rec2 = [&](auto&& self, size_t at) -> bool {
      if (++work > work_cap) fail(Errc::BudgetExceeded, "amalgam search budget exhausted");
      if (at == sizes.size()) {
        std::vector<bool> hitB(bsz.size(), false), hitC(csz.size(), false);
        for (size_t j = 0; j < sizes.size(); ++j) {
          const auto& [u, v] = rows_for[sizes[j]][pick[j]];
          for (size_t i = 0; i < bsz.size(); ++i) hitB[i] = hitB[i] || u[i] > 0;
          for (size_t i = 0; i < csz.size(); ++i) hitC[i] = hitC[i] || v[i] > 0;
        }
        for (bool h : hitB)
          if (!h) return false;
        for (bool h : hitC)
          if (!h) return false;
        return true;
      }
      for (size_t t = 0; t < rows_for[sizes[at]].size(); ++t) {
        pick[at] = t;
        if (self(self, at + 1)) return true;
      }
      return false;
    };
    pick.assign(sizes.size(), 0);
    return rec2(rec2, 0);
  };

  for (Int total = 1; total <= max_total_size; ++total) {
    for (Int width = 1; width <= total; ++width) {
      // non-decreasing tuples of candidate sizes summing to total
      auto rec = [&](auto&& self, Int remaining, Int parts, Int min_size) -> bool {
        if (++work > work_cap) fail(Errc::BudgetExceeded, "amalgam search budget exhausted");
        if (parts == 0) return remaining == 0 && rows_ok(tuple);
        for (Int d : candidates) {
          if (d < min_size) continue;
          if (checked_mul(d, parts) > remaining) break;  // candidates ascend
          tuple.push_back(d);
          if (self(self, remaining - d, parts - 1, d)) return true;
          tuple.pop_back();
        }
        return false;
      };
      tuple.clear();
      if (!rec(rec, total, width, 1)) continue;

      outcome.found = true;
      outcome.D = make_algebra(tuple);
      std::vector<std::vector<Int>> mb, mc;
      for (size_t j = 0; j < tuple.size(); ++j) {
        const auto& [u, v] = rows_for[tuple[j]][pick[j]];
        mb.push_back(u);
        mc.push_back(v);
      }
      outcome.psiB = make_embedding(phi.target, outcome.D, std::move(mb));
      outcome.psiC = make_embedding(psi.target, outcome.D, std::move(mc));
      return outcome;
    }
  }
  return outcome;
}

NearExactVerdict near_to_exact(const BratteliMap& psi0, const BratteliMap& psi1,
                               const BratteliMap& phi0, const BratteliMap& phi1,
                               double distance) {
  if (phi0.source != phi1.source)
    fail(Errc::ShapeMismatch, "the two legs must start at the same algebra");
  if (psi0.target != psi1.target)
    fail(Errc::ShapeMismatch, "the two legs must end at the same algebra");
  BratteliMap left = compose(phi0, psi0);
  BratteliMap right = compose(phi1, psi1);

  NearExactVerdict verdict;
  verdict.exact = left.mult == right.mult && left.unital == right.unital;
  if (!verdict.exact && distance < 1.0) {
    verdict.contract_violated = true;
    verdict.detail =
        "composite multiplicities differ, so any unitary images stay at operator distance 1; "
        "a reported distance of " +
        std::to_string(distance) + " < 1 contradicts the rank obstruction";
  }
  return verdict;
}

}  // namespace bratteli
