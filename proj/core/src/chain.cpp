#include "bratteli/chain.hpp"

#include <algorithm>
#include <numeric>

#include "bratteli/error.hpp"
#include "bratteli/ratmat.hpp"

namespace bratteli {

const char* chain_kind_name(ChainKind kind) {
  switch (kind) {
    case ChainKind::Uhf: return "uhf";
    case ChainKind::FiniteFactors: return "factors";
    case ChainKind::WidthTraced: return "width";
    case ChainKind::Commutative: return "commutative";
    case ChainKind::CompactOperators: return "compacts";
  }
  return "?";
}

const char* metric_tag_name(MetricTag tag) {
  return tag == MetricTag::Generator ? "generator" : "trace";
}

ValidationReport validate_chain(const InductiveChain& chain) {
  if (chain.stages.empty()) return {false, "a chain needs at least one stage"};
  if (chain.maps.size() + 1 != chain.stages.size())
    return {false, "expected one connecting map per adjacent stage pair"};
  for (size_t m = 0; m < chain.maps.size(); ++m) {
    const BratteliMap& map = chain.maps[m];
    if (map.source != chain.stages[m] || map.target != chain.stages[m + 1])
      return {false, "map " + std::to_string(m) + " does not connect its stages"};
    if (map.unital != chain.descriptor.unital)
      return {false, "map " + std::to_string(m) + " disagrees with the class unitality"};
    ValidationReport r = validate_embedding(map);
    if (!r.ok) return {false, "map " + std::to_string(m) + ": " + r.detail};
  }
  if (!chain.traces.empty()) {
    if (chain.traces.size() != chain.stages.size())
      return {false, "expected one trace per stage"};
    for (size_t m = 0; m < chain.traces.size(); ++m)
      if (chain.traces[m].width() != chain.stages[m].width())
        return {false, "trace " + std::to_string(m) + " has the wrong width"};
    for (size_t m = 0; m < chain.maps.size(); ++m)
      if (!is_trace_preserving(chain.maps[m], chain.traces[m], chain.traces[m + 1]))
        return {false, "trace " + std::to_string(m) + " is not the pushforward of its successor"};
  }
  return {};
}

namespace {

InductiveChain checked(InductiveChain chain) {
  ValidationReport r = validate_chain(chain);
  if (!r.ok) fail(Errc::ContractViolation, "constructed chain fails validation: " + r.detail);
  return chain;
}

BratteliMap identity_map(const FdAlgebra& a) {
  std::vector<std::vector<Int>> mult(a.width(), std::vector<Int>(a.width(), 0));
  for (int i = 0; i < a.width(); ++i) mult[i][i] = 1;
  return make_embedding(a, a, std::move(mult));
}

}  // namespace

BratteliMap composite(const InductiveChain& chain, Int from, Int to) {
  if (from < 0 || to < from || to >= static_cast<Int>(chain.stages.size()))
    fail(Errc::ShapeMismatch, "composite stages out of range");
  BratteliMap acc = identity_map(chain.stages[from]);
  for (Int m = from; m < to; ++m) acc = compose(acc, chain.maps[m]);
  return acc;
}

InductiveChain build_uhf_chain(const SupernaturalNumber& program, Int length) {
  if (length < 1) fail(Errc::InvalidChain, "chain length must be at least 1");
  for (const auto& [p, e] : program.exponents) {
    if (!is_prime(p)) fail(Errc::NonPrimeBase, "base " + std::to_string(p) + " is not prime");
    if (e != kUnbounded && e < 1) fail(Errc::InvalidChain, "program exponents must be positive");
  }

  InductiveChain chain;
  chain.descriptor.kind = ChainKind::Uhf;
  chain.descriptor.program = program;

  Int prev = 0;
  for (Int m = 1; m <= length; ++m) {
    Int bound = nth_prime(m);
    Int k = 1;
    for (const auto& [p, e] : program.exponents) {
      if (p > bound) break;
      Int cap = (e == kUnbounded) ? m : std::min(e, m);
      for (Int t = 0; t < cap; ++t) k = checked_mul(k, p);
    }
    chain.stages.push_back(make_algebra({k}));
    chain.traces.push_back(make_trace({Rat(1)}));
    if (m == 1) {
      chain.log.push_back("seed M_" + std::to_string(k));
    } else {
      chain.maps.push_back(make_embedding(chain.stages[m - 2], chain.stages[m - 1], {{k / prev}}));
      chain.log.push_back("step " + std::to_string(m - 1) + ": multiplicity " +
                          std::to_string(k / prev));
    }
    prev = k;
  }
  return checked(std::move(chain));
}

std::vector<StepSpec> standard_schedule(Int steps) {
  if (steps < 0) fail(Errc::NonPositive, "schedule length must be nonnegative");
  std::vector<StepSpec> out;
  Int next_prime_index = 1;
  for (Int m = 1; m <= steps; ++m) {
    StepSpec step;
    switch ((m - 1) % 3) {
      case 0:
        step.type = StepSpec::Type::Shrink;
        step.epsilon = Rat(mpz_class(1), mpz_class(1) << m);
        break;
      case 1:
        step.type = StepSpec::Type::Divisibility;
        step.prime = nth_prime(next_prime_index++);
        break;
      default:
        step.type = StepSpec::Type::Positivity;
        break;
    }
    out.push_back(std::move(step));
  }
  return out;
}

InductiveChain extend_width_chain(InductiveChain chain, const std::vector<RationalTrace>& vertices,
                                  const std::string& log_line) {
  ValidationReport r = validate_chain(chain);
  if (!r.ok) fail(Errc::InvalidChain, r.detail);
  if (chain.traces.empty()) fail(Errc::InvalidChain, "extension requires a traced chain");
  if (vertices.empty()) fail(Errc::EmptySummands, "extension requires at least one vertex");

  const FdAlgebra& last = chain.stages.back();
  const RationalTrace& beta = chain.traces.back();
  const int w = last.width();

  for (const RationalTrace& v : vertices) {
    if (v.width() != w) fail(Errc::ShapeMismatch, "vertex width does not match the last stage");
    if (!is_interior(v)) fail(Errc::VertexNotInterior, "vertex has a zero weight");
  }

  // Summand i realizes vertex i: least N_i with all tau_i[j] * N_i / l_j
  // integral, multiplicities given by exactly that expression.
  std::vector<Int> sizes;
  std::vector<std::vector<Int>> mult;
  for (const RationalTrace& v : vertices) {
    RatVec ratios(w);
    for (int j = 0; j < w; ++j) ratios[j] = v.weights[j] / last.summands[j];
    Int n_i = to_int(den_lcm(ratios));
    std::vector<Int> row(w);
    for (int j = 0; j < w; ++j) {
      Rat m_ij = ratios[j] * n_i;
      if (m_ij.get_den() != 1)
        fail(Errc::ContractViolation, "stage size failed to clear a denominator");
      row[j] = to_int(m_ij.get_num());
    }
    sizes.push_back(n_i);
    mult.push_back(std::move(row));
  }

  std::vector<RatVec> points;
  for (const RationalTrace& v : vertices) points.push_back(v.weights);
  auto delta = convex_combination(beta.weights, points, points.size());
  if (!delta)
    fail(Errc::HullViolation, "current trace is outside the hull of the target vertices");

  FdAlgebra next = make_algebra(std::move(sizes));
  BratteliMap map = make_embedding(last, next, std::move(mult));
  RationalTrace next_trace = make_trace(*delta);
  if (!is_trace_preserving(map, beta, next_trace))
    fail(Errc::ContractViolation, "extension lost the distinguished trace");

  chain.stages.push_back(std::move(next));
  chain.maps.push_back(std::move(map));
  chain.traces.push_back(std::move(next_trace));
  chain.log.push_back(log_line.empty()
                          ? "extend with " + std::to_string(vertices.size()) + " vertices"
                          : log_line);
  return chain;
}

namespace {

// Shared by the shrink and positivity steps: vertices (1-eta)*beta + eta*e_i.
std::vector<RationalTrace> corner_vertices(const RationalTrace& beta, const Rat& eta) {
  std::vector<RationalTrace> out;
  for (int i = 0; i < beta.width(); ++i) {
    std::vector<Rat> v(beta.weights);
    for (Rat& x : v) x *= 1 - eta;
    v[i] += eta;
    out.push_back(make_trace(std::move(v)));
  }
  return out;
}

}  // namespace

InductiveChain build_width_class_chain(Int n, const RationalTrace& tau,
                                       const std::vector<StepSpec>& schedule) {
  if (n < 2) fail(Errc::NotInClass, "the width class requires n >= 2");
  if (tau.width() != n) fail(Errc::ShapeMismatch, "seed trace has the wrong width");
  if (!is_interior(tau)) fail(Errc::NotInterior, "seed trace must be interior");

  InductiveChain chain;
  chain.descriptor.kind = ChainKind::WidthTraced;
  chain.descriptor.width = n;
  chain.descriptor.trace = tau;
  chain.descriptor.metric = MetricTag::Trace;
  chain.stages.push_back(make_algebra(std::vector<Int>(n, 1)));
  chain.traces.push_back(tau);
  chain.log.push_back("seed C^" + std::to_string(n));

  Int m = 0;
  for (const StepSpec& step : schedule) {
    ++m;
    const std::string tag = "step " + std::to_string(m) + ": ";
    switch (step.type) {
      case StepSpec::Type::Shrink: {
        if (step.epsilon <= 0 || step.epsilon >= 2)
          fail(Errc::InvalidChain, "shrink radius must lie in (0, 2)");
        Rat eta = step.epsilon / 2;
        auto vertices = corner_vertices(chain.traces.back(), eta);
        chain = extend_width_chain(std::move(chain), vertices,
                                   tag + "shrink eps=" + rat_str(step.epsilon));
        break;
      }
      case StepSpec::Type::Divisibility: {
        if (!is_prime(step.prime))
          fail(Errc::NonPrimeBase, "divisibility step needs a prime, got " +
                                       std::to_string(step.prime));
        const FdAlgebra& last = chain.stages.back();
        std::vector<Int> sizes;
        std::vector<std::vector<Int>> mult(last.width(), std::vector<Int>(last.width(), 0));
        for (int i = 0; i < last.width(); ++i) {
          sizes.push_back(checked_mul(step.prime, last.summands[i]));
          mult[i][i] = step.prime;
        }
        FdAlgebra next = make_algebra(std::move(sizes));
        chain.maps.push_back(make_embedding(last, next, std::move(mult)));
        chain.stages.push_back(std::move(next));
        chain.traces.push_back(chain.traces.back());
        chain.log.push_back(tag + "divisibility p=" + std::to_string(step.prime));
        break;
      }
      case StepSpec::Type::Positivity: {
        auto vertices = corner_vertices(chain.traces.back(), rat_of(1, 2));
        chain = extend_width_chain(std::move(chain), vertices, tag + "positivity");
        break;
      }
    }
  }
  return checked(std::move(chain));
}

InductiveChain build_width_class_chain(Int n, const RationalTrace& tau, Int length) {
  if (length < 1) fail(Errc::InvalidChain, "chain length must be at least 1");
  return build_width_class_chain(n, tau, standard_schedule(length - 1));
}

InductiveChain build_commutative_chain(Int length) {
  if (length < 1) fail(Errc::InvalidChain, "chain length must be at least 1");
  if (length > 12) fail(Errc::BudgetExceeded, "commutative chain capped at 12 stages");

  InductiveChain chain;
  chain.descriptor.kind = ChainKind::Commutative;
  for (Int m = 0; m < length; ++m) {
    Int w = Int(1) << m;
    chain.stages.push_back(make_algebra(std::vector<Int>(w, 1)));
    chain.traces.push_back(make_trace(std::vector<Rat>(w, Rat(mpz_class(1), mpz_class(w)))));
    if (m == 0) {
      chain.log.push_back("seed C");
    } else {
      std::vector<std::vector<Int>> mult(w, std::vector<Int>(w / 2, 0));
      for (Int j = 0; j < w; ++j) mult[j][j / 2] = 1;
      chain.maps.push_back(make_embedding(chain.stages[m - 1], chain.stages[m], std::move(mult)));
      chain.log.push_back("step " + std::to_string(m) + ": split each point");
    }
  }
  return checked(std::move(chain));
}

InductiveChain build_compacts_chain(Int length) {
  if (length < 1) fail(Errc::InvalidChain, "chain length must be at least 1");

  InductiveChain chain;
  chain.descriptor.kind = ChainKind::CompactOperators;
  chain.descriptor.unital = false;
  for (Int m = 1; m <= length; ++m) {
    chain.stages.push_back(make_algebra({m}));
    if (m == 1) {
      chain.log.push_back("seed M_1");
    } else {
      chain.maps.push_back(
          make_embedding(chain.stages[m - 2], chain.stages[m - 1], {{1}}, /*unital=*/false));
      chain.log.push_back("step " + std::to_string(m - 1) + ": corner into M_" +
                          std::to_string(m));
    }
  }
  return checked(std::move(chain));
}

InductiveChain build_factors_chain(Int length) {
  if (length < 1) fail(Errc::InvalidChain, "chain length must be at least 1");

  InductiveChain chain;
  chain.descriptor.kind = ChainKind::FiniteFactors;
  Int size = 1;
  for (Int m = 1; m <= length; ++m) {
    size = checked_mul(size, m);
    chain.stages.push_back(make_algebra({size}));
    chain.traces.push_back(make_trace({Rat(1)}));
    if (m == 1) {
      chain.log.push_back("seed M_1");
    } else {
      chain.maps.push_back(make_embedding(chain.stages[m - 2], chain.stages[m - 1], {{m}}));
      chain.log.push_back("step " + std::to_string(m - 1) + ": multiplicity " + std::to_string(m));
    }
  }
  return checked(std::move(chain));
}

namespace {

// Nonnegative n-tuples summing to total, ascending lexicographic order.
void compositions_into(Int total, int parts, std::vector<Int>& cur,
                       std::vector<std::vector<Int>>& out) {
  if (parts == 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (Int v = 0; v <= total; ++v) {
    cur.push_back(v);
    compositions_into(total - v, parts - 1, cur, out);
    cur.pop_back();
  }
}

struct EmbedSearch {
  const RationalTrace& tau;
  const FdAlgebra& a;
  const RationalTrace& alpha;
  std::vector<std::vector<std::vector<Int>>> rows;  // per target summand
  std::vector<int> chosen;
  RatVec acc;  // partial pushforward
  Int work = 0;

  static constexpr Int kWorkCap = 100'000'000;

  std::optional<BratteliMap> run() {
    chosen.assign(a.width(), -1);
    acc.assign(tau.width(), Rat(0));
    return dfs(0);
  }

  std::optional<BratteliMap> dfs(int j) {
    if (j == a.width()) return finish();
    for (size_t r = 0; r < rows[j].size(); ++r) {
      if (++work > kWorkCap) fail(Errc::BudgetExceeded, "seed embedding search exceeded its cap");
      const std::vector<Int>& row = rows[j][r];
      bool ok = true;
      for (int i = 0; i < tau.width() && ok; ++i) {
        acc[i] += Rat(row[i]) * alpha.weights[j] / a.summands[j];
        if (acc[i] > tau.weights[i]) ok = false;
      }
      if (ok) {
        chosen[j] = static_cast<int>(r);
        if (auto found = dfs(j + 1)) return found;
      }
      for (int i = 0; i < tau.width(); ++i)
        acc[i] -= Rat(row[i]) * alpha.weights[j] / a.summands[j];
    }
    return std::nullopt;
  }

  std::optional<BratteliMap> finish() {
    for (int i = 0; i < tau.width(); ++i)
      if (acc[i] != tau.weights[i]) return std::nullopt;
    std::vector<std::vector<Int>> mult;
    for (int j = 0; j < a.width(); ++j) mult.push_back(rows[j][chosen[j]]);
    for (int i = 0; i < tau.width(); ++i) {
      bool hit = false;
      for (int j = 0; j < a.width(); ++j) hit = hit || mult[j][i] != 0;
      if (!hit) return std::nullopt;  // not injective on summand i
    }
    FdAlgebra seed = make_algebra(std::vector<Int>(tau.width(), 1));
    return make_embedding(seed, a, std::move(mult));
  }
};

}  // namespace

std::optional<BratteliMap> embed_minimal(Int n, const RationalTrace& tau, const FdAlgebra& a,
                                         const RationalTrace& alpha) {
  if (n < 1) fail(Errc::NonPositive, "seed width must be positive");
  if (tau.width() != n) fail(Errc::ShapeMismatch, "seed trace has the wrong width");
  if (alpha.width() != a.width())
    fail(Errc::ShapeMismatch, "member trace does not match the member algebra");
  // Class members carry exactly n summands; anything else cannot sit over
  // the seed within the class.
  if (a.width() != n) return std::nullopt;

  EmbedSearch search{tau, a, alpha, {}, {}, {}, 0};
  for (int j = 0; j < a.width(); ++j) {
    std::vector<std::vector<Int>> options;
    std::vector<Int> cur;
    compositions_into(a.summands[j], static_cast<int>(n), cur, options);
    search.rows.push_back(std::move(options));
  }
  return search.run();
}

namespace {

JepResult jep_full_matrix(const ClassDescriptor& cls, const FdAlgebra& a, const FdAlgebra& b) {
  if (a.width() != 1 || b.width() != 1)
    fail(Errc::NotInClass, "class members are single matrix algebras");
  Int k = a.summands[0];
  Int l = b.summands[0];
  if (cls.kind == ChainKind::Uhf) {
    if (!divides_supernatural(k, cls.program))
      fail(Errc::NotInClass, "M_" + std::to_string(k) + " does not divide the program");
    if (!divides_supernatural(l, cls.program))
      fail(Errc::NotInClass, "M_" + std::to_string(l) + " does not divide the program");
  }
  Int join = checked_mul(k / std::gcd(k, l), l);
  FdAlgebra target = make_algebra({join});
  return JepResult{target, make_trace({Rat(1)}), make_embedding(a, target, {{join / k}}),
                   make_embedding(b, target, {{join / l}})};
}

JepResult jep_commutative(const FdAlgebra& a, const FdAlgebra& b) {
  for (const FdAlgebra* x : {&a, &b})
    for (Int s : x->summands)
      if (s != 1) fail(Errc::NotInClass, "commutative members have all summands of size 1");
  int w = std::max(a.width(), b.width());
  FdAlgebra target = make_algebra(std::vector<Int>(w, 1));
  auto into = [&](const FdAlgebra& x) {
    std::vector<std::vector<Int>> mult(w, std::vector<Int>(x.width(), 0));
    for (int j = 0; j < w; ++j) mult[j][std::min(j, x.width() - 1)] = 1;
    return make_embedding(x, target, std::move(mult));
  };
  return JepResult{target, RationalTrace{}, into(a), into(b)};
}

JepResult jep_compacts(const FdAlgebra& a, const FdAlgebra& b) {
  if (a.width() != 1 || b.width() != 1)
    fail(Errc::NotInClass, "compact-corner members are single matrix algebras");
  Int join = std::max(a.summands[0], b.summands[0]);
  FdAlgebra target = make_algebra({join});
  auto corner = [&](const FdAlgebra& x) {
    return make_embedding(x, target, {{1}}, /*unital=*/x.summands[0] == join);
  };
  return JepResult{target, RationalTrace{}, corner(a), corner(b)};
}

JepResult jep_width_traced(const ClassDescriptor& cls, const FdAlgebra& a, const FdAlgebra& b,
                           const RationalTrace& alpha, const RationalTrace& beta) {
  if (cls.width < 2) fail(Errc::NotInClass, "the width class requires n >= 2");
  if (alpha.width() != a.width() || beta.width() != b.width())
    fail(Errc::ShapeMismatch, "traced class members need one trace weight per summand");

  auto phi = embed_minimal(cls.width, cls.trace, a, alpha);
  if (!phi) fail(Errc::NotInClass, "the first member does not embed the seed");
  auto psi = embed_minimal(cls.width, cls.trace, b, beta);
  if (!psi) fail(Errc::NotInClass, "the second member does not embed the seed");

  TracedProblem problem{make_algebra(std::vector<Int>(cls.width, 1)),
                        cls.trace,
                        a,
                        alpha,
                        *phi,
                        b,
                        beta,
                        *psi};
  AmalgamResult res = amalgamate_width_n(problem, static_cast<int>(cls.width));

  // Membership certificate for the join: the composed seed embedding must be
  // trace-preserving from (C^n, tau) into (D, delta).
  if (!is_trace_preserving(compose(*phi, res.psiB), cls.trace, res.delta))
    fail(Errc::ContractViolation, "joint embedding lost the seed trace");

  return JepResult{res.D, res.delta, res.psiB, res.psiC};
}

}  // namespace

JepResult jep(const ClassDescriptor& cls, const FdAlgebra& a, const FdAlgebra& b,
              const RationalTrace& alpha, const RationalTrace& beta) {
  switch (cls.kind) {
    case ChainKind::Uhf:
    case ChainKind::FiniteFactors:
      return jep_full_matrix(cls, a, b);
    case ChainKind::Commutative:
      return jep_commutative(a, b);
    case ChainKind::CompactOperators:
      return jep_compacts(a, b);
    case ChainKind::WidthTraced:
      return jep_width_traced(cls, a, b, alpha, beta);
  }
  fail(Errc::InvalidChain, "unknown class kind");
}

}  // namespace bratteli
