#include "bratteli/numeric.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>

#include "bratteli/error.hpp"

namespace bratteli {

namespace {

using EMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

EMat to_eigen(const CMat& a) {
  return Eigen::Map<const EMat>(a.data.data(), a.rows, a.cols);
}

CMat from_eigen(const EMat& m) {
  CMat out = CMat::zero(m.rows(), m.cols());
  Eigen::Map<EMat>(out.data.data(), out.rows, out.cols) = m;
  return out;
}

}  // namespace

CMat CMat::zero(Int r, Int c) {
  return CMat{r, c, std::vector<Complex>(static_cast<size_t>(r * c))};
}

CMat CMat::identity(Int n) {
  CMat out = zero(n, n);
  for (Int i = 0; i < n; ++i) out.at(i, i) = 1.0;
  return out;
}

CMat cmat_mul(const CMat& a, const CMat& b) {
  if (a.cols != b.rows) fail(Errc::ShapeMismatch, "matrix product shapes do not match");
  return from_eigen(to_eigen(a) * to_eigen(b));
}

CMat cmat_sub(const CMat& a, const CMat& b) {
  if (a.rows != b.rows || a.cols != b.cols)
    fail(Errc::ShapeMismatch, "matrix difference shapes do not match");
  CMat out = a;
  for (size_t i = 0; i < out.data.size(); ++i) out.data[i] -= b.data[i];
  return out;
}

CMat cmat_adjoint(const CMat& a) {
  CMat out = CMat::zero(a.cols, a.rows);
  for (Int r = 0; r < a.rows; ++r)
    for (Int c = 0; c < a.cols; ++c) out.at(c, r) = std::conj(a.at(r, c));
  return out;
}

CMat cmat_conjugate(const CMat& u, const CMat& x) {
  return cmat_mul(cmat_mul(u, x), cmat_adjoint(u));
}

double operator_norm(const CMat& a) {
  if (a.data.empty()) return 0.0;
  Eigen::JacobiSVD<EMat> svd(to_eigen(a));
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

double trace_norm(const CMat& a) {
  if (a.rows != a.cols) fail(Errc::ShapeMismatch, "trace norm needs a square matrix");
  double sum = 0.0;
  for (const Complex& z : a.data) sum += std::norm(z);
  return std::sqrt(sum / static_cast<double>(a.rows));
}

Complex normalized_trace(const CMat& a) {
  if (a.rows != a.cols) fail(Errc::ShapeMismatch, "trace needs a square matrix");
  Complex t = 0.0;
  for (Int i = 0; i < a.rows; ++i) t += a.at(i, i);
  return t / static_cast<double>(a.rows);
}

double max_abs_diff(const CMat& a, const CMat& b) {
  if (a.rows != b.rows || a.cols != b.cols)
    fail(Errc::ShapeMismatch, "matrix comparison shapes do not match");
  double m = 0.0;
  for (size_t i = 0; i < a.data.size(); ++i) m = std::max(m, std::abs(a.data[i] - b.data[i]));
  return m;
}

ConcreteAlgebra realize_algebra(const FdAlgebra& a) {
  ConcreteAlgebra out;
  out.blocks = a.summands;
  for (Int k : out.blocks) out.ambient += k;
  for (Int j = 0; j < a.width(); ++j)
    for (Int s = 0; s < a.summands[j]; ++s)
      for (Int t = 0; t < a.summands[j]; ++t) out.generators.push_back({j, s, t});
  return out;
}

CMat generator_matrix(const ConcreteAlgebra& a, const GenIndex& g) {
  CMat out = CMat::zero(a.ambient, a.ambient);
  Int offset = 0;
  for (Int j = 0; j < g.block; ++j) offset += a.blocks[j];
  out.at(offset + g.row, offset + g.col) = 1.0;
  return out;
}

bool generators_satisfy_relations(const ConcreteAlgebra& a) {
  std::vector<CMat> gens;
  for (const GenIndex& g : a.generators) gens.push_back(generator_matrix(a, g));
  for (size_t x = 0; x < gens.size(); ++x) {
    const GenIndex gx = a.generators[x];
    // Adjoint flips the unit's indices.
    CMat flipped = generator_matrix(a, {gx.block, gx.col, gx.row});
    if (max_abs_diff(cmat_adjoint(gens[x]), flipped) != 0.0) return false;
    for (size_t y = 0; y < gens.size(); ++y) {
      const GenIndex gy = a.generators[y];
      CMat expected = CMat::zero(a.ambient, a.ambient);
      if (gx.block == gy.block && gx.col == gy.row)
        expected = generator_matrix(a, {gx.block, gx.row, gy.col});
      if (max_abs_diff(cmat_mul(gens[x], gens[y]), expected) != 0.0) return false;
    }
  }
  return true;
}

namespace {

// Images of every source generator, read off a diagonal arrangement. Exact:
// each image entry is 0 or 1 placed by index arithmetic.
std::vector<CMat> images_from_arrangement(const ConcreteAlgebra& source,
                                          const ConcreteAlgebra& target,
                                          const std::vector<std::vector<Slot>>& arrangement) {
  std::vector<CMat> images(source.generators.size(), CMat::zero(target.ambient, target.ambient));
  Int block_offset = 0;
  for (size_t j = 0; j < arrangement.size(); ++j) {
    Int o = block_offset;
    for (const Slot& slot : arrangement[j]) {
      if (slot.src >= 0) {
        for (size_t gi = 0; gi < source.generators.size(); ++gi) {
          const GenIndex& g = source.generators[gi];
          if (g.block == slot.src) images[gi].at(o + g.row, o + g.col) = 1.0;
        }
      }
      o += slot.size;
    }
    block_offset += target.blocks[j];
  }
  return images;
}

void check_arrangement_shape(const ConcreteAlgebra& source, const ConcreteAlgebra& target,
                             const std::vector<std::vector<Slot>>& arrangement) {
  if (arrangement.size() != target.blocks.size())
    fail(Errc::ContractViolation, "arrangement does not cover the target blocks");
  for (size_t j = 0; j < arrangement.size(); ++j) {
    Int used = 0;
    for (const Slot& slot : arrangement[j]) {
      if (slot.src >= static_cast<Int>(source.blocks.size()))
        fail(Errc::ContractViolation, "arrangement references a missing source block");
      if (slot.src >= 0 && slot.size != source.blocks[slot.src])
        fail(Errc::ContractViolation, "arrangement slot size disagrees with its source block");
      used += slot.size;
    }
    if (used != target.blocks[j])
      fail(Errc::ContractViolation, "arrangement does not fill the target block");
  }
}

}  // namespace

ConcreteEmbedding realize_embedding(const BratteliMap& map) {
  ValidationReport r = validate_embedding(map);
  if (!r.ok) fail(Errc::InvalidMap, r.detail);

  ConcreteEmbedding out;
  out.source = realize_algebra(map.source);
  out.target = realize_algebra(map.target);
  out.provenance = map;
  for (int j = 0; j < map.target.width(); ++j) {
    std::vector<Slot> slots;
    Int used = 0;
    for (int i = 0; i < map.source.width(); ++i) {
      for (Int copy = 0; copy < map.mult[j][i]; ++copy) {
        slots.push_back({i, map.source.summands[i]});
        used += map.source.summands[i];
      }
    }
    if (used < map.target.summands[j]) slots.push_back({-1, map.target.summands[j] - used});
    out.arrangement.push_back(std::move(slots));
  }
  check_arrangement_shape(out.source, out.target, out.arrangement);
  out.generator_images = images_from_arrangement(out.source, out.target, out.arrangement);
  return out;
}

ConcreteEmbedding compose_concrete(const ConcreteEmbedding& f, const ConcreteEmbedding& g) {
  if (f.target.blocks != g.source.blocks)
    fail(Errc::ShapeMismatch, "inner shapes of the composition do not match");

  ConcreteEmbedding out;
  out.source = f.source;
  out.target = g.target;
  out.provenance = compose(f.provenance, g.provenance);
  for (const std::vector<Slot>& gslots : g.arrangement) {
    std::vector<Slot> slots;
    for (const Slot& gs : gslots) {
      if (gs.src < 0) {
        slots.push_back(gs);
      } else {
        for (const Slot& fs : f.arrangement[gs.src]) slots.push_back(fs);
      }
    }
    out.arrangement.push_back(std::move(slots));
  }
  check_arrangement_shape(out.source, out.target, out.arrangement);
  out.generator_images = images_from_arrangement(out.source, out.target, out.arrangement);
  return out;
}

double generator_distance(const ConcreteEmbedding& f, const ConcreteEmbedding& g,
                          MatrixNorm norm) {
  if (f.source.blocks != g.source.blocks || f.target.blocks != g.target.blocks)
    fail(Errc::ShapeMismatch, "generator distance needs matching shapes");
  double best = 0.0;
  for (size_t i = 0; i < f.generator_images.size(); ++i) {
    CMat diff = cmat_sub(f.generator_images[i], g.generator_images[i]);
    best = std::max(best, norm == MatrixNorm::Operator ? operator_norm(diff) : trace_norm(diff));
  }
  return best;
}

std::optional<Int> rank_witness_coordinate(const ConcreteEmbedding& f,
                                           const ConcreteEmbedding& g) {
  if (f.source.blocks != g.source.blocks || f.target.blocks != g.target.blocks)
    fail(Errc::ShapeMismatch, "rank witness needs matching shapes");
  for (int i = 0; i < static_cast<int>(f.source.blocks.size()); ++i) {
    // Image of e^{(i)}_{00} is a 0/1 diagonal projection in both embeddings.
    size_t gi = 0;
    while (f.source.generators[gi] != GenIndex{i, 0, 0}) ++gi;
    const CMat& p = f.generator_images[gi];
    const CMat& q = g.generator_images[gi];
    for (Int a = 0; a < p.rows; ++a)
      if (p.at(a, a) != q.at(a, a)) return a;
  }
  return std::nullopt;
}

std::optional<CMat> find_conjugating_unitary(const ConcreteEmbedding& f,
                                             const ConcreteEmbedding& g) {
  if (f.source.blocks != g.source.blocks || f.target.blocks != g.target.blocks)
    fail(Errc::ShapeMismatch, "conjugation needs matching shapes");
  if (f.provenance.mult != g.provenance.mult) return std::nullopt;

  const Int n = f.target.ambient;
  std::vector<Int> perm(n, -1);  // f-position -> g-position
  Int block_offset = 0;
  for (size_t j = 0; j < f.target.blocks.size(); ++j) {
    // k-th occurrence of each source block in f maps onto the k-th in g;
    // padding cells match in order.
    std::vector<std::vector<Int>> f_occ(f.source.blocks.size()), g_occ(g.source.blocks.size());
    std::vector<Int> f_pad, g_pad;
    auto scan = [&](const std::vector<Slot>& slots, std::vector<std::vector<Int>>& occ,
                    std::vector<Int>& pad) {
      Int o = block_offset;
      for (const Slot& slot : slots) {
        if (slot.src >= 0) {
          occ[slot.src].push_back(o);
        } else {
          for (Int c = 0; c < slot.size; ++c) pad.push_back(o + c);
        }
        o += slot.size;
      }
    };
    scan(f.arrangement[j], f_occ, f_pad);
    scan(g.arrangement[j], g_occ, g_pad);
    for (size_t i = 0; i < f_occ.size(); ++i) {
      if (f_occ[i].size() != g_occ[i].size())
        fail(Errc::ContractViolation, "equal multiplicities with unequal occurrence counts");
      for (size_t k = 0; k < f_occ[i].size(); ++k)
        for (Int c = 0; c < f.source.blocks[i]; ++c) perm[f_occ[i][k] + c] = g_occ[i][k] + c;
    }
    if (f_pad.size() != g_pad.size())
      fail(Errc::ContractViolation, "equal multiplicities with unequal padding");
    for (size_t k = 0; k < f_pad.size(); ++k) perm[f_pad[k]] = g_pad[k];
    block_offset += f.target.blocks[j];
  }

  CMat u = CMat::zero(n, n);
  for (Int p = 0; p < n; ++p) {
    if (perm[p] < 0) fail(Errc::ContractViolation, "arrangement left a position unmatched");
    u.at(perm[p], p) = 1.0;
  }

  // Exact verification: conjugation by the permutation relabels indices, so
  // compare g's images against f's images under the relabeling.
  for (size_t gi = 0; gi < f.generator_images.size(); ++gi) {
    const CMat& fm = f.generator_images[gi];
    const CMat& gm = g.generator_images[gi];
    for (Int a = 0; a < n; ++a)
      for (Int b = 0; b < n; ++b)
        if (fm.at(a, b) != gm.at(perm[a], perm[b]))
          fail(Errc::ContractViolation, "permutation failed to transport a generator image");
  }
  return u;
}

namespace {

ConcreteEmbedding permuted_images(const ConcreteEmbedding& f, const CMat& u) {
  // u is a 0/1 permutation: read sigma out of it and relabel exactly.
  std::vector<Int> sigma(f.target.ambient);
  for (Int p = 0; p < f.target.ambient; ++p) {
    for (Int q = 0; q < f.target.ambient; ++q)
      if (u.at(q, p) == 1.0) sigma[p] = q;
  }
  ConcreteEmbedding out = f;
  for (CMat& img : out.generator_images) {
    CMat moved = CMat::zero(img.rows, img.cols);
    for (Int a = 0; a < img.rows; ++a)
      for (Int b = 0; b < img.cols; ++b)
        if (img.at(a, b) != 0.0) moved.at(sigma[a], sigma[b]) = img.at(a, b);
    img = std::move(moved);
  }
  return out;
}

}  // namespace

HomogeneityResult homogeneity_check(const InductiveChain& chain, const BratteliMap& f,
                                    const BratteliMap& g, Int stage, Int push_to) {
  ValidationReport r = validate_chain(chain);
  if (!r.ok) fail(Errc::InvalidChain, r.detail);
  if (stage < 0 || push_to < stage || push_to >= static_cast<Int>(chain.stages.size()))
    fail(Errc::ShapeMismatch, "stage indices out of range");
  if (f.source != g.source) fail(Errc::ShapeMismatch, "the two maps need a common source");
  if (f.target != chain.stages[stage] || g.target != chain.stages[stage])
    fail(Errc::ShapeMismatch, "maps must land in the named stage");

  BratteliMap tail = composite(chain, stage, push_to);
  BratteliMap fc = compose(f, tail);
  BratteliMap gc = compose(g, tail);
  if (fc.mult != gc.mult) {
    const Int last = static_cast<Int>(chain.stages.size()) - 1;
    for (Int later = push_to + 1; later <= last; ++later) {
      BratteliMap probe = composite(chain, stage, later);
      if (compose(f, probe).mult == compose(g, probe).mult)
        fail(Errc::NotYetEquivalent, "composites differ at stage " + std::to_string(push_to) +
                                         "; they first agree at stage " + std::to_string(later));
    }
    fail(Errc::NotYetEquivalent, "composites differ at stage " + std::to_string(push_to) +
                                     " and at every later stage of the chain");
  }

  ConcreteEmbedding fr = compose_concrete(realize_embedding(f), realize_embedding(tail));
  ConcreteEmbedding gr = compose_concrete(realize_embedding(g), realize_embedding(tail));
  auto u = find_conjugating_unitary(fr, gr);
  if (!u) fail(Errc::ContractViolation, "equal multiplicity matrices without a conjugator");
  double dist = generator_distance(permuted_images(fr, *u), gr, MatrixNorm::Operator);
  return HomogeneityResult{*u, dist, push_to};
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Standard normal from explicit bit manipulation; kept free of
// std::*_distribution so that streams are identical across library
// implementations.
double gaussian(std::mt19937_64& rng) {
  double u1 = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
  double u2 = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

}  // namespace

CMat haar_unitary(Int n, std::uint64_t seed) {
  if (n < 1) fail(Errc::NonPositive, "unitary dimension must be positive");
  std::mt19937_64 rng(seed);
  EMat z(n, n);
  for (Int r = 0; r < n; ++r)
    for (Int c = 0; c < n; ++c) {
      double re = gaussian(rng);
      double im = gaussian(rng);
      z(r, c) = Complex(re, im);
    }
  Eigen::HouseholderQR<EMat> qr(z);
  EMat q = qr.householderQ() * EMat::Identity(n, n);
  // Phase correction makes the distribution exactly Haar rather than
  // QR-convention dependent.
  for (Int c = 0; c < n; ++c) {
    Complex d = qr.matrixQR()(c, c);
    q.col(c) *= d / std::abs(d);
  }
  return from_eigen(q);
}

RamseyReport ramsey_oscillation_demo(Int k, Int n, ColoringKind coloring, Int samples,
                                     std::uint64_t seed) {
  if (k < 1 || n < 1) fail(Errc::NonPositive, "matrix sizes must be positive");
  if (n % k != 0)
    fail(Errc::DivisibilityViolation,
         "M_" + std::to_string(k) + " embeds unitally only if " + std::to_string(k) +
             " divides " + std::to_string(n));
  if (samples < 1) fail(Errc::NonPositive, "at least one sample is required");

  ConcreteEmbedding canonical =
      realize_embedding(make_embedding(make_algebra({k}), make_algebra({n}), {{n / k}}));

  CMat probe = CMat::zero(n, n);  // contraction for the trace-polynomial coloring
  for (Int i = 0; i < n; ++i)
    probe.at(i, i) = n == 1 ? 1.0 : static_cast<double>(i) / static_cast<double>(n - 1);

  double range = coloring == ColoringKind::DistanceToReference ? 2.0 : 1.0;
  RamseyReport report;
  report.seed = seed;
  report.samples = samples;
  report.histogram.assign(16, 0);
  double lo = 0.0, hi = 0.0;
  for (Int i = 0; i < samples; ++i) {
    CMat u = haar_unitary(n, splitmix64(seed + static_cast<std::uint64_t>(i)));
    double value = 0.0;
    switch (coloring) {
      case ColoringKind::Constant:
        value = 0.5;
        break;
      case ColoringKind::DistanceToReference: {
        for (size_t gi = 0; gi < canonical.generator_images.size(); ++gi) {
          const CMat& img = canonical.generator_images[gi];
          value = std::max(value, operator_norm(cmat_sub(cmat_conjugate(u, img), img)));
        }
        break;
      }
      case ColoringKind::TracePolynomial: {
        const CMat& img = canonical.generator_images[0];  // e_{00} of the source
        value = std::real(normalized_trace(cmat_mul(cmat_conjugate(u, img), probe)));
        break;
      }
    }
    if (i == 0) {
      lo = hi = value;
    } else {
      lo = std::min(lo, value);
      hi = std::max(hi, value);
    }
    int bin = static_cast<int>(value / range * 16.0);
    report.histogram[static_cast<size_t>(std::clamp(bin, 0, 15))] += 1;
  }
  report.min_value = lo;
  report.max_value = hi;
  report.oscillation = hi - lo;
  return report;
}

}  // namespace bratteli
