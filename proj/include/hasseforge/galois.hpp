#ifndef HASSEFORGE_GALOIS_HPP
#define HASSEFORGE_GALOIS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hasseforge/delta.hpp"

// The delta-Galois side: automorphisms of the Kummer extension certified to
// commute with the derivation, their matrices on the constants algebra, and
// inner-automorphism lifts through an explicit matrix-units isomorphism.

namespace hf {

/// All powers sigma^j (s -> zeta^j s), each certified to commute with delta_K
/// on the generator and on sampled elements up to order N.
inline std::vector<unsigned> kummer_galois_group(const KummerExtension& ext,
                                                 const DerivationTable<GF>& dk, unsigned N,
                                                 unsigned samples = 12,
                                                 std::uint64_t seed = 17) {
  require(N <= dk.trunc(), Err::OrderExceedsTruncation, "certification order too large");
  Rng rng(seed);
  std::vector<RatFunc<GF>> pool;
  pool.push_back(ext.top().gen());
  for (unsigned i = 0; i < samples; ++i) pool.push_back(ext.top().sample(rng, 4));
  std::vector<unsigned> group;
  for (unsigned j = 0; j < ext.degree(); ++j) {
    for (const auto& f : pool) {
      auto tw = dk.tower(f, N);
      auto tws = dk.tower(ext.galois(f, j), N);
      for (unsigned n = 0; n <= N; ++n) {
        if (ext.galois(tw[n], j) != tws[n])
          fail(Err::CommutationFailure,
               "sigma^" + std::to_string(j) + " does not commute with delta at order " +
                   std::to_string(n) + " on " + ext.top().elem_str(f));
      }
    }
    group.push_back(j);
  }
  return group;
}

struct AutomorphismRep {
  std::vector<unsigned> group;   // group element = power of sigma
  std::vector<Mat<GF>> action;   // matrix on the constants-basis coordinates
  std::vector<Mat<GF>> lifts;    // GL_n lift per element (filled by skolem_noether_lifts)
  unsigned degree = 0;           // n with constants = M_n(F^delta)
};

/// sigma . (v (x) x) = v (x) sigma(x) restricted to the constants basis; each
/// image must land back in the F^delta-span and respect multiplication.
inline AutomorphismRep action_on_constants(const DeltaAlgebra<GF>& AK, const ConstantsBasis& C,
                                           const KummerExtension& ext,
                                           const std::vector<unsigned>& group) {
  const GF& cf = C.constant_field;
  unsigned cd = C.dim();
  AutomorphismRep rep;
  rep.group = group;
  for (unsigned j : group) {
    Mat<GF> m(cf, cd, cd);
    for (unsigned r = 0; r < cd; ++r) {
      // apply sigma coordinate-wise, then re-coordinate over F^delta
      std::vector<RatFunc<GF>> img(AK.algebra().dim(), AK.algebra().field().zero());
      for (unsigned c = 0; c < img.size(); ++c) img[c] = ext.galois(C.vectors[r][c], j);
      std::vector<std::vector<GFElem>> rows;
      std::vector<GFElem> rhs;
      detail::linearize_rows(cf, C.vectors, &img, rows, &rhs);
      auto mu = solve(Mat<GF>::from_rows(cf, rows), rhs);
      if (!mu)
        fail(Err::NotStable, "sigma^" + std::to_string(j) +
                                 " maps a constant outside the computed span; enlarge the ansatz");
      for (unsigned i = 0; i < cd; ++i) m.at(i, r) = (*mu)[i];
    }
    // the matrix must be an algebra map of the constants algebra
    if (C.algebra) {
      const auto& alg = *C.algebra;
      for (unsigned a = 0; a < cd; ++a)
        for (unsigned b = 0; b < cd; ++b) {
          auto lhs = m.apply(alg.constants(a, b));
          Vec<GF> ea(cd, cf.zero()), eb(cd, cf.zero());
          for (unsigned i = 0; i < cd; ++i) {
            ea[i] = m.at(i, a);
            eb[i] = m.at(i, b);
          }
          auto rhs2 = alg.mul(ea, eb);
          require(lhs == rhs2, Err::NotStable,
                  "Galois action is not an algebra automorphism on the constants");
        }
    }
    rep.action.push_back(std::move(m));
  }
  return rep;
}

/// explicit isomorphism C -> M_n(F^delta) through a primitive idempotent
struct MatrixUnitsIso {
  unsigned n = 0;
  Mat<GF> to_matrix;    // (n^2) x dim(C): C-coordinates to matrix coordinates (row-major)
  Mat<GF> from_matrix;  // inverse
};

namespace detail {

inline std::optional<std::vector<GFElem>> minimal_polynomial(const StructureAlgebra<GF>& C,
                                                             const Vec<GF>& v) {
  const GF& cf = C.field();
  unsigned d = C.dim();
  SpanBuilder<GF> span(cf, d);
  std::vector<Vec<GF>> powers;
  powers.push_back(C.unit());
  while (span.insert(powers.back())) {
    powers.push_back(C.mul(powers.back(), v));
    if (powers.size() > d + 1) break;
  }
  // the last power is dependent on the earlier ones
  unsigned k = static_cast<unsigned>(powers.size()) - 1;
  Mat<GF> m(cf, d, k);
  for (unsigned j = 0; j < k; ++j)
    for (unsigned i = 0; i < d; ++i) m.at(i, j) = powers[j][i];
  auto x = solve(m, powers[k]);
  if (!x) return std::nullopt;
  // min poly = X^k - sum x_j X^j
  std::vector<GFElem> coeffs(k + 1, cf.zero());
  for (unsigned j = 0; j < k; ++j) coeffs[j] = -(*x)[j];
  coeffs[k] = cf.one();
  return coeffs;
}

// primitive idempotent by splitting random elements along their spectra
inline std::optional<Vec<GF>> primitive_idempotent(const StructureAlgebra<GF>& C, Rng& rng,
                                                   unsigned budget) {
  const GF& cf = C.field();
  unsigned d = C.dim();
  auto corner_dim = [&](const Vec<GF>& e) {
    SpanBuilder<GF> sb(cf, d);
    for (unsigned i = 0; i < d; ++i) sb.insert(C.mul(C.mul(e, C.basis(i)), e));
    return sb.rank();
  };
  std::vector<Vec<GF>> candidates;  // idempotents with corner dim > 1, for refinement
  candidates.push_back(C.unit());
  for (unsigned trial = 0; trial < budget; ++trial) {
    // sample inside a corner eCe to refine, alternating with the full algebra
    const Vec<GF>& corner = candidates[trial % candidates.size()];
    Vec<GF> v(d, cf.zero());
    for (unsigned i = 0; i < d; ++i) v[i] = cf.sample(rng);
    v = C.mul(C.mul(corner, v), corner);
    auto mp = minimal_polynomial(C, v);
    if (!mp) continue;
    // roots over F_q by scanning; demand a squarefree fully-split minimal poly
    Poly<GF> f(cf, *mp);
    std::vector<GFElem> roots;
    for (std::uint64_t i = 0; i < cf.order(); ++i) {
      auto lam = cf.nth(i);
      if (f.eval(lam).is_zero()) roots.push_back(lam);
    }
    if (roots.size() != static_cast<std::size_t>(f.degree_or(0))) continue;
    if (roots.size() < 2) continue;
    for (const auto& lam : roots) {
      // projector onto the lambda-eigenspace of v
      Vec<GF> e = C.unit();
      for (const auto& mu : roots) {
        if (mu == lam) continue;
        Vec<GF> factor = C.sub(v, C.scale(C.unit(), mu));
        factor = C.scale(factor, (lam - mu).inv());
        e = C.mul(e, factor);
      }
      if (vec_is_zero<GF>(e)) continue;
      // e is idempotent by construction; primitive iff dim eCe = 1
      unsigned cd = corner_dim(e);
      if (cd == 1) return e;
      if (cd > 1 && cd < d) candidates.push_back(e);
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Recognize C = M_n(F^delta) by locating a primitive idempotent e and
/// mapping c to its left-multiplication matrix on the minimal left ideal Ce.
inline MatrixUnitsIso recognize_matrix_algebra(const StructureAlgebra<GF>& C,
                                               std::uint64_t seed = 23, unsigned budget = 500) {
  const GF& cf = C.field();
  unsigned d = C.dim();
  unsigned n = 0;
  while (n * n < d) ++n;
  require(n * n == d, Err::NotMatrixAlgebra, "dimension is not a perfect square");
  MatrixUnitsIso iso;
  iso.n = n;
  if (n == 1) {
    iso.to_matrix = Mat<GF>::identity(cf, 1);
    iso.from_matrix = Mat<GF>::identity(cf, 1);
    return iso;
  }
  Rng rng(seed);
  auto e = detail::primitive_idempotent(C, rng, budget);
  require(e.has_value(), Err::NotMatrixAlgebra,
          "no primitive idempotent found within the search budget");
  // minimal left ideal L = C e
  SpanBuilder<GF> lspan(cf, d);
  std::vector<Vec<GF>> lbasis;
  for (unsigned i = 0; i < d; ++i) {
    auto w = C.mul(C.basis(i), *e);
    if (lspan.insert(w)) lbasis.push_back(lspan.rows().back());
  }
  require(lbasis.size() == n, Err::NotMatrixAlgebra,
          "minimal left ideal has dimension " + std::to_string(lbasis.size()) +
              ", expected " + std::to_string(n));
  // psi(c) = matrix of left multiplication on L
  Mat<GF> lmat(cf, d, n);
  for (unsigned j = 0; j < n; ++j)
    for (unsigned i = 0; i < d; ++i) lmat.at(i, j) = lbasis[j][i];
  iso.to_matrix = Mat<GF>(cf, d, d);
  for (unsigned k = 0; k < d; ++k) {
    for (unsigned j = 0; j < n; ++j) {
      auto col = C.mul(C.basis(k), lbasis[j]);
      auto coords = solve(lmat, col);
      require(coords.has_value(), Err::NotMatrixAlgebra, "left ideal is not invariant");
      for (unsigned i = 0; i < n; ++i) iso.to_matrix.at(i * n + j, k) = (*coords)[i];
    }
  }
  // invert: the map must be bijective
  Mat<GF> aug(cf, d, 2 * d);
  for (unsigned r = 0; r < d; ++r) {
    for (unsigned c = 0; c < d; ++c) aug.at(r, c) = iso.to_matrix.at(r, c);
    aug.at(r, d + r) = cf.one();
  }
  auto ech = rref(std::move(aug));
  unsigned rank = 0;
  for (auto pc : ech.pivot_cols)
    if (pc < d) ++rank;
  require(rank == d, Err::NotMatrixAlgebra, "regular representation on Ce is not bijective");
  iso.from_matrix = Mat<GF>(cf, d, d);
  for (unsigned r = 0; r < d; ++r)
    for (unsigned c = 0; c < d; ++c) iso.from_matrix.at(r, c) = ech.reduced.at(r, d + c);
  return iso;
}

/// Solve P X = alpha(X) P over the matrix-unit basis and return an invertible
/// solution, normalized so its first nonzero entry is 1.  alpha acts on
/// C-coordinates; transport through the matrix-units isomorphism is included.
inline Mat<GF> skolem_noether_lift(const MatrixUnitsIso& iso, const Mat<GF>& alpha_on_c) {
  const GF& cf = alpha_on_c.field();
  unsigned n = iso.n;
  unsigned d = n * n;
  Mat<GF> abar = iso.to_matrix * alpha_on_c * iso.from_matrix;
  // multiplicativity pre-check on matrix units (rejects anti-automorphisms)
  auto mat_of = [&](const Vec<GF>& coords) {
    Mat<GF> m(cf, n, n);
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j) m.at(i, j) = coords[i * n + j];
    return m;
  };
  auto unit_coords = [&](unsigned i, unsigned j) {
    Vec<GF> v(d, cf.zero());
    v[i * n + j] = cf.one();
    return v;
  };
  for (unsigned a = 0; a < n; ++a)
    for (unsigned b = 0; b < n; ++b)
      for (unsigned c = 0; c < n; ++c)
        for (unsigned e2 = 0; e2 < n; ++e2) {
          Mat<GF> lhs = mat_of(abar.apply(unit_coords(a, b))) * mat_of(abar.apply(unit_coords(c, e2)));
          Mat<GF> rhs = b == c ? mat_of(abar.apply(unit_coords(a, e2))) : Mat<GF>(cf, n, n);
          require(lhs == rhs, Err::NotInner,
                  "input is not an algebra automorphism (multiplicativity fails)");
        }
  // P E_ij - abar(E_ij) P = 0: linear in the n^2 entries of P
  Mat<GF> sys(cf, d * d, d);
  unsigned row = 0;
  for (unsigned bi = 0; bi < n; ++bi)
    for (unsigned bj = 0; bj < n; ++bj) {
      Mat<GF> x(cf, n, n);
      x.at(bi, bj) = cf.one();
      Mat<GF> ax = mat_of(abar.apply(unit_coords(bi, bj)));
      // (P x - ax P)[r][c] = sum_k P[r][k] x[k][c] - ax[r][k] P[k][c]
      for (unsigned r = 0; r < n; ++r)
        for (unsigned c = 0; c < n; ++c) {
          for (unsigned k = 0; k < n; ++k) {
            sys.at(row, r * n + k) = sys.at(row, r * n + k) + x.at(k, c);
            sys.at(row, k * n + c) = sys.at(row, k * n + c) - ax.at(r, k);
          }
          ++row;
        }
    }
  auto ker = kernel_basis(sys);
  require(!ker.empty(), Err::NotInner, "no nonzero intertwiner exists");
  // by Schur the solution space of an automorphism is one line; any nonzero
  // kernel vector that is invertible works
  for (const auto& cand : ker) {
    Mat<GF> p = mat_of(cand);
    if (rank_rref(p) != n) continue;
    GFElem lead = cf.zero();
    for (unsigned i = 0; i < d && lead.is_zero(); ++i)
      if (!cand[i].is_zero()) lead = cand[i];
    auto inv = lead.inv();
    Mat<GF> norm(cf, n, n);
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j) norm.at(i, j) = p.at(i, j) * inv;
    return norm;
  }
  fail(Err::NotInner, "the intertwiner space contains no invertible element");
}

/// lifts for every action matrix of the representation
inline void skolem_noether_lifts(AutomorphismRep& rep, const MatrixUnitsIso& iso) {
  rep.degree = iso.n;
  rep.lifts.clear();
  for (const auto& a : rep.action) rep.lifts.push_back(skolem_noether_lift(iso, a));
}

}  // namespace hf

#endif
