#ifndef HASSEFORGE_LATTICE_HPP
#define HASSEFORGE_LATTICE_HPP

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hasseforge/galois.hpp"

// Invariant-subspace lattices of matrix groups over F_q, the right-ideal
// correspondence for M_n, and the classification of delta-right-ideal
// structure by pulling H-stable ideals back through the Galois action.

namespace hf {

/// subspaces of F_q^n under the column action u -> g u, stored as rref bases
struct SubmoduleLattice {
  unsigned n = 0;
  std::vector<std::vector<Vec<GF>>> subspaces;  // sorted canonically, includes 0 and full
  bool completely_reducible = false;
  bool irreducible = false;
  bool indecomposable = false;
  bool exhaustive = true;
  Json to_json() const {
    Json j;
    j["n"] = n;
    j["count"] = subspaces.size();
    j["completely_reducible"] = completely_reducible;
    j["irreducible"] = irreducible;
    j["indecomposable"] = indecomposable;
    j["exhaustive"] = exhaustive;
    Json dims = Json::array();
    for (const auto& u : subspaces) dims.push_back(u.size());
    j["dims"] = dims;
    return j;
  }
};

namespace detail {

inline std::vector<Vec<GF>> rref_rows(const GF& cf, std::vector<Vec<GF>> rows, unsigned n) {
  SpanBuilder<GF> sb(cf, n);
  for (auto& r : rows) sb.insert(r);
  auto out = sb.rows();
  // canonical order: full Gauss-Jordan then sort rows by pivot
  Mat<GF> m(cf, static_cast<unsigned>(out.size()), n);
  for (unsigned i = 0; i < out.size(); ++i)
    for (unsigned j = 0; j < n; ++j) m.at(i, j) = out[i][j];
  auto ech = rref(std::move(m));
  std::vector<Vec<GF>> rr;
  for (unsigned i = 0; i < ech.rank; ++i) rr.push_back(ech.reduced.row(i));
  return rr;
}

inline std::string subspace_key(const std::vector<Vec<GF>>& rows) {
  std::string key;
  for (const auto& r : rows) {
    for (const auto& e : r) key += e.str() + ",";
    key += ";";
  }
  return key;
}

inline bool subspace_invariant(const GF& cf, const std::vector<Vec<GF>>& rows,
                               const std::vector<Mat<GF>>& gens, unsigned n) {
  SpanBuilder<GF> sb(cf, n);
  for (const auto& r : rows) sb.insert(r);
  for (const auto& g : gens)
    for (const auto& r : rows)
      if (!sb.contains(g.apply(r))) return false;
  return true;
}

/// number of subspaces of F_q^n (sum of Gaussian binomials)
inline std::uint64_t count_subspaces(std::uint64_t q, unsigned n) {
  // [n choose r]_q = prod (q^(n-i) - 1) / (q^(r-i) - 1)
  std::uint64_t total = 0;
  for (unsigned r = 0; r <= n; ++r) {
    long double acc = 1;
    for (unsigned i = 0; i < r; ++i) {
      long double num = std::pow((long double)q, (int)(n - i)) - 1;
      long double den = std::pow((long double)q, (int)(r - i)) - 1;
      acc *= num / den;
    }
    total += static_cast<std::uint64_t>(acc + 0.5);
  }
  return total;
}

/// all subspaces of F_q^n by enumerating rref patterns
inline std::vector<std::vector<Vec<GF>>> enumerate_subspaces(const GF& cf, unsigned n) {
  std::vector<std::vector<Vec<GF>>> out;
  out.push_back({});  // zero space
  std::uint64_t q = cf.order();
  for (unsigned r = 1; r <= n; ++r) {
    // choose pivot columns
    std::vector<unsigned> pivots(r);
    for (unsigned i = 0; i < r; ++i) pivots[i] = i;
    auto next_combo = [&]() {
      int i = static_cast<int>(r) - 1;
      while (i >= 0 && pivots[i] == n - r + i) --i;
      if (i < 0) return false;
      ++pivots[i];
      for (unsigned j = i + 1; j < r; ++j) pivots[j] = pivots[j - 1] + 1;
      return true;
    };
    do {
      // free positions: (row i, col j) with j > pivots[i] and j not a pivot
      std::vector<std::pair<unsigned, unsigned>> frees;
      for (unsigned i = 0; i < r; ++i)
        for (unsigned j = pivots[i] + 1; j < n; ++j)
          if (std::find(pivots.begin(), pivots.end(), j) == pivots.end())
            frees.emplace_back(i, j);
      std::uint64_t combos = 1;
      for (std::size_t i = 0; i < frees.size(); ++i) combos *= q;
      for (std::uint64_t code = 0; code < combos; ++code) {
        std::vector<Vec<GF>> rows(r, Vec<GF>(n, cf.zero()));
        for (unsigned i = 0; i < r; ++i) rows[i][pivots[i]] = cf.one();
        std::uint64_t rem = code;
        for (const auto& [i, j] : frees) {
          rows[i][j] = cf.nth(rem % q);
          rem /= q;
        }
        out.push_back(std::move(rows));
      }
    } while (next_combo());
  }
  return out;
}

}  // namespace detail

/*
 * Invariant subspaces of the group generated by the given matrices, acting on
 * row vectors from the right.  Exhaustive enumeration whenever the subspace
 * count is desk-scale; otherwise a seeded spin-up search (kernels of group
 * algebra elements spun up under the action, closed under sum and
 * intersection) with the exhaustive flag cleared.
 */
inline SubmoduleLattice submodule_lattice(const GF& cf, unsigned n, std::vector<Mat<GF>> gens,
                                          std::uint64_t seed = 29,
                                          bool force_randomized = false) {
  for (const auto& g : gens)
    require(rank_rref(g) == n, Err::BadDegree, "generators must be invertible");
  if (gens.empty()) gens.push_back(Mat<GF>::identity(cf, n));
  SubmoduleLattice lat;
  lat.n = n;
  std::map<std::string, std::vector<Vec<GF>>> found;
  auto add = [&](std::vector<Vec<GF>> rows) {
    auto rr = detail::rref_rows(cf, std::move(rows), n);
    found.emplace(detail::subspace_key(rr), std::move(rr));
  };

  if (!force_randomized && detail::count_subspaces(cf.order(), n) <= 20000) {
    for (auto& u : detail::enumerate_subspaces(cf, n))
      if (detail::subspace_invariant(cf, u, gens, n)) add(std::move(u));
  } else {
    lat.exhaustive = false;
    add({});  // zero
    std::vector<Vec<GF>> full;
    for (unsigned i = 0; i < n; ++i) {
      Vec<GF> e(n, cf.zero());
      e[i] = cf.one();
      full.push_back(std::move(e));
    }
    add(full);
    Rng rng(seed);
    auto spin_up = [&](const Vec<GF>& v) {
      SpanBuilder<GF> sb(cf, n);
      std::vector<Vec<GF>> queue{v};
      while (!queue.empty()) {
        Vec<GF> w = std::move(queue.back());
        queue.pop_back();
        if (!sb.insert(w)) continue;
        for (const auto& g : gens) queue.push_back(g.apply(w));
      }
      return sb.rows();
    };
    // spin up seed vectors: every vector when the space is tiny, plus the
    // kernels of (a - lambda) for random group-algebra elements a
    long double space = std::pow((long double)cf.order(), (int)n);
    if (space <= 4096) {
      std::uint64_t total = static_cast<std::uint64_t>(space + 0.5);
      for (std::uint64_t code = 1; code < total; ++code) {
        Vec<GF> v(n, cf.zero());
        std::uint64_t rem = code;
        for (unsigned i = 0; i < n; ++i) {
          v[i] = cf.nth(rem % cf.order());
          rem /= cf.order();
        }
        add(spin_up(v));
      }
    } else {
      for (unsigned trial = 0; trial < 40; ++trial) {
        Vec<GF> v(n, cf.zero());
        for (unsigned i = 0; i < n; ++i) v[i] = cf.sample(rng);
        add(spin_up(v));
      }
    }
    for (unsigned trial = 0; trial < 60; ++trial) {
      Mat<GF> a(cf, n, n);
      for (unsigned w = 0; w < 3; ++w) {
        Mat<GF> word = Mat<GF>::identity(cf, n);
        unsigned len = 1 + static_cast<unsigned>(rng.below(3));
        for (unsigned l = 0; l < len; ++l) word = word * gens[rng.below(gens.size())];
        GFElem c = cf.sample(rng);
        for (unsigned i = 0; i < n; ++i)
          for (unsigned j = 0; j < n; ++j) a.at(i, j) = a.at(i, j) + c * word.at(i, j);
      }
      for (std::uint64_t li = 0; li < cf.order(); ++li) {
        Mat<GF> shifted = a;
        auto lam = cf.nth(li);
        for (unsigned i = 0; i < n; ++i) shifted.at(i, i) = shifted.at(i, i) - lam;
        for (const auto& v : kernel_basis(shifted)) add(spin_up(v));
      }
    }
    // close under sums and intersections to a fixed point
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<std::vector<Vec<GF>>> cur;
      for (const auto& [k, v] : found) cur.push_back(v);
      for (std::size_t i = 0; i < cur.size(); ++i)
        for (std::size_t j = i + 1; j < cur.size(); ++j) {
          std::vector<Vec<GF>> sum = cur[i];
          sum.insert(sum.end(), cur[j].begin(), cur[j].end());
          auto rs = detail::rref_rows(cf, sum, n);
          if (!found.count(detail::subspace_key(rs))) {
            found.emplace(detail::subspace_key(rs), rs);
            grew = true;
          }
        }
    }
  }

  for (auto& [k, v] : found) lat.subspaces.push_back(v);
  // flags
  unsigned full_dim = n;
  lat.irreducible = lat.subspaces.size() == 2 || n == 1;
  auto dim_of = [](const std::vector<Vec<GF>>& u) { return static_cast<unsigned>(u.size()); };
  auto direct_sum = [&](const std::vector<Vec<GF>>& a, const std::vector<Vec<GF>>& b) {
    if (dim_of(a) + dim_of(b) != full_dim) return false;
    std::vector<Vec<GF>> all = a;
    all.insert(all.end(), b.begin(), b.end());
    return detail::rref_rows(cf, all, n).size() == full_dim;
  };
  lat.completely_reducible = true;
  for (const auto& u : lat.subspaces) {
    bool has_complement = false;
    for (const auto& w : lat.subspaces)
      if (direct_sum(u, w)) {
        has_complement = true;
        break;
      }
    if (!has_complement) {
      lat.completely_reducible = false;
      break;
    }
  }
  lat.indecomposable = true;
  for (const auto& u : lat.subspaces) {
    if (dim_of(u) == 0 || dim_of(u) == full_dim) continue;
    for (const auto& w : lat.subspaces) {
      if (dim_of(w) == 0 || dim_of(w) == full_dim) continue;
      if (direct_sum(u, w)) {
        lat.indecomposable = false;
        break;
      }
    }
    if (!lat.indecomposable) break;
  }
  return lat;
}

/// right ideals of M_n(F_q): I_U = {matrices whose column space lies in U}
struct RightIdealInfo {
  std::vector<Vec<GF>> subspace;        // basis of U
  std::vector<Vec<GF>> ideal_basis;     // n^2-coordinate vectors, dim = n * dim U
};

/// H given by algebra-automorphism matrices on M_n coordinates; stability of
/// I_U corresponds to invariance of U under the Skolem-Noether lifts
inline std::vector<RightIdealInfo> stable_right_ideals(const GF& cf, unsigned n,
                                                       const std::vector<Mat<GF>>& h_action) {
  MatrixUnitsIso std_iso;
  std_iso.n = n;
  std_iso.to_matrix = Mat<GF>::identity(cf, n * n);
  std_iso.from_matrix = Mat<GF>::identity(cf, n * n);
  std::vector<Mat<GF>> lifts;
  for (const auto& a : h_action) lifts.push_back(skolem_noether_lift(std_iso, a));
  auto lat = submodule_lattice(cf, n, lifts);
  std::vector<RightIdealInfo> out;
  for (const auto& u : lat.subspaces) {
    RightIdealInfo info;
    info.subspace = u;
    for (unsigned c = 0; c < n; ++c)
      for (const auto& col : u) {
        Vec<GF> m(n * n, cf.zero());
        for (unsigned r = 0; r < n; ++r) m[r * n + c] = col[r];
        info.ideal_basis.push_back(std::move(m));
      }
    // direct stability checks: right multiplication by units and the H-action
    SpanBuilder<GF> sb(cf, n * n);
    for (const auto& b : info.ideal_basis) sb.insert(b);
    for (const auto& b : info.ideal_basis) {
      for (unsigned k = 0; k < n; ++k)
        for (unsigned l = 0; l < n; ++l) {
          // (M E_kl) has column l = column k of M
          Vec<GF> prod(n * n, cf.zero());
          for (unsigned r = 0; r < n; ++r) prod[r * n + l] = b[r * n + k];
          require(sb.contains(prod), Err::Internal, "right-ideal stability failed");
        }
      for (const auto& a : h_action)
        require(sb.contains(a.apply(b)), Err::Internal, "H-stability failed");
    }
    out.push_back(std::move(info));
  }
  return out;
}

struct PulledIdeal {
  unsigned u_dim = 0;                       // dim of the subspace on the H side
  unsigned dim = 0;                         // dim_F of the ideal in A
  std::vector<Vec<FunField<GF>>> basis;     // elements of A, coordinates over F
};

struct IdealClassification {
  bool completely_reducible = false;
  bool irreducible = false;
  bool indecomposable = false;
  SubmoduleLattice lattice;
  std::vector<PulledIdeal> ideals;
  std::vector<std::string> certificates;
  Json to_json() const {
    Json j;
    Json flags;
    flags["delta_completely_reducible"] = completely_reducible;
    flags["delta_irreducible"] = irreducible;
    flags["delta_indecomposable"] = indecomposable;
    j["flags"] = flags;
    Json ids = Json::array();
    for (const auto& i : ideals) {
      Json ij;
      ij["dim"] = i.dim;
      ij["u_dim"] = i.u_dim;
      ids.push_back(std::move(ij));
    }
    j["ideals"] = ids;
    j["lattice"] = lattice.to_json();
    j["certificates"] = certificates;
    return j;
  }
};

/*
 * Classification of the delta-right-ideal structure of A through the
 * correspondence with H-stable right ideals of M_n(F^delta): every H-stable
 * I_U is pulled back to J = (I (x) K)^G intersected with A via the Reynolds
 * average (1/|G|) sum sigma, and each J is independently verified to be a
 * right ideal stable under every delta^(n).
 */
inline IdealClassification classify_delta_structure(
    const DeltaAlgebra<GF>& A, const KummerExtension& ext, const DeltaAlgebra<GF>& AK,
    const ConstantsBasis& C, const AutomorphismRep& rep, const MatrixUnitsIso& iso,
    unsigned N) {
  const GF& cf = C.constant_field;
  const auto& F = A.algebra().field();
  const auto& K = AK.algebra().field();
  unsigned e = ext.degree();
  require(e % cf.characteristic() != 0, Err::ReynoldsDenominator,
          "group order divisible by the characteristic");
  require(rep.lifts.size() == rep.action.size(), Err::Internal,
          "lifts missing: run skolem_noether_lifts first");
  unsigned n = iso.n;
  unsigned d = A.algebra().dim();
  require(C.dim() == n * n && C.dim() == d, Err::PullbackRankMismatch,
          "constants must form a full matrix algebra of the ambient degree");

  IdealClassification cl;
  cl.lattice = submodule_lattice(cf, n, rep.lifts);
  cl.completely_reducible = cl.lattice.completely_reducible;
  cl.irreducible = cl.lattice.irreducible;
  cl.indecomposable = cl.lattice.indecomposable;

  GFElem inv_e = cf.from_int(static_cast<long long>(e)).inv();
  auto reynolds = [&](const std::vector<RatFunc<GF>>& v) {
    std::vector<RatFunc<GF>> acc(v.size(), K.zero());
    for (unsigned j = 0; j < e; ++j)
      for (unsigned c = 0; c < v.size(); ++c) acc[c] = acc[c] + ext.galois(v[c], j);
    for (auto& x : acc) x = x.scaled(inv_e);
    return acc;
  };

  for (const auto& u : cl.lattice.subspaces) {
    PulledIdeal ideal;
    ideal.u_dim = static_cast<unsigned>(u.size());
    // basis of I_U inside the constants algebra, as elements of A (x) K
    std::vector<std::vector<RatFunc<GF>>> span_k;
    for (unsigned c = 0; c < n; ++c)
      for (const auto& col : u) {
        Vec<GF> mcoords(n * n, cf.zero());
        for (unsigned r = 0; r < n; ++r) mcoords[r * n + c] = col[r];
        Vec<GF> ccoords = iso.from_matrix.apply(mcoords);
        std::vector<RatFunc<GF>> elem(d, K.zero());
        for (unsigned i = 0; i < C.dim(); ++i) {
          if (ccoords[i].is_zero()) continue;
          for (unsigned c = 0; c < d; ++c)
            elem[c] = elem[c] + C.vectors[i][c].scaled(ccoords[i]);
        }
        span_k.push_back(std::move(elem));
      }
    // Reynolds over the K-spanning set {w s^a}
    SpanBuilder<FunField<GF>> fspan(F, d);
    std::vector<Vec<FunField<GF>>> basis;
    for (const auto& w : span_k) {
      RatFunc<GF> spow = K.one();
      for (unsigned a = 0; a < e; ++a) {
        if (a > 0) spow = spow * K.gen();
        std::vector<RatFunc<GF>> scaled(d, K.zero());
        for (unsigned c = 0; c < d; ++c) scaled[c] = w[c] * spow;
        auto avg = reynolds(scaled);
        // invariants have coordinates in the embedded base field
        std::vector<RatFunc<GF>> down(d, F.zero());
        for (unsigned c = 0; c < d; ++c) down[c] = ext.to_base(avg[c]);
        if (fspan.insert(down)) basis.push_back(fspan.rows().back());
      }
    }
    ideal.dim = static_cast<unsigned>(basis.size());
    if (ideal.dim != n * ideal.u_dim)
      fail(Err::PullbackRankMismatch,
           "pulled-back ideal has dimension " + std::to_string(ideal.dim) + ", expected " +
               std::to_string(n * ideal.u_dim));
    // independent verification: right-ideal and delta-stability inside A
    for (const auto& b : basis) {
      for (unsigned i = 0; i < d; ++i)
        require(fspan.contains(A.algebra().mul(b, A.algebra().basis(i))), Err::Internal,
                "pullback is not a right ideal");
      auto tow = A.elem_tower(b, N);
      for (unsigned nn = 1; nn <= N; ++nn)
        require(fspan.contains(tow[nn]), Err::Internal,
                "pullback is not stable under delta^(" + std::to_string(nn) + ")");
    }
    ideal.basis = std::move(basis);
    cl.ideals.push_back(std::move(ideal));
  }

  // bookkeeping certificates
  if (cl.completely_reducible) {
    // minimal nonzero ideals must sum to A with matching ranks
    std::vector<const PulledIdeal*> atoms;
    for (const auto& i : cl.ideals) {
      if (i.u_dim == 0) continue;
      bool minimal = true;
      for (const auto& j : cl.ideals)
        if (j.u_dim > 0 && j.u_dim < i.u_dim) {
          // contained? compare spans
          SpanBuilder<FunField<GF>> sp(F, d);
          for (const auto& b : i.basis) sp.insert(b);
          bool inside = true;
          for (const auto& b : j.basis)
            if (!sp.contains(b)) {
              inside = false;
              break;
            }
          if (inside) minimal = false;
        }
      if (minimal) atoms.push_back(&i);
    }
    SpanBuilder<FunField<GF>> total(F, d);
    unsigned rank_sum = 0;
    for (const auto* a : atoms) {
      for (const auto& b : a->basis) total.insert(b);
      rank_sum += a->dim;
    }
    if (total.rank() == d)
      cl.certificates.push_back("minimal delta-right ideals span the algebra (rank " +
                                std::to_string(rank_sum) + " over dimension " +
                                std::to_string(d) + ")");
  }
  return cl;
}

/// the reductivity certificate for irreducible classifications
inline std::string reductivity_note(const IdealClassification& cl) {
  if (!cl.irreducible) return "";
  return "image of the Galois group is PGL_n-irreducible: the invariant-subspace lattice is "
         "trivial, so the image lies in no proper parabolic subgroup; in particular it is "
         "reductive";
}

}  // namespace hf

#endif
