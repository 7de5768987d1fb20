#ifndef HASSEFORGE_ALGEBRA_HPP
#define HASSEFORGE_ALGEBRA_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hasseforge/kummer.hpp"
#include "hasseforge/linalg.hpp"

// Finite-dimensional associative unital algebras via structure constants.
// Every constructor lowers to one representation, so a single validation and
// arithmetic path serves matrix algebras, symbol algebras and crossed
// products alike.

namespace hf {

template <class F>
class StructureAlgebra {
 public:
  using Elem = typename F::Elem;
  using Vect = std::vector<Elem>;

  /// c[i][j] is the coordinate vector of e_i e_j; validation checks all unit
  /// laws and every associativity triple (e_i e_j) e_k = e_i (e_j e_k).
  StructureAlgebra(F field, std::vector<std::string> labels,
                   std::vector<std::vector<Vect>> constants, Vect unit, bool validate = true)
      : f_(std::move(field)),
        dim_(static_cast<unsigned>(labels.size())),
        labels_(std::move(labels)),
        c_(std::move(constants)),
        unit_(std::move(unit)) {
    require(dim_ >= 1, Err::BadUnit, "algebra must have positive dimension");
    require(c_.size() == dim_, Err::NotAssociative, "structure constant table has wrong shape");
    for (const auto& row : c_) {
      require(row.size() == dim_, Err::NotAssociative, "structure constant table has wrong shape");
      for (const auto& v : row)
        require(v.size() == dim_, Err::NotAssociative, "structure constant table has wrong shape");
    }
    require(unit_.size() == dim_, Err::BadUnit, "unit vector has wrong dimension");
    if (validate) {
      for (unsigned i = 0; i < dim_; ++i) {
        if (mul(unit_, basis(i)) != basis(i) || mul(basis(i), unit_) != basis(i))
          fail(Err::BadUnit, "unit laws fail on basis element " + labels_[i]);
      }
      for (unsigned i = 0; i < dim_; ++i)
        for (unsigned j = 0; j < dim_; ++j)
          for (unsigned k = 0; k < dim_; ++k) {
            if (mul(c_[i][j], basis(k)) != mul(basis(i), c_[j][k]))
              fail(Err::NotAssociative, "associativity fails at (" + labels_[i] + "," +
                                            labels_[j] + "," + labels_[k] + ")");
          }
    }
  }

  const F& field() const { return f_; }
  unsigned dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const Vect& unit() const { return unit_; }
  const Vect& constants(unsigned i, unsigned j) const { return c_[i][j]; }

  Vect zero() const { return Vect(dim_, f_.zero()); }
  Vect basis(unsigned i) const {
    Vect v = zero();
    v[i] = f_.one();
    return v;
  }

  Vect mul(const Vect& x, const Vect& y) const {
    Vect r = zero();
    for (unsigned i = 0; i < dim_; ++i) {
      if (x[i].is_zero()) continue;
      for (unsigned j = 0; j < dim_; ++j) {
        if (y[j].is_zero()) continue;
        auto scale = x[i] * y[j];
        const Vect& cij = c_[i][j];
        for (unsigned k = 0; k < dim_; ++k)
          if (!cij[k].is_zero()) r[k] = r[k] + cij[k] * scale;
      }
    }
    return r;
  }

  Vect scale(const Vect& x, const Elem& s) const {
    Vect r = x;
    for (auto& e : r) e = e * s;
    return r;
  }
  Vect add(const Vect& x, const Vect& y) const {
    Vect r = x;
    for (unsigned i = 0; i < dim_; ++i) r[i] = r[i] + y[i];
    return r;
  }
  Vect sub(const Vect& x, const Vect& y) const {
    Vect r = x;
    for (unsigned i = 0; i < dim_; ++i) r[i] = r[i] - y[i];
    return r;
  }

  Vect power(Vect x, unsigned e) const {
    Vect r = unit_;
    while (e) {
      if (e & 1) r = mul(r, x);
      x = mul(x, x);
      e >>= 1;
    }
    return r;
  }

  /// matrix of left multiplication by z on coordinates
  Mat<F> left_mult_matrix(const Vect& z) const {
    Mat<F> m(f_, dim_, dim_);
    for (unsigned j = 0; j < dim_; ++j) {
      Vect col = mul(z, basis(j));
      for (unsigned i = 0; i < dim_; ++i) m.at(i, j) = col[i];
    }
    return m;
  }
  Mat<F> right_mult_matrix(const Vect& z) const {
    Mat<F> m(f_, dim_, dim_);
    for (unsigned j = 0; j < dim_; ++j) {
      Vect col = mul(basis(j), z);
      for (unsigned i = 0; i < dim_; ++i) m.at(i, j) = col[i];
    }
    return m;
  }

  std::string elem_str(const Vect& v) const {
    std::string out;
    for (unsigned i = 0; i < dim_; ++i) {
      if (v[i].is_zero()) continue;
      if (!out.empty()) out += " + ";
      out += "(" + v[i].str() + ")*" + labels_[i];
    }
    return out.empty() ? "0" : out;
  }

  Json to_json() const {
    Json j;
    j["field"] = hf::to_json(f_);
    j["dim"] = dim_;
    j["labels"] = labels_;
    Json cc = Json::array();
    for (unsigned i = 0; i < dim_; ++i) {
      Json row = Json::array();
      for (unsigned jj = 0; jj < dim_; ++jj) {
        Json v = Json::array();
        for (unsigned k = 0; k < dim_; ++k) v.push_back(hf::to_json(c_[i][jj][k]));
        row.push_back(std::move(v));
      }
      cc.push_back(std::move(row));
    }
    j["constants"] = cc;
    Json u = Json::array();
    for (unsigned k = 0; k < dim_; ++k) u.push_back(hf::to_json(unit_[k]));
    j["unit"] = u;
    return j;
  }

 private:
  F f_;
  unsigned dim_;
  std::vector<std::string> labels_;
  std::vector<std::vector<Vect>> c_;
  Vect unit_;
};

/// M_n over any scalar or function field, on the matrix-unit basis E_ij with
/// E_ij E_kl = [j == k] E_il
template <class F>
StructureAlgebra<F> matrix_algebra(F field, unsigned n) {
  unsigned d = n * n;
  auto idx = [n](unsigned i, unsigned j) { return i * n + j; };
  std::vector<std::string> labels(d);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j)
      labels[idx(i, j)] = "E" + std::to_string(i + 1) + std::to_string(j + 1);
  std::vector<std::vector<std::vector<typename F::Elem>>> c(
      d, std::vector<std::vector<typename F::Elem>>(d,
                                                    std::vector<typename F::Elem>(d, field.zero())));
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j)
      for (unsigned k = 0; k < n; ++k)
        for (unsigned l = 0; l < n; ++l)
          if (j == k) c[idx(i, j)][idx(k, l)][idx(i, l)] = field.one();
  std::vector<typename F::Elem> unit(d, field.zero());
  for (unsigned i = 0; i < n; ++i) unit[idx(i, i)] = field.one();
  return StructureAlgebra<F>(std::move(field), std::move(labels), std::move(c), std::move(unit));
}

/// Symbol algebra of degree n over F = F_q(t): basis x^i y^j with
/// x^n = a, y^n = b, y x = zeta x y for a primitive n-th root of unity zeta.
inline StructureAlgebra<FunField<GF>> symbol_algebra(FunField<GF> field, const RatFunc<GF>& a,
                                                     const RatFunc<GF>& b, unsigned n,
                                                     const GFElem& zeta) {
  require(!a.is_zero() && !b.is_zero(), Err::BadRoot, "symbol parameters must be nonzero");
  require(n >= 1, Err::BadDegree, "degree must be positive");
  require(zeta.pow(n).is_one(), Err::BadRoot, "zeta^n must be 1");
  for (unsigned r = 2; r <= n; ++r)
    if (n % r == 0 && detail::is_prime_u64(r))
      require(!zeta.pow(n / r).is_one(), Err::BadRoot, "zeta is not a primitive n-th root");
  unsigned d = n * n;
  auto idx = [n](unsigned i, unsigned j) { return i * n + j; };
  std::vector<std::string> labels(d);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) {
      std::string s = "1";
      if (i) s = i == 1 ? "x" : "x^" + std::to_string(i);
      if (j) {
        if (i) s += "*";
        else s.clear();
        s += j == 1 ? "y" : "y^" + std::to_string(j);
      }
      labels[idx(i, j)] = s;
    }
  std::vector<std::vector<std::vector<RatFunc<GF>>>> c(
      d, std::vector<std::vector<RatFunc<GF>>>(d, std::vector<RatFunc<GF>>(d, field.zero())));
  // (x^i y^j)(x^k y^l) = zeta^(jk) x^(i+k) y^(j+l), reduced by the relations
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j)
      for (unsigned k = 0; k < n; ++k)
        for (unsigned l = 0; l < n; ++l) {
          RatFunc<GF> coef = field.from_coeff(zeta.pow((j * k) % n));
          unsigned xi = i + k, yj = j + l;
          if (xi >= n) {
            xi -= n;
            coef = coef * a;
          }
          if (yj >= n) {
            yj -= n;
            coef = coef * b;
          }
          c[idx(i, j)][idx(k, l)][idx(xi, yj)] = coef;
        }
  std::vector<RatFunc<GF>> unit(d, field.zero());
  unit[0] = field.one();
  return StructureAlgebra<FunField<GF>>(std::move(field), std::move(labels), std::move(c),
                                        std::move(unit));
}

/// Crossed product (K|F, Gal(K|F), f) as an F-algebra on the basis
/// s^a u_(sigma^b) with u_sigma k = sigma(k) u_sigma and
/// u_(sigma^a) u_(sigma^b) = f(sigma^a, sigma^b) u_(sigma^(a+b)).
inline StructureAlgebra<FunField<GF>> crossed_product(const KummerExtension& ext,
                                                      const Cocycle& f) {
  require(f.order() == ext.degree(), Err::CocycleInvalid,
          "cocycle order does not match the extension degree");
  unsigned e = ext.degree();
  unsigned d = e * e;
  const FunField<GF>& F = ext.base();
  const FunField<GF>& K = ext.top();
  auto idx = [e](unsigned a, unsigned b) { return a * e + b; };
  std::vector<std::string> labels(d);
  for (unsigned a = 0; a < e; ++a)
    for (unsigned b = 0; b < e; ++b) {
      std::string s = a == 0 ? "" : (a == 1 ? "s" : "s^" + std::to_string(a));
      std::string u = b == 0 ? "" : (b == 1 ? "u" : "u" + std::to_string(b));
      std::string lbl = s.empty() && u.empty() ? "1" : (s.empty() ? u : (u.empty() ? s : s + "*" + u));
      labels[idx(a, b)] = lbl;
    }
  std::vector<std::vector<std::vector<RatFunc<GF>>>> c(
      d, std::vector<std::vector<RatFunc<GF>>>(d, std::vector<RatFunc<GF>>(d, F.zero())));
  RatFunc<GF> sK = K.gen();
  for (unsigned a1 = 0; a1 < e; ++a1)
    for (unsigned b1 = 0; b1 < e; ++b1)
      for (unsigned a2 = 0; a2 < e; ++a2)
        for (unsigned b2 = 0; b2 < e; ++b2) {
          // (s^a1 u_b1)(s^a2 u_b2) = s^a1 sigma^b1(s^a2) f(b1, b2) u_(b1+b2)
          RatFunc<GF> kcoef = K.one();
          for (unsigned i = 0; i < a1 + a2; ++i) kcoef = kcoef * sK;
          kcoef = kcoef.scaled(ext.zeta().pow((static_cast<std::uint64_t>(b1) * a2) % e));
          kcoef = kcoef * f.value(b1, b2);
          auto coords = ext.decompose(kcoef);  // over F w.r.t. s-powers
          unsigned bout = (b1 + b2) % e;
          for (unsigned a = 0; a < e; ++a) c[idx(a1, b1)][idx(a2, b2)][idx(a, bout)] = coords[a];
        }
  std::vector<RatFunc<GF>> unit(d, F.zero());
  unit[0] = F.one();
  return StructureAlgebra<FunField<GF>>(F, std::move(labels), std::move(c), std::move(unit));
}

/// Same structure constants over K, coefficients mapped through t -> s^e.
inline StructureAlgebra<FunField<GF>> base_change(const StructureAlgebra<FunField<GF>>& A,
                                                  const KummerExtension& ext) {
  unsigned d = A.dim();
  std::vector<std::vector<std::vector<RatFunc<GF>>>> c(
      d, std::vector<std::vector<RatFunc<GF>>>(d,
                                               std::vector<RatFunc<GF>>(d, ext.top().zero())));
  for (unsigned i = 0; i < d; ++i)
    for (unsigned j = 0; j < d; ++j)
      for (unsigned k = 0; k < d; ++k) c[i][j][k] = ext.embed(A.constants(i, j)[k]);
  std::vector<RatFunc<GF>> unit;
  for (unsigned k = 0; k < d; ++k) unit.push_back(ext.embed(A.unit()[k]));
  // the structure constants were already validated over F
  return StructureAlgebra<FunField<GF>>(ext.top(), A.labels(), std::move(c), std::move(unit),
                                        false);
}

template <class F>
StructureAlgebra<F> tensor_algebras(const StructureAlgebra<F>& A, const StructureAlgebra<F>& B) {
  require(A.field().same(B.field()), Err::FieldMismatch,
          "tensor factors must share the base field");
  const F& field = A.field();
  unsigned da = A.dim(), db = B.dim(), d = da * db;
  auto idx = [db](unsigned i, unsigned j) { return i * db + j; };
  std::vector<std::string> labels(d);
  for (unsigned i = 0; i < da; ++i)
    for (unsigned j = 0; j < db; ++j)
      labels[idx(i, j)] = A.labels()[i] + "(x)" + B.labels()[j];
  std::vector<std::vector<std::vector<typename F::Elem>>> c(
      d, std::vector<std::vector<typename F::Elem>>(d,
                                                    std::vector<typename F::Elem>(d, field.zero())));
  for (unsigned i = 0; i < da; ++i)
    for (unsigned ii = 0; ii < db; ++ii)
      for (unsigned j = 0; j < da; ++j)
        for (unsigned jj = 0; jj < db; ++jj) {
          const auto& ca = A.constants(i, j);
          const auto& cb = B.constants(ii, jj);
          for (unsigned k = 0; k < da; ++k) {
            if (ca[k].is_zero()) continue;
            for (unsigned kk = 0; kk < db; ++kk)
              if (!cb[kk].is_zero()) c[idx(i, ii)][idx(j, jj)][idx(k, kk)] = ca[k] * cb[kk];
          }
        }
  std::vector<typename F::Elem> unit(d, field.zero());
  for (unsigned i = 0; i < da; ++i)
    for (unsigned j = 0; j < db; ++j) {
      auto v = A.unit()[i] * B.unit()[j];
      if (!v.is_zero()) unit[idx(i, j)] = v;
    }
  return StructureAlgebra<F>(field, std::move(labels), std::move(c), std::move(unit), false);
}

/// F[y]/(y^d - rel): the commutative algebra behind the nilpotence witness
template <class F>
StructureAlgebra<F> cyclic_relation_algebra(F field, unsigned d, const typename F::Elem& rel) {
  require(d >= 1, Err::BadDegree, "dimension must be positive");
  std::vector<std::string> labels(d);
  for (unsigned i = 0; i < d; ++i)
    labels[i] = i == 0 ? "1" : (i == 1 ? "y" : "y^" + std::to_string(i));
  std::vector<std::vector<std::vector<typename F::Elem>>> c(
      d, std::vector<std::vector<typename F::Elem>>(d,
                                                    std::vector<typename F::Elem>(d, field.zero())));
  for (unsigned i = 0; i < d; ++i)
    for (unsigned j = 0; j < d; ++j) {
      unsigned k = i + j;
      if (k < d)
        c[i][j][k] = field.one();
      else
        c[i][j][k - d] = rel;
    }
  std::vector<typename F::Elem> unit(d, field.zero());
  unit[0] = field.one();
  return StructureAlgebra<F>(std::move(field), std::move(labels), std::move(c), std::move(unit));
}

enum class ProbeKind { invertible, zero_divisor, nilpotent };

template <class F>
struct ElementProbe {
  ProbeKind kind;
  std::optional<unsigned> nilpotency_index;
  std::optional<std::vector<typename F::Elem>> cofactor;  // w != 0 with z w = 0
  bool is_zero_divisor() const { return cofactor.has_value(); }
};

/// Classifies z through its left-multiplication matrix: full rank means
/// invertible, a kernel vector is a cofactor witness, and explicit powering
/// up to max_power decides nilpotency.
template <class F>
ElementProbe<F> element_probe(const StructureAlgebra<F>& A, const Vec<F>& z,
                              unsigned max_power = 32) {
  ElementProbe<F> probe{ProbeKind::invertible, std::nullopt, std::nullopt};
  Mat<F> lz = A.left_mult_matrix(z);
  auto ker = kernel_basis(lz);
  if (ker.empty()) return probe;
  probe.kind = ProbeKind::zero_divisor;
  probe.cofactor = ker.front();
  Vec<F> pw = z;
  for (unsigned k = 1; k <= max_power; ++k) {
    if (vec_is_zero<F>(pw)) {
      probe.kind = ProbeKind::nilpotent;
      probe.nilpotency_index = k;
      break;
    }
    pw = A.mul(pw, z);
  }
  if (probe.kind == ProbeKind::zero_divisor && vec_is_zero<F>(pw)) {
    probe.kind = ProbeKind::nilpotent;
    probe.nilpotency_index = max_power + 1;
  }
  return probe;
}

struct CsaReport {
  unsigned center_dim = 0;
  bool central = false;
  bool simple = false;
  bool env_iso = false;  // A (x) A^op -> End(A) bijective; equivalent to central simple
  Json to_json() const {
    Json j;
    j["center_dim"] = center_dim;
    j["central"] = central;
    j["simple"] = simple;
    j["env_iso"] = env_iso;
    return j;
  }
};

namespace detail {

// grow a subspace basis until closed under the given multiplication maps
template <class F>
std::vector<Vec<F>> close_under(const StructureAlgebra<F>& A, std::vector<Vec<F>> seeds,
                                bool left, bool right) {
  const F& f = A.field();
  unsigned d = A.dim();
  SpanBuilder<F> span(f, d);
  std::vector<Vec<F>> queue = std::move(seeds);
  while (!queue.empty()) {
    Vec<F> v = std::move(queue.back());
    queue.pop_back();
    if (!span.insert(v)) continue;
    for (unsigned i = 0; i < d; ++i) {
      if (left) queue.push_back(A.mul(A.basis(i), v));
      if (right) queue.push_back(A.mul(v, A.basis(i)));
    }
  }
  return span.rows();
}

}  // namespace detail

/// Center as the kernel of z e_i - e_i z = 0, simplicity by two-sided ideal
/// closure from every basis seed plus seeded random elements; for desk-scale
/// dimensions the enveloping map A (x) A^op -> End_F(A) is also certified to
/// be bijective, which characterizes central simple algebras exactly.
template <class F>
CsaReport csa_check(const StructureAlgebra<F>& A, std::uint64_t seed = 1,
                    unsigned random_seeds = 6) {
  const F& f = A.field();
  unsigned d = A.dim();
  CsaReport rep;

  Mat<F> sys(f, d * d, d);
  for (unsigned i = 0; i < d; ++i) {
    Mat<F> li = A.left_mult_matrix(A.basis(i));
    Mat<F> ri = A.right_mult_matrix(A.basis(i));
    for (unsigned r = 0; r < d; ++r)
      for (unsigned cidx = 0; cidx < d; ++cidx)
        sys.at(i * d + r, cidx) = li.at(r, cidx) - ri.at(r, cidx);
  }
  rep.center_dim = d - static_cast<unsigned>(rref(sys).rank);
  rep.central = rep.center_dim == 1;

  rep.simple = true;
  auto check_seed = [&](const Vec<F>& z) {
    if (vec_is_zero<F>(z)) return true;
    auto ideal = detail::close_under(A, {z}, true, true);
    return ideal.size() == d;
  };
  for (unsigned i = 0; i < d && rep.simple; ++i) rep.simple = check_seed(A.basis(i));
  Rng rng(seed);
  for (unsigned trial = 0; trial < random_seeds && rep.simple; ++trial) {
    Vec<F> z(d, f.zero());
    for (unsigned i = 0; i < d; ++i)
      if (rng.below(2)) z[i] = sample_field_elem(f, rng);
    rep.simple = check_seed(z);
  }

  if (d <= 16) {
    Mat<F> env(f, d * d, d * d);
    for (unsigned i = 0; i < d; ++i) {
      Mat<F> li = A.left_mult_matrix(A.basis(i));
      for (unsigned j = 0; j < d; ++j) {
        Mat<F> rj = A.right_mult_matrix(A.basis(j));
        Mat<F> both = li * rj;
        for (unsigned r = 0; r < d; ++r)
          for (unsigned cidx = 0; cidx < d; ++cidx)
            env.at(r * d + cidx, i * d + j) = both.at(r, cidx);
      }
    }
    rep.env_iso = exact_rank(env) == d * d;
  } else {
    rep.env_iso = rep.central && rep.simple;
  }
  return rep;
}

}  // namespace hf

#endif
