#ifndef HASSEFORGE_KUMMER_HPP
#define HASSEFORGE_KUMMER_HPP

#include <utility>
#include <vector>

#include "hasseforge/derivation.hpp"

namespace hf {

/// K = F_q(s) with s^e = t over F = F_q(t), cyclic Galois group generated by
/// s -> zeta s for a primitive e-th root of unity zeta in F_q.  e = 1 is the
/// degenerate extension K = F with a renamed generator.
class KummerExtension {
 public:
  KummerExtension(FunField<GF> base, unsigned e)
      : F_(std::move(base)),
        K_(F_.coeff_field(), F_.gen_name() == 's' ? 'u' : 's'),
        e_(e),
        zeta_(F_.coeff_field().one()),
        spow_e_(Poly<GF>::monomial(F_.coeff_field(), F_.coeff_field().one(), e)) {
    const GF& cf = F_.coeff_field();
    std::uint64_t p = cf.characteristic();
    require(e_ >= 1, Err::BadDegree, "degree must be positive");
    require(e_ % p != 0, Err::BadDegree, "degree divisible by the characteristic");
    require((cf.order() - 1) % e_ == 0, Err::BadDegree, "e must divide q-1");
    if (e_ > 1) zeta_ = primitive_root_of_unity(cf, e_);
  }

  const FunField<GF>& base() const { return F_; }
  const FunField<GF>& top() const { return K_; }
  unsigned degree() const { return e_; }
  const GFElem& zeta() const { return zeta_; }
  const Poly<GF>& generator_power() const { return spow_e_; }

  /// F -> K along t -> s^e
  RatFunc<GF> embed(const RatFunc<GF>& f) const { return f.substitute(spow_e_); }

  /// sigma^j applied to an element of K: s -> zeta^j s twists coefficients
  RatFunc<GF> galois(const RatFunc<GF>& x, unsigned j) const {
    j %= e_;
    if (j == 0) return x;
    GFElem zj = zeta_.pow(j);
    auto twist = [&](const Poly<GF>& p) {
      const GF& cf = F_.coeff_field();
      std::vector<GFElem> c;
      c.reserve(p.coeffs().size());
      GFElem scale = cf.one();
      for (const auto& coeff : p.coeffs()) {
        c.push_back(coeff * scale);
        scale = scale * zj;
      }
      return Poly<GF>(cf, std::move(c));
    };
    return RatFunc<GF>(twist(x.num()), twist(x.den()));
  }

  /// coordinates of x over F with respect to 1, s, ..., s^(e-1); entry a is a
  /// rational function in t.  The denominator is rationalized with the full
  /// Galois norm so it becomes a polynomial in s^e.
  std::vector<RatFunc<GF>> decompose(const RatFunc<GF>& x) const {
    const GF& cf = F_.coeff_field();
    if (e_ == 1) return {compress(x.num()) / compress(x.den())};
    Poly<GF> num = x.num();
    Poly<GF> den = x.den();
    for (unsigned j = 1; j < e_; ++j) {
      Poly<GF> twisted = galois(RatFunc<GF>(den), j).num();
      num = num * twisted;
      den = den * twisted;
    }
    RatFunc<GF> denF = compress(den);
    std::vector<RatFunc<GF>> out;
    out.reserve(e_);
    for (unsigned a = 0; a < e_; ++a) {
      // exponents congruent to a mod e, divided by s^a, as a function of t
      std::vector<GFElem> slice;
      for (std::size_t i = a; i < num.coeffs().size(); i += e_) slice.push_back(num.coeffs()[i]);
      RatFunc<GF> part(Poly<GF>(cf, std::move(slice)));
      out.push_back(part / denF);
    }
    return out;
  }

  /// inverse of decompose: sum coords[a](s^e) * s^a
  RatFunc<GF> compose(const std::vector<RatFunc<GF>>& coords) const {
    RatFunc<GF> acc = K_.zero();
    RatFunc<GF> spow = K_.one();
    for (unsigned a = 0; a < e_; ++a) {
      if (a) spow = spow * K_.gen();
      if (a < coords.size() && !coords[a].is_zero()) acc = acc + embed(coords[a]) * spow;
    }
    return acc;
  }

  bool in_base(const RatFunc<GF>& x) const {
    auto coords = decompose(x);
    for (unsigned a = 1; a < e_; ++a)
      if (!coords[a].is_zero()) return false;
    return true;
  }
  RatFunc<GF> to_base(const RatFunc<GF>& x) const {
    auto coords = decompose(x);
    for (unsigned a = 1; a < e_; ++a)
      require(coords[a].is_zero(), Err::Internal, "element does not lie in the base field");
    return coords[0];
  }

 private:
  // polynomial in s supported on multiples of e, reinterpreted in t
  RatFunc<GF> compress(const Poly<GF>& p) const {
    const GF& cf = F_.coeff_field();
    std::vector<GFElem> c;
    for (std::size_t i = 0; i < p.coeffs().size(); i += e_) {
      for (unsigned r = 1; r < e_ && i + r < p.coeffs().size(); ++r)
        require(p.coeffs()[i + r].is_zero(), Err::Internal,
                "polynomial is not supported on multiples of e");
      c.push_back(p.coeffs()[i]);
    }
    return RatFunc<GF>(Poly<GF>(cf, std::move(c)));
  }

  FunField<GF> F_, K_;
  unsigned e_;
  GFElem zeta_;
  Poly<GF> spow_e_;
};

/// Normalized 2-cocycle on the cyclic group Gal(K|F) with values in K^*.
class Cocycle {
 public:
  Cocycle(const KummerExtension& ext, std::vector<std::vector<RatFunc<GF>>> table)
      : order_(ext.degree()), table_(std::move(table)) {
    require(table_.size() == order_, Err::CocycleInvalid, "table must be order x order");
    for (const auto& row : table_) {
      require(row.size() == order_, Err::CocycleInvalid, "table must be order x order");
      for (const auto& v : row)
        require(!v.is_zero(), Err::CocycleInvalid, "cocycle values must be nonzero");
    }
    for (unsigned a = 0; a < order_; ++a) {
      require(table_[0][a].is_one() && table_[a][0].is_one(), Err::CocycleInvalid,
              "cocycle is not normalized");
    }
    // sigma^a(f(b, c)) f(a, b+c) = f(a, b) f(a+b, c)
    for (unsigned a = 0; a < order_; ++a)
      for (unsigned b = 0; b < order_; ++b)
        for (unsigned c = 0; c < order_; ++c) {
          auto lhs = ext.galois(value(b, c), a) * value(a, (b + c) % order_);
          auto rhs = value(a, b) * value((a + b) % order_, c);
          require(lhs == rhs, Err::CocycleInvalid, "cocycle identity fails at (" +
                                                       std::to_string(a) + "," + std::to_string(b) +
                                                       "," + std::to_string(c) + ")");
        }
  }

  /// the cyclic-norm cocycle of u^e = b for b in the base field:
  /// f(sigma^a, sigma^c) = b when a+c >= e
  static Cocycle from_norm_value(const KummerExtension& ext, const RatFunc<GF>& b_in_base) {
    unsigned e = ext.degree();
    require(!b_in_base.is_zero(), Err::CocycleInvalid, "norm value must be nonzero");
    RatFunc<GF> b = ext.embed(b_in_base);
    std::vector<std::vector<RatFunc<GF>>> table(
        e, std::vector<RatFunc<GF>>(e, ext.top().one()));
    for (unsigned a = 0; a < e; ++a)
      for (unsigned c = 0; c < e; ++c)
        if (a + c >= e) table[a][c] = b;
    return Cocycle(ext, std::move(table));
  }

  static Cocycle trivial(const KummerExtension& ext) {
    return from_norm_value(ext, ext.top().one());
  }

  unsigned order() const { return order_; }
  const RatFunc<GF>& value(unsigned a, unsigned b) const {
    return table_[a % order_][b % order_];
  }

  /// all values constant (annihilated by every positive order of delta_K)
  bool values_constant(const DerivationTable<GF>& dk, unsigned upto) const {
    for (const auto& row : table_)
      for (const auto& v : row) {
        auto tw = dk.tower(v, upto);
        for (unsigned n = 1; n <= upto; ++n)
          if (!tw[n].is_zero()) return false;
      }
    return true;
  }

  Json to_json() const {
    Json j;
    j["order"] = order_;
    Json rows = Json::array();
    for (const auto& row : table_) rows.push_back(to_json_vec(row));
    j["table"] = rows;
    return j;
  }

 private:
  unsigned order_;
  std::vector<std::vector<RatFunc<GF>>> table_;
};

}  // namespace hf

#endif
