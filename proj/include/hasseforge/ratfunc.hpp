#ifndef HASSEFORGE_RATFUNC_HPP
#define HASSEFORGE_RATFUNC_HPP

#include <string>
#include <utility>

#include "hasseforge/poly.hpp"

namespace hf {

template <class C>
class FunField;

/// Element of C(t): a normalized fraction of polynomials.  Invariants hold for
/// every constructed value: gcd(num, den) = 1, den monic and nonzero; the zero
/// element is 0/1.
template <class C>
class RatFunc {
 public:
  using Coeff = typename C::Elem;

  explicit RatFunc(Poly<C> num)
      : num_(std::move(num)), den_(Poly<C>::one(num_.field())) {}
  RatFunc(Poly<C> num, Poly<C> den) : num_(std::move(num)), den_(std::move(den)) {
    require(!den_.is_zero(), Err::DivisionByZero, "zero denominator");
    normalize();
  }

  const Poly<C>& num() const { return num_; }
  const Poly<C>& den() const { return den_; }
  const C& coeff_field() const { return num_.field(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return den_.is_one() && num_.degree_or(0) == 0; }
  Coeff constant_value() const {
    require(is_constant(), Err::Internal, "not a constant");
    return num_.coeff(0);
  }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  RatFunc operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc(Poly<C>::zero(a.num_.field()));
    // cross-reduce before multiplying to keep intermediate degrees down
    Poly<C> g1 = poly_gcd(a.num_, b.den_);
    Poly<C> g2 = poly_gcd(b.num_, a.den_);
    RatFunc r(Poly<C>::zero(a.num_.field()));
    r.num_ = exact_div(a.num_, g1) * exact_div(b.num_, g2);
    r.den_ = exact_div(a.den_, g2) * exact_div(b.den_, g1);
    r.make_den_monic();
    return r;
  }
  RatFunc inv() const {
    require(!is_zero(), Err::DivisionByZero, "inverse of 0");
    RatFunc r = *this;
    std::swap(r.num_, r.den_);
    r.make_den_monic();
    return r;
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inv(); }

  RatFunc scaled(const Coeff& s) const {
    if (s.is_zero()) return RatFunc(Poly<C>::zero(num_.field()));
    RatFunc r = *this;
    r.num_ = r.num_.scaled(s);
    return r;
  }

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  /// substitute a polynomial for the variable: f(g)
  RatFunc substitute(const Poly<C>& g) const {
    return RatFunc(num_.compose(g), den_.compose(g));
  }

  /// true iff the normal-form invariants hold (used from tests)
  bool check_normal_form() const {
    if (den_.is_zero() || !den_.is_monic()) return false;
    if (num_.is_zero()) return den_.is_one();
    return poly_gcd(num_, den_).is_one();
  }

  std::string str(const std::string& var = "t") const {
    if (den_.is_one()) return num_.str(var);
    std::string n = num_.str(var);
    if (num_.degree_or(0) > 0) n = "(" + n + ")";
    std::string d = den_.str(var);
    if (den_.degree_or(0) > 0) d = "(" + d + ")";
    return n + "/" + d;
  }

 private:
  void normalize() {
    if (num_.is_zero()) {
      den_ = Poly<C>::one(num_.field());
      return;
    }
    Poly<C> g = poly_gcd(num_, den_);
    if (!g.is_one()) {
      num_ = exact_div(num_, g);
      den_ = exact_div(den_, g);
    }
    make_den_monic();
  }
  void make_den_monic() {
    if (!den_.is_monic()) {
      auto li = den_.leading().inv();
      num_ = num_.scaled(li);
      den_ = den_.scaled(li);
    }
  }

  Poly<C> num_, den_;
};

/// Handle for the rational function field C(g) with a named generator.
template <class C>
class FunField {
 public:
  using Elem = RatFunc<C>;

  FunField() = default;  // invalid placeholder
  FunField(C coeff, char gen) : coeff_(std::move(coeff)), gen_(gen) {}

  const C& coeff_field() const { return coeff_; }
  char gen_name() const { return gen_; }
  std::uint64_t characteristic() const { return coeff_.characteristic(); }

  Elem zero() const { return Elem(Poly<C>::zero(coeff_)); }
  Elem one() const { return Elem(Poly<C>::one(coeff_)); }
  Elem from_int(long long v) const { return Elem(Poly<C>::constant(coeff_, coeff_.from_int(v))); }
  Elem from_coeff(typename C::Elem c) const { return Elem(Poly<C>::constant(coeff_, std::move(c))); }
  Elem gen() const { return Elem(Poly<C>::monomial(coeff_, coeff_.one(), 1)); }
  /// c * g^e, e may be negative
  Elem monomial(typename C::Elem c, int e) const {
    if (e >= 0) return Elem(Poly<C>::monomial(coeff_, std::move(c), static_cast<unsigned>(e)));
    return Elem(Poly<C>::constant(coeff_, std::move(c)),
                Poly<C>::monomial(coeff_, coeff_.one(), static_cast<unsigned>(-e)));
  }
  Elem from_poly(Poly<C> p) const { return Elem(std::move(p)); }

  /// random fraction with num/den degrees <= max_degree, den nonzero
  Elem sample(Rng& rng, int max_degree = 6) const {
    Poly<C> n = sample_poly(coeff_, rng, max_degree, false);
    Poly<C> d = sample_poly(coeff_, rng, max_degree, true);
    return Elem(std::move(n), std::move(d));
  }

  bool same(const FunField& o) const { return coeff_.same(o.coeff_) && gen_ == o.gen_; }
  bool operator==(const FunField& o) const { return same(o); }

  std::string elem_str(const Elem& e) const { return e.str(std::string(1, gen_)); }

 private:
  C coeff_{};
  char gen_ = 't';
};

using FqFun = FunField<GF>;    // F_q(t) and friends
using QFun = FunField<Rationals>;

/// Membership in the subfield C(g^(p^m)) for char p > 0.  A normalized
/// fraction lies there iff numerator and denominator are both supported on
/// exponents divisible by p^m; the denominator-clearing fallback rewrites
/// f = num*den^(p^m - 1) / den^(p^m) and inspects that shape instead.
inline bool subfield_membership(const RatFunc<GF>& f, unsigned m, bool use_fallback = false) {
  const GF& cf = f.coeff_field();
  std::uint64_t p = cf.characteristic();
  require(p > 0, Err::CharZeroUnsupported, "subfield filtration needs positive characteristic");
  std::uint64_t step = 1;
  for (unsigned i = 0; i < m; ++i) step *= p;
  auto supported = [&](const Poly<GF>& g) {
    for (std::size_t i = 0; i < g.coeffs().size(); ++i)
      if (!g.coeffs()[i].is_zero() && (i % step) != 0) return false;
    return true;
  };
  if (!use_fallback) return supported(f.num()) && supported(f.den());
  if (f.is_zero()) return true;
  // den^(p^m) = D(g^(p^m)) by the Frobenius, so only the rewritten numerator
  // needs the support test
  Poly<GF> den_pow = f.den().pow(static_cast<unsigned>(step - 1));
  Poly<GF> rewritten = f.num() * den_pow;
  return supported(rewritten);
}

inline bool subfield_membership(const RatFunc<Rationals>&, unsigned, bool = false) {
  fail(Err::CharZeroUnsupported, "subfield filtration needs positive characteristic");
}

template <class C>
RatFunc<C> sample_field_elem(const FunField<C>& f, Rng& rng) {
  return f.sample(rng, 2);
}

}  // namespace hf

#endif
