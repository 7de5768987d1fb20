#ifndef HASSEFORGE_POLY_HPP
#define HASSEFORGE_POLY_HPP

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hasseforge/error.hpp"
#include "hasseforge/field.hpp"

namespace hf {

/// Dense univariate polynomial over a scalar field F (GF or Rationals),
/// coefficients lowest degree first, trailing zeros trimmed.  The zero
/// polynomial has no coefficients and degree() == nullopt.
template <class F>
class Poly {
 public:
  using Elem = typename F::Elem;

  explicit Poly(F field) : f_(std::move(field)) {}
  Poly(F field, std::vector<Elem> coeffs) : f_(std::move(field)), c_(std::move(coeffs)) { trim(); }

  static Poly zero(F field) { return Poly(std::move(field)); }
  static Poly constant(F field, Elem e) {
    Poly r(field);
    if (!e.is_zero()) r.c_.push_back(std::move(e));
    return r;
  }
  static Poly one(F field) { return constant(field, field.one()); }
  /// c * x^n
  static Poly monomial(F field, Elem c, unsigned n) {
    Poly r(field);
    if (!c.is_zero()) {
      r.c_.assign(n, field.zero());
      r.c_.push_back(std::move(c));
    }
    return r;
  }

  const F& field() const { return f_; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
  std::optional<int> degree() const {
    if (c_.empty()) return std::nullopt;
    return static_cast<int>(c_.size()) - 1;
  }
  int degree_or(int dflt) const { return c_.empty() ? dflt : static_cast<int>(c_.size()) - 1; }
  const std::vector<Elem>& coeffs() const { return c_; }
  Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : f_.zero(); }
  Elem leading() const {
    require(!c_.empty(), Err::Internal, "leading coefficient of zero polynomial");
    return c_.back();
  }
  bool is_monic() const { return !c_.empty() && c_.back().is_one(); }

  friend Poly operator+(const Poly& a, const Poly& b) {
    Poly r(a.f_);
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), a.f_.zero());
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.coeff(i) + b.coeff(i);
    r.trim();
    return r;
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    Poly r(a.f_);
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), a.f_.zero());
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.coeff(i) - b.coeff(i);
    r.trim();
    return r;
  }
  Poly operator-() const {
    Poly r(f_);
    r.c_.reserve(c_.size());
    for (const auto& e : c_) r.c_.push_back(-e);
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(a.f_);
    Poly r(a.f_);
    r.c_.assign(a.c_.size() + b.c_.size() - 1, a.f_.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
    }
    r.trim();
    return r;
  }
  Poly scaled(const Elem& s) const {
    if (s.is_zero()) return Poly(f_);
    Poly r(f_);
    r.c_.reserve(c_.size());
    for (const auto& e : c_) r.c_.push_back(e * s);
    r.trim();
    return r;
  }
  /// multiply by x^n
  Poly shifted(unsigned n) const {
    if (is_zero()) return *this;
    Poly r(f_);
    r.c_.assign(n, f_.zero());
    r.c_.insert(r.c_.end(), c_.begin(), c_.end());
    return r;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (a.c_[i] != b.c_[i]) return false;
    return true;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  /// quotient and remainder; b must be nonzero
  friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    require(!b.is_zero(), Err::DivisionByZero, "polynomial division by zero");
    Poly q(a.f_), r = a;
    if (r.c_.size() < b.c_.size()) return {q, r};
    q.c_.assign(r.c_.size() - b.c_.size() + 1, a.f_.zero());
    Elem lead_inv = b.leading().inv();
    while (!r.is_zero() && r.c_.size() >= b.c_.size()) {
      Elem c = r.leading() * lead_inv;
      std::size_t shift = r.c_.size() - b.c_.size();
      q.c_[shift] = c;
      for (std::size_t i = 0; i < b.c_.size(); ++i)
        r.c_[shift + i] = r.c_[shift + i] - c * b.c_[i];
      r.trim();
    }
    q.trim();
    return {q, r};
  }
  friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
  friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

  /// exact division; throws if a remainder appears
  friend Poly exact_div(const Poly& a, const Poly& b) {
    auto [q, r] = divmod(a, b);
    require(r.is_zero(), Err::Internal, "inexact polynomial division");
    return q;
  }

  Poly monic() const {
    if (is_zero() || is_monic()) return *this;
    return scaled(leading().inv());
  }

  Poly pow(unsigned e) const {
    Poly r = one(f_);
    Poly base = *this;
    while (e) {
      if (e & 1) r = r * base;
      base = base * base;
      e >>= 1;
    }
    return r;
  }

  Elem eval(const Elem& x) const {
    Elem acc = f_.zero();
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  /// formal derivative
  Poly derivative() const {
    Poly r(f_);
    for (std::size_t i = 1; i < c_.size(); ++i)
      r.c_.push_back(c_[i] * f_.from_int(static_cast<long long>(i)));
    r.trim();
    return r;
  }

  /// f(g): substitute another polynomial for the variable
  Poly compose(const Poly& g) const {
    Poly acc(f_);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * g + constant(f_, c_[i]);
    return acc;
  }

  std::string str(const std::string& var = "t") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i].is_zero()) continue;
      if (!first) os << "+";
      first = false;
      if (i == 0 || !c_[i].is_one()) os << c_[i].str();
      if (i > 0) {
        if (!c_[i].is_one()) os << "*";
        os << var;
        if (i > 1) os << "^" << i;
      }
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  F f_;
  std::vector<Elem> c_;
};

/// monic gcd; rejects (0, 0)
template <class F>
Poly<F> poly_gcd(Poly<F> a, Poly<F> b) {
  require(!(a.is_zero() && b.is_zero()), Err::BothZero, "gcd(0, 0) undefined");
  // keeping remainders monic controls coefficient growth over Q
  while (!b.is_zero()) {
    Poly<F> r = (a % b).monic();
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

template <class F>
Poly<F> sample_poly(F field, Rng& rng, int max_degree, bool nonzero) {
  for (;;) {
    int d = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_degree + 1)));
    std::vector<typename F::Elem> c;
    c.reserve(d + 1);
    for (int i = 0; i <= d; ++i) c.push_back(field.sample(rng));
    Poly<F> p(field, std::move(c));
    if (!nonzero || !p.is_zero()) return p;
  }
}

}  // namespace hf

#endif
