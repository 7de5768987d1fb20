#ifndef HASSEFORGE_FIELD_HPP
#define HASSEFORGE_FIELD_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hasseforge/error.hpp"
#include "hasseforge/rng.hpp"

// Scalar fields: F_q = F_p[x]/(modulus) and Q (arbitrary precision).
//
// Field handles are cheap-to-copy value types exposing zero()/one()/from_int()
// and an element type; elements support +, -, *, unary -, inv(), is_zero().
// Everything is immutable after construction and safe to share across threads.

namespace hf {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

inline std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
  require(a % p != 0, Err::DivisionByZero, "inverse of 0 in F_p");
  return powmod(a, p - 2, p);
}

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// dense mod-p polynomials on raw coefficient vectors (lowest degree first);
// used for modulus arithmetic inside F_{p^k} and for the irreducibility test
using ZpVec = std::vector<std::uint64_t>;

inline void zp_trim(ZpVec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline ZpVec zp_mul(const ZpVec& a, const ZpVec& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  ZpVec r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
  }
  zp_trim(r);
  return r;
}

inline ZpVec zp_mod(ZpVec a, const ZpVec& m, std::uint64_t p) {
  zp_trim(a);
  std::uint64_t lead_inv = invmod(m.back(), p);
  while (a.size() >= m.size()) {
    std::uint64_t c = mulmod(a.back(), lead_inv, p);
    std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) {
      std::uint64_t sub = mulmod(c, m[i], p);
      a[shift + i] = (a[shift + i] + p - sub) % p;
    }
    zp_trim(a);
    if (a.empty()) break;
  }
  return a;
}

inline ZpVec zp_gcd(ZpVec a, ZpVec b, std::uint64_t p) {
  zp_trim(a);
  zp_trim(b);
  while (!b.empty()) {
    ZpVec r = zp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// x^(p^e) mod m by repeated squaring in F_p[x]/(m)
inline ZpVec zp_xq_power(const ZpVec& m, std::uint64_t p, unsigned e, std::uint64_t pexp) {
  ZpVec x = zp_mod(ZpVec{0, 1}, m, p);
  ZpVec acc = x;
  // acc = x^(p^e): raise to p, e times; each step is exponentiation by pexp = p
  (void)pexp;
  for (unsigned step = 0; step < e; ++step) {
    ZpVec base = acc;
    ZpVec r{1};
    std::uint64_t ex = p;
    while (ex) {
      if (ex & 1) r = zp_mod(zp_mul(r, base, p), m, p);
      base = zp_mod(zp_mul(base, base, p), m, p);
      ex >>= 1;
    }
    acc = r;
  }
  return acc;
}

// Rabin test: m irreducible over F_p iff x^(p^k) = x mod m and
// gcd(x^(p^(k/r)) - x, m) = 1 for every prime r | k.
inline bool zp_irreducible(const ZpVec& m, std::uint64_t p) {
  ZpVec mm = m;
  zp_trim(mm);
  if (mm.size() < 2) return false;
  unsigned k = static_cast<unsigned>(mm.size() - 1);
  if (k == 1) return true;
  ZpVec x = zp_mod(ZpVec{0, 1}, mm, p);
  ZpVec top = zp_xq_power(mm, p, k, p);
  ZpVec diff = top;
  diff.resize(std::max(diff.size(), x.size()), 0);
  for (std::size_t i = 0; i < x.size(); ++i) diff[i] = (diff[i] + p - x[i]) % p;
  zp_trim(diff);
  if (!diff.empty()) return false;
  for (unsigned r = 2; r <= k; ++r) {
    if (k % r != 0 || !is_prime_u64(r)) continue;
    ZpVec mid = zp_xq_power(mm, p, k / r, p);
    ZpVec d = mid;
    d.resize(std::max(d.size(), x.size()), 0);
    for (std::size_t i = 0; i < x.size(); ++i) d[i] = (d[i] + p - x[i]) % p;
    ZpVec g = zp_gcd(d, mm, p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace detail

struct GFDesc {
  std::uint64_t p = 0;
  unsigned k = 1;
  std::vector<std::uint64_t> modulus;  // size k+1, monic; {0,1} for k == 1
  std::uint64_t q = 0;                 // p^k (guaranteed to fit at desk scale)
};

class GFElem;

/// Handle for a finite field F_q, q = p^k.  Descriptors are interned so that
/// handles and elements compare by pointer and copies are trivial.
class GF {
 public:
  using Elem = GFElem;

  GF() = default;
  explicit GF(std::uint64_t p) : GF(p, {0, 1}) {}
  GF(std::uint64_t p, std::vector<std::uint64_t> modulus);

  bool valid() const { return d_ != nullptr; }
  std::uint64_t characteristic() const { return d_->p; }
  unsigned ext_degree() const { return d_->k; }
  std::uint64_t order() const { return d_->q; }
  const std::vector<std::uint64_t>& modulus() const { return d_->modulus; }
  const GFDesc* desc() const { return d_; }

  GFElem zero() const;
  GFElem one() const;
  GFElem from_int(long long v) const;
  GFElem gen() const;  // the class of x when k > 1, otherwise 1
  GFElem element(std::vector<std::uint64_t> coeffs) const;
  GFElem sample(Rng& rng) const;
  /// element with index i under the canonical enumeration (base-p digits)
  GFElem nth(std::uint64_t i) const;

  bool same(const GF& o) const { return d_ == o.d_; }
  bool operator==(const GF& o) const { return d_ == o.d_; }

 private:
  const GFDesc* d_ = nullptr;
};

class GFElem {
 public:
  GFElem() = default;  // null element; only valid as assignment target
  GFElem(const GFDesc* d, std::vector<std::uint64_t> c) : d_(d), c_(std::move(c)) {}

  bool null() const { return d_ == nullptr; }
  const GFDesc* desc() const { return d_; }
  GF field() const;

  bool is_zero() const {
    for (auto v : c_)
      if (v) return false;
    return true;
  }
  bool is_one() const {
    if (c_.empty() || c_[0] != 1) return false;
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (c_[i]) return false;
    return true;
  }

  const std::vector<std::uint64_t>& coeffs() const { return c_; }
  std::uint64_t residue() const { return c_[0]; }  // k == 1 only

  friend GFElem operator+(const GFElem& a, const GFElem& b) {
    check(a, b);
    std::vector<std::uint64_t> r(a.c_.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = (a.c_[i] + b.c_[i]) % a.d_->p;
    return GFElem(a.d_, std::move(r));
  }
  friend GFElem operator-(const GFElem& a, const GFElem& b) {
    check(a, b);
    std::vector<std::uint64_t> r(a.c_.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = (a.c_[i] + a.d_->p - b.c_[i]) % a.d_->p;
    return GFElem(a.d_, std::move(r));
  }
  GFElem operator-() const {
    std::vector<std::uint64_t> r(c_.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = c_[i] ? d_->p - c_[i] : 0;
    return GFElem(d_, std::move(r));
  }
  friend GFElem operator*(const GFElem& a, const GFElem& b) {
    check(a, b);
    if (a.d_->k == 1) return GFElem(a.d_, {detail::mulmod(a.c_[0], b.c_[0], a.d_->p)});
    auto prod = detail::zp_mul(a.c_, b.c_, a.d_->p);
    prod = detail::zp_mod(std::move(prod), a.d_->modulus, a.d_->p);
    prod.resize(a.d_->k, 0);
    return GFElem(a.d_, std::move(prod));
  }

  GFElem inv() const {
    require(!is_zero(), Err::DivisionByZero, "inverse of 0");
    if (d_->k == 1) return GFElem(d_, {detail::invmod(c_[0], d_->p)});
    // a^(q-2) in F_q
    GFElem r = field().one();
    GFElem base = *this;
    std::uint64_t e = d_->q - 2;
    while (e) {
      if (e & 1) r = r * base;
      base = base * base;
      e >>= 1;
    }
    return r;
  }
  friend GFElem operator/(const GFElem& a, const GFElem& b) { return a * b.inv(); }

  GFElem pow(std::uint64_t e) const {
    GFElem r = field().one();
    GFElem base = *this;
    while (e) {
      if (e & 1) r = r * base;
      base = base * base;
      e >>= 1;
    }
    return r;
  }

  friend bool operator==(const GFElem& a, const GFElem& b) {
    check(a, b);
    return a.c_ == b.c_;
  }
  friend bool operator!=(const GFElem& a, const GFElem& b) { return !(a == b); }

  std::string str() const {
    if (d_->k == 1) return std::to_string(c_[0]);
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i];
    os << "]";
    return os.str();
  }

 private:
  static void check(const GFElem& a, const GFElem& b) {
    require(a.d_ != nullptr && a.d_ == b.d_, Err::FieldMismatch,
            "operands lie in different fields");
  }
  const GFDesc* d_ = nullptr;
  std::vector<std::uint64_t> c_;
};

inline GF GFElem::field() const {
  // reconstruct a handle from the interned descriptor
  GF f(d_->p, d_->modulus);
  return f;
}

namespace detail {
inline const GFDesc* intern_gf(std::uint64_t p, std::vector<std::uint64_t> modulus) {
  static std::mutex mu;
  static std::vector<std::unique_ptr<GFDesc>> pool;
  std::lock_guard<std::mutex> lock(mu);
  for (const auto& d : pool)
    if (d->p == p && d->modulus == modulus) return d.get();
  auto d = std::make_unique<GFDesc>();
  d->p = p;
  d->modulus = std::move(modulus);
  d->k = static_cast<unsigned>(d->modulus.size() - 1);
  d->q = 1;
  for (unsigned i = 0; i < d->k; ++i) d->q *= p;
  pool.push_back(std::move(d));
  return pool.back().get();
}
}  // namespace detail

inline GF::GF(std::uint64_t p, std::vector<std::uint64_t> modulus) {
  require(detail::is_prime_u64(p), Err::BadField, "characteristic must be prime");
  require(modulus.size() >= 2, Err::BadField, "modulus must have degree >= 1");
  for (auto& c : modulus) c %= p;
  require(modulus.back() != 0, Err::BadField, "modulus must be monic after reduction");
  if (modulus.back() != 1) {
    std::uint64_t li = detail::invmod(modulus.back(), p);
    for (auto& c : modulus) c = detail::mulmod(c, li, p);
  }
  unsigned k = static_cast<unsigned>(modulus.size() - 1);
  if (k == 1) {
    modulus = {0, 1};
  } else {
    require(detail::zp_irreducible(modulus, p), Err::BadField, "modulus is reducible");
    require(k * std::log2(double(p)) < 40, Err::BadField, "field too large for desk scale");
  }
  d_ = detail::intern_gf(p, std::move(modulus));
}

inline GFElem GF::zero() const { return GFElem(d_, std::vector<std::uint64_t>(d_->k, 0)); }
inline GFElem GF::one() const {
  std::vector<std::uint64_t> c(d_->k, 0);
  c[0] = 1;
  return GFElem(d_, std::move(c));
}
inline GFElem GF::from_int(long long v) const {
  long long m = static_cast<long long>(d_->p);
  long long r = ((v % m) + m) % m;
  std::vector<std::uint64_t> c(d_->k, 0);
  c[0] = static_cast<std::uint64_t>(r);
  return GFElem(d_, std::move(c));
}
inline GFElem GF::gen() const {
  std::vector<std::uint64_t> c(d_->k, 0);
  if (d_->k > 1)
    c[1] = 1;
  else
    c[0] = 1;
  return GFElem(d_, std::move(c));
}
inline GFElem GF::element(std::vector<std::uint64_t> coeffs) const {
  require(coeffs.size() <= d_->k, Err::BadField, "coefficient vector too long");
  coeffs.resize(d_->k, 0);
  for (auto& c : coeffs) c %= d_->p;
  return GFElem(d_, std::move(coeffs));
}
inline GFElem GF::sample(Rng& rng) const {
  std::vector<std::uint64_t> c(d_->k);
  for (auto& v : c) v = rng.below(d_->p);
  return GFElem(d_, std::move(c));
}
inline GFElem GF::nth(std::uint64_t i) const {
  std::vector<std::uint64_t> c(d_->k, 0);
  for (unsigned j = 0; j < d_->k; ++j) {
    c[j] = i % d_->p;
    i /= d_->p;
  }
  return GFElem(d_, std::move(c));
}

/// Finds an element of exact multiplicative order e; requires e | q-1.
inline GFElem primitive_root_of_unity(const GF& f, std::uint64_t e) {
  require(e >= 1, Err::BadRoot, "order must be positive");
  require((f.order() - 1) % e == 0, Err::BadRoot, "no e-th roots of unity: e does not divide q-1");
  for (std::uint64_t i = 1; i < f.order(); ++i) {
    GFElem z = f.nth(i);
    if (z.is_zero()) continue;
    if (!z.pow(e).is_one()) continue;
    bool primitive = true;
    for (std::uint64_t r = 2; r <= e; ++r) {
      if (e % r != 0 || !detail::is_prime_u64(r)) continue;
      if (z.pow(e / r).is_one()) {
        primitive = false;
        break;
      }
    }
    if (primitive) return z;
  }
  fail(Err::BadRoot, "no primitive root found");
}

/// The rationals with arbitrary-precision arithmetic (char-0 scalar field).
class QQ {
 public:
  QQ() : v_(0) {}
  explicit QQ(BigRat v) : v_(std::move(v)) {}
  QQ(long long n) : v_(n) {}
  QQ(long long n, long long d) : v_(BigRat(n, d)) {}

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  const BigRat& value() const { return v_; }

  friend QQ operator+(const QQ& a, const QQ& b) { return QQ(a.v_ + b.v_); }
  friend QQ operator-(const QQ& a, const QQ& b) { return QQ(a.v_ - b.v_); }
  friend QQ operator*(const QQ& a, const QQ& b) { return QQ(a.v_ * b.v_); }
  QQ operator-() const { return QQ(-v_); }
  QQ inv() const {
    require(v_ != 0, Err::DivisionByZero, "inverse of 0");
    return QQ(1 / v_);
  }
  friend QQ operator/(const QQ& a, const QQ& b) { return a * b.inv(); }
  friend bool operator==(const QQ& a, const QQ& b) { return a.v_ == b.v_; }
  friend bool operator!=(const QQ& a, const QQ& b) { return a.v_ != b.v_; }

  std::string str() const {
    std::ostringstream os;
    os << v_;
    return os.str();
  }

 private:
  BigRat v_;
};

struct Rationals {
  using Elem = QQ;
  QQ zero() const { return QQ(0); }
  QQ one() const { return QQ(1); }
  QQ from_int(long long v) const { return QQ(v); }
  QQ sample(Rng& rng) const {
    // small numerators/denominators keep sampled inputs readable
    long long n = rng.range(-9, 9);
    long long d = rng.range(1, 9);
    return QQ(n, d);
  }
  std::uint64_t characteristic() const { return 0; }
  bool same(const Rationals&) const { return true; }
  bool operator==(const Rationals&) const { return true; }
};

template <class F>
inline constexpr bool is_finite_field_v = std::is_same_v<F, GF>;

inline GFElem sample_field_elem(const GF& f, Rng& rng) { return f.sample(rng); }
inline QQ sample_field_elem(const Rationals& f, Rng& rng) { return f.sample(rng); }

}  // namespace hf

#endif
