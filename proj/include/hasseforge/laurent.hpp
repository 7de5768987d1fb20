#ifndef HASSEFORGE_LAURENT_HPP
#define HASSEFORGE_LAURENT_HPP

#include <cstdint>
#include <vector>

#include "hasseforge/binomial.hpp"
#include "hasseforge/field.hpp"

// Fast evaluation backend for derivation tables whose generator images are
// Laurent monomials c_n * g^(1 - n*w) ("graded" tables: the Hasse derivative,
// Kummer extensions, divided powers of d/dt).  For such tables every
// derivative of a monomial is again a monomial, so towers and axiom checks
// reduce to dense Laurent-polynomial arithmetic over the coefficient field,
// with no rational-function normalization in the inner loops.

namespace hf::detail {

struct ZpRing {
  std::uint64_t p;
  using Rep = std::uint64_t;
  Rep zero() const { return 0; }
  Rep one() const { return 1; }
  bool is_zero(Rep a) const { return a == 0; }
  Rep add(Rep a, Rep b) const { return (a + b) % p; }
  Rep sub(Rep a, Rep b) const { return (a + p - b) % p; }
  Rep neg(Rep a) const { return a ? p - a : 0; }
  Rep mul(Rep a, Rep b) const { return mulmod(a, b, p); }
  Rep divide(Rep a, Rep b) const { return mulmod(a, invmod(b, p), p); }
  Rep binom(std::uint64_t m, std::uint64_t n) const { return lucas_binomial(m, n, p); }
};

// char-0 engine works over Z: cleared denominators instead of per-operation
// rational gcds; divisions only appear where exactness is guaranteed
struct ZRing {
  using Rep = BigInt;
  Rep zero() const { return BigInt(0); }
  Rep one() const { return BigInt(1); }
  bool is_zero(const Rep& a) const { return a == 0; }
  Rep add(const Rep& a, const Rep& b) const { return a + b; }
  Rep sub(const Rep& a, const Rep& b) const { return a - b; }
  Rep neg(const Rep& a) const { return -a; }
  Rep mul(const Rep& a, const Rep& b) const { return a * b; }
  Rep divide(const Rep& a, const Rep& b) const {
    require(b != 0, Err::DivisionByZero, "division by zero");
    BigInt q = a / b;
    require(q * b == a, Err::Internal, "inexact integer division");
    return q;
  }
  Rep binom(std::uint64_t m, std::uint64_t n) const { return binomial_exact(m, n); }
};

/// Dense Laurent polynomial: c[i] is the coefficient of g^(off + i).
template <class R>
struct Lau {
  int off = 0;
  std::vector<typename R::Rep> c;
  bool is_zero() const { return c.empty(); }
  int lo() const { return off; }
  int hi() const { return off + static_cast<int>(c.size()) - 1; }
};

template <class R>
void lau_trim(const R& ring, Lau<R>& a) {
  std::size_t lead = 0;
  while (lead < a.c.size() && ring.is_zero(a.c[lead])) ++lead;
  if (lead == a.c.size()) {
    a.c.clear();
    a.off = 0;
    return;
  }
  std::size_t tail = a.c.size();
  while (tail > lead && ring.is_zero(a.c[tail - 1])) --tail;
  if (lead > 0) a.c.erase(a.c.begin(), a.c.begin() + lead);
  a.c.resize(tail - lead);
  a.off += static_cast<int>(lead);
}

template <class R>
Lau<R> lau_const(const R& ring, typename R::Rep v) {
  Lau<R> r;
  if (!ring.is_zero(v)) r.c.push_back(v);
  return r;
}

template <class R>
Lau<R> lau_monomial(const R& ring, typename R::Rep v, int e) {
  Lau<R> r;
  if (!ring.is_zero(v)) {
    r.off = e;
    r.c.push_back(v);
  }
  return r;
}

template <class R>
Lau<R> lau_add(const R& ring, const Lau<R>& a, const Lau<R>& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  int lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
  Lau<R> r;
  r.off = lo;
  r.c.assign(hi - lo + 1, ring.zero());
  for (std::size_t i = 0; i < a.c.size(); ++i) r.c[a.off - lo + i] = a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i)
    r.c[b.off - lo + i] = ring.add(r.c[b.off - lo + i], b.c[i]);
  lau_trim(ring, r);
  return r;
}

template <class R>
Lau<R> lau_sub(const R& ring, const Lau<R>& a, const Lau<R>& b) {
  if (b.is_zero()) return a;
  int lo = std::min(a.is_zero() ? b.lo() : a.lo(), b.lo());
  int hi = std::max(a.is_zero() ? b.hi() : a.hi(), b.hi());
  Lau<R> r;
  r.off = lo;
  r.c.assign(hi - lo + 1, ring.zero());
  for (std::size_t i = 0; i < a.c.size(); ++i) r.c[a.off - lo + i] = a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i)
    r.c[b.off - lo + i] = ring.sub(r.c[b.off - lo + i], b.c[i]);
  lau_trim(ring, r);
  return r;
}

template <class R>
Lau<R> lau_mul(const R& ring, const Lau<R>& a, const Lau<R>& b) {
  if (a.is_zero() || b.is_zero()) return {};
  Lau<R> r;
  r.off = a.off + b.off;
  r.c.assign(a.c.size() + b.c.size() - 1, ring.zero());
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (ring.is_zero(a.c[i])) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] = ring.add(r.c[i + j], ring.mul(a.c[i], b.c[j]));
  }
  lau_trim(ring, r);
  return r;
}

// mod-p specialization with lazy reduction: accumulate raw products and
// reduce once per output coefficient (safe far beyond desk-scale sizes)
inline Lau<ZpRing> lau_mul(const ZpRing& ring, const Lau<ZpRing>& a, const Lau<ZpRing>& b) {
  if (a.is_zero() || b.is_zero()) return {};
  Lau<ZpRing> r;
  r.off = a.off + b.off;
  r.c.assign(a.c.size() + b.c.size() - 1, 0);
  if (ring.p < (1u << 21)) {
    for (std::size_t i = 0; i < a.c.size(); ++i) {
      std::uint64_t ai = a.c[i];
      if (!ai) continue;
      std::uint64_t* out = r.c.data() + i;
      const std::uint64_t* bc = b.c.data();
      std::size_t nb = b.c.size();
      for (std::size_t j = 0; j < nb; ++j) out[j] += ai * bc[j];
      // keep partial sums below 2^63
      if ((i & 1023) == 1023)
        for (auto& v : r.c) v %= ring.p;
    }
    for (auto& v : r.c) v %= ring.p;
  } else {
    for (std::size_t i = 0; i < a.c.size(); ++i) {
      if (!a.c[i]) continue;
      for (std::size_t j = 0; j < b.c.size(); ++j)
        r.c[i + j] = ring.add(r.c[i + j], ring.mul(a.c[i], b.c[j]));
    }
  }
  lau_trim(ring, r);
  return r;
}

template <class R>
Lau<R> lau_scale(const R& ring, const Lau<R>& a, const typename R::Rep& s) {
  if (ring.is_zero(s) || a.is_zero()) return {};
  Lau<R> r = a;
  for (auto& v : r.c) v = ring.mul(v, s);
  lau_trim(ring, r);
  return r;
}

template <class R>
bool lau_eq(const R& ring, const Lau<R>& a, const Lau<R>& b) {
  (void)ring;
  return a.off == b.off && a.c == b.c;
}

/// exact division a / b (throws Internal when the division leaves a remainder)
template <class R>
Lau<R> lau_exact_div(const R& ring, Lau<R> a, const Lau<R>& b) {
  require(!b.is_zero(), Err::DivisionByZero, "Laurent division by zero");
  if (a.is_zero()) return {};
  Lau<R> q;
  q.off = a.off - b.off;
  require(a.c.size() >= b.c.size(), Err::Internal, "inexact Laurent division");
  q.c.assign(a.c.size() - b.c.size() + 1, ring.zero());
  for (std::size_t k = q.c.size(); k-- > 0;) {
    auto coef = ring.divide(a.c[k + b.c.size() - 1], b.c.back());
    q.c[k] = coef;
    if (!ring.is_zero(coef))
      for (std::size_t i = 0; i < b.c.size(); ++i)
        a.c[k + i] = ring.sub(a.c[k + i], ring.mul(coef, b.c[i]));
  }
  for (const auto& v : a.c) require(ring.is_zero(v), Err::Internal, "inexact Laurent division");
  lau_trim(ring, q);
  return q;
}

template <class R>
Lau<R> lau_pow(const R& ring, const Lau<R>& a, unsigned e) {
  Lau<R> r = lau_const(ring, ring.one());
  Lau<R> base = a;
  while (e) {
    if (e & 1) r = lau_mul(ring, r, base);
    base = lau_mul(ring, base, base);
    e >>= 1;
  }
  return r;
}

/// Derivation with graded monomial images: delta^(n)(g) = d[n] * g^(1 - n*w).
/// gamma(n, m) is the coefficient in delta^(n)(g^m) = gamma(n, m) * g^(m - n*w),
/// extended to negative m through the geometric-series recursion.
template <class R>
class GradedDeriver {
 public:
  GradedDeriver(R ring, int w, std::vector<typename R::Rep> d, unsigned trunc)
      : ring_(ring), w_(w), N_(trunc), d_(std::move(d)) {
    d_.resize(N_ + 1, ring_.zero());
    d_[0] = ring_.one();
    gup_.push_back({});  // m = 0: delta^(n)(1) = [n == 0]
    gup_[0].assign(N_ + 1, ring_.zero());
    gup_[0][0] = ring_.one();
    nonzero_orders_.clear();
    for (unsigned n = 1; n <= N_; ++n)
      if (!ring_.is_zero(d_[n])) nonzero_orders_.push_back(n);
  }

  const R& ring() const { return ring_; }
  int weight() const { return w_; }
  unsigned trunc() const { return N_; }

  const typename R::Rep& gamma(unsigned n, int m) {
    if (m >= 0) {
      ensure_up(m);
      return gup_[m][n];
    }
    ensure_down(-m);
    return gdn_[-m - 1][n];
  }

  /// delta^(n) of a Laurent polynomial
  Lau<R> derive(const Lau<R>& P, unsigned n) {
    require(n <= N_, Err::OrderExceedsTruncation, "derivation order beyond truncation");
    if (P.is_zero()) return {};
    Lau<R> r;
    r.off = P.off - static_cast<int>(n) * w_;
    r.c.assign(P.c.size(), ring_.zero());
    for (std::size_t i = 0; i < P.c.size(); ++i) {
      if (ring_.is_zero(P.c[i])) continue;
      const auto& gm = gamma(n, P.off + static_cast<int>(i));
      if (!ring_.is_zero(gm)) r.c[i] = ring_.mul(P.c[i], gm);
    }
    lau_trim(ring_, r);
    return r;
  }

  std::vector<Lau<R>> tower_poly(const Lau<R>& P, unsigned n) {
    std::vector<Lau<R>> t;
    t.reserve(n + 1);
    for (unsigned i = 0; i <= n; ++i) t.push_back(derive(P, i));
    return t;
  }

  /// tower of P/Q: returns u with delta^(m)(P/Q) = u[m] / Q^(m+1),
  /// via u_m = Q^m delta^(m)(P) - sum_j Q^(j-1) delta^(j)(Q) u_(m-j)
  std::vector<Lau<R>> tower_fraction(const Lau<R>& P, const Lau<R>& Q, unsigned n) {
    auto qpow = powers(Q, n);
    std::vector<Lau<R>> w(n + 1);
    for (unsigned j = 1; j <= n; ++j) w[j] = lau_mul(ring_, qpow[j - 1], derive(Q, j));
    std::vector<Lau<R>> u;
    u.reserve(n + 1);
    u.push_back(P);
    for (unsigned m = 1; m <= n; ++m) {
      Lau<R> acc = lau_mul(ring_, qpow[m], derive(P, m));
      for (unsigned j = 1; j <= m; ++j)
        acc = lau_sub(ring_, acc, lau_mul(ring_, w[j], u[m - j]));
      u.push_back(std::move(acc));
    }
    return u;
  }

  std::vector<Lau<R>> powers(const Lau<R>& Q, unsigned n) {
    std::vector<Lau<R>> qpow;
    qpow.reserve(n + 2);
    qpow.push_back(lau_const(ring_, ring_.one()));
    for (unsigned i = 1; i <= n + 1; ++i) qpow.push_back(lau_mul(ring_, qpow.back(), Q));
    return qpow;
  }

 private:
  void ensure_up(int m) {
    while (static_cast<int>(gup_.size()) <= m) {
      const auto& prev = gup_.back();
      std::vector<typename R::Rep> cur(N_ + 1, ring_.zero());
      // gamma(n, m) = sum_{i+j=n} d_i gamma(j, m-1); d_0 = 1
      for (unsigned n = 0; n <= N_; ++n) {
        auto acc = prev[n];
        for (unsigned i : nonzero_orders_) {
          if (i > n) break;
          acc = ring_.add(acc, ring_.mul(d_[i], prev[n - i]));
        }
        cur[n] = acc;
      }
      gup_.push_back(std::move(cur));
    }
  }
  void ensure_down(int mm) {  // builds gamma(., -1) .. gamma(., -mm)
    while (static_cast<int>(gdn_.size()) < mm) {
      int m = static_cast<int>(gdn_.size()) + 1;
      ensure_up(m);
      const auto& pos = gup_[m];
      std::vector<typename R::Rep> cur(N_ + 1, ring_.zero());
      cur[0] = ring_.one();
      // sum_{i+j=n} gamma(i, m) gamma(j, -m) = 0 for n >= 1
      for (unsigned n = 1; n <= N_; ++n) {
        auto acc = ring_.zero();
        for (unsigned i = 1; i <= n; ++i)
          if (!ring_.is_zero(pos[i])) acc = ring_.add(acc, ring_.mul(pos[i], cur[n - i]));
        cur[n] = ring_.neg(acc);
      }
      gdn_.push_back(std::move(cur));
    }
  }

  R ring_;
  int w_;
  unsigned N_;
  std::vector<typename R::Rep> d_;
  std::vector<unsigned> nonzero_orders_;
  std::vector<std::vector<typename R::Rep>> gup_;  // gup_[m][n], m >= 0
  std::vector<std::vector<typename R::Rep>> gdn_;  // gdn_[m-1][n] for -m
};

}  // namespace hf::detail

#endif
