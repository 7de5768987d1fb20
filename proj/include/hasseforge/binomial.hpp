#ifndef HASSEFORGE_BINOMIAL_HPP
#define HASSEFORGE_BINOMIAL_HPP

#include <cstdint>

#include "hasseforge/error.hpp"
#include "hasseforge/field.hpp"

namespace hf {

namespace detail {

// C(a, b) mod p for a, b < p, via the multiplicative formula
inline std::uint64_t small_binom_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  if (b > a) return 0;
  if (b > a - b) b = a - b;
  std::uint64_t num = 1, den = 1;
  for (std::uint64_t i = 1; i <= b; ++i) {
    num = mulmod(num, (a - b + i) % p, p);
    den = mulmod(den, i % p, p);
  }
  return mulmod(num, invmod(den, p), p);
}

}  // namespace detail

/// C(m, n) mod p by base-p digit products (Lucas); 0 as soon as a digit of n
/// exceeds the matching digit of m.
inline std::uint64_t lucas_binomial(std::uint64_t m, std::uint64_t n, std::uint64_t p) {
  require(detail::is_prime_u64(p), Err::BadField, "Lucas needs a prime modulus");
  std::uint64_t r = 1;
  while (n > 0 || m > 0) {
    std::uint64_t md = m % p, nd = n % p;
    if (nd > md) return 0;
    r = detail::mulmod(r, detail::small_binom_mod(md, nd, p), p);
    m /= p;
    n /= p;
  }
  return r;
}

/// exact C(m, n) as a big integer
inline BigInt binomial_exact(std::uint64_t m, std::uint64_t n) {
  if (n > m) return 0;
  if (n > m - n) n = m - n;
  BigInt r = 1;
  for (std::uint64_t i = 1; i <= n; ++i) {
    r *= BigInt(m - n + i);
    r /= BigInt(i);
  }
  return r;
}

/// C(m, n) inside an abstract scalar field (mod p for GF, exact for Q)
inline GFElem binomial_in(const GF& f, std::uint64_t m, std::uint64_t n) {
  return f.from_int(static_cast<long long>(lucas_binomial(m, n, f.characteristic())));
}
inline QQ binomial_in(const Rationals&, std::uint64_t m, std::uint64_t n) {
  return QQ(BigRat(binomial_exact(m, n)));
}

}  // namespace hf

#endif
