#ifndef HASSEFORGE_TEST_ORACLES_HPP
#define HASSEFORGE_TEST_ORACLES_HPP

// Independent reference implementations used only by the tests.  These stay
// deliberately naive: each one takes a different route than the library code
// it cross-checks.

#include <cstdint>
#include <vector>

#include "hasseforge/binomial.hpp"
#include "hasseforge/linalg.hpp"

namespace hf::test {

// C(m, n) mod p straight from factorials, big integers all the way
inline std::uint64_t factorial_binom_mod(unsigned m, unsigned n, std::uint64_t p) {
  if (n > m) return 0;
  BigInt num = 1, den = 1;
  for (unsigned i = 2; i <= m; ++i) num *= i;
  for (unsigned i = 2; i <= n; ++i) den *= i;
  for (unsigned i = 2; i <= m - n; ++i) den *= i;
  BigInt c = num / den;
  return static_cast<std::uint64_t>(c % p);
}

// intersection of two subspaces given by bases, as a new basis
template <class F>
std::vector<hf::Vec<F>> subspace_intersection(const F& f, const std::vector<hf::Vec<F>>& a,
                                              const std::vector<hf::Vec<F>>& b, unsigned dim) {
  if (a.empty() || b.empty()) return {};
  // solve sum x_i a_i - sum y_j b_j = 0; intersection vectors are sum x_i a_i
  unsigned cols = static_cast<unsigned>(a.size() + b.size());
  hf::Mat<F> m(f, dim, cols);
  for (unsigned j = 0; j < a.size(); ++j)
    for (unsigned i = 0; i < dim; ++i) m.at(i, j) = a[j][i];
  for (unsigned j = 0; j < b.size(); ++j)
    for (unsigned i = 0; i < dim; ++i) m.at(i, static_cast<unsigned>(a.size()) + j) = -b[j][i];
  auto ker = hf::kernel_basis(m);
  hf::SpanBuilder<F> span(f, dim);
  for (const auto& k : ker) {
    hf::Vec<F> v(dim, f.zero());
    for (unsigned j = 0; j < a.size(); ++j)
      for (unsigned i = 0; i < dim; ++i) v[i] = v[i] + k[j] * a[j][i];
    span.insert(v);
  }
  return span.rows();
}

// plain fraction-based Gaussian elimination, forward only, counting pivots
template <class F>
unsigned naive_rank(Mat<F> m) {
  unsigned rank = 0;
  for (unsigned c = 0; c < m.cols() && rank < m.rows(); ++c) {
    unsigned sel = m.rows();
    for (unsigned i = rank; i < m.rows(); ++i)
      if (!m.at(i, c).is_zero()) {
        sel = i;
        break;
      }
    if (sel == m.rows()) continue;
    if (sel != rank)
      for (unsigned j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(rank, j));
    for (unsigned i = rank + 1; i < m.rows(); ++i) {
      if (m.at(i, c).is_zero()) continue;
      auto factor = m.at(i, c) / m.at(rank, c);
      for (unsigned j = c; j < m.cols(); ++j)
        m.at(i, j) = m.at(i, j) - factor * m.at(rank, j);
    }
    ++rank;
  }
  return rank;
}

}  // namespace hf::test

#endif
