#ifndef HASSEFORGE_LINALG_HPP
#define HASSEFORGE_LINALG_HPP

#include <optional>
#include <utility>
#include <vector>

#include "hasseforge/ratfunc.hpp"

namespace hf {

template <class F>
using Vec = std::vector<typename F::Elem>;

template <class F>
bool vec_is_zero(const Vec<F>& v) {
  for (const auto& e : v)
    if (!e.is_zero()) return false;
  return true;
}

template <class F>
class Mat {
 public:
  using Elem = typename F::Elem;

  Mat() = default;  // empty placeholder; use the sized constructor for real data
  Mat(F field, unsigned rows, unsigned cols)
      : f_(std::move(field)), rows_(rows), cols_(cols), e_(std::size_t(rows) * cols, f_.zero()) {}

  static Mat identity(F field, unsigned n) {
    Mat m(field, n, n);
    for (unsigned i = 0; i < n; ++i) m.at(i, i) = field.one();
    return m;
  }
  static Mat from_rows(F field, const std::vector<std::vector<Elem>>& rows) {
    unsigned r = static_cast<unsigned>(rows.size());
    unsigned c = r ? static_cast<unsigned>(rows[0].size()) : 0;
    Mat m(field, r, c);
    for (unsigned i = 0; i < r; ++i) {
      require(rows[i].size() == c, Err::Internal, "ragged rows");
      for (unsigned j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
  }

  const F& field() const { return f_; }
  unsigned rows() const { return rows_; }
  unsigned cols() const { return cols_; }
  Elem& at(unsigned i, unsigned j) { return e_[std::size_t(i) * cols_ + j]; }
  const Elem& at(unsigned i, unsigned j) const { return e_[std::size_t(i) * cols_ + j]; }
  std::vector<Elem> row(unsigned i) const {
    return std::vector<Elem>(e_.begin() + std::size_t(i) * cols_,
                             e_.begin() + std::size_t(i + 1) * cols_);
  }

  friend Mat operator*(const Mat& a, const Mat& b) {
    require(a.cols_ == b.rows_, Err::Internal, "matrix dimension mismatch");
    Mat r(a.f_, a.rows_, b.cols_);
    for (unsigned i = 0; i < a.rows_; ++i)
      for (unsigned k = 0; k < a.cols_; ++k) {
        if (a.at(i, k).is_zero()) continue;
        for (unsigned j = 0; j < b.cols_; ++j)
          r.at(i, j) = r.at(i, j) + a.at(i, k) * b.at(k, j);
      }
    return r;
  }
  friend Mat operator+(const Mat& a, const Mat& b) {
    Mat r(a.f_, a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] + b.e_[i];
    return r;
  }
  friend Mat operator-(const Mat& a, const Mat& b) {
    Mat r(a.f_, a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] - b.e_[i];
    return r;
  }
  friend bool operator==(const Mat& a, const Mat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t i = 0; i < a.e_.size(); ++i)
      if (a.e_[i] != b.e_[i]) return false;
    return true;
  }
  friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

  Mat transpose() const {
    Mat r(f_, cols_, rows_);
    for (unsigned i = 0; i < rows_; ++i)
      for (unsigned j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  std::vector<Elem> apply(const std::vector<Elem>& v) const {  // M v
    require(v.size() == cols_, Err::Internal, "vector dimension mismatch");
    std::vector<Elem> r(rows_, f_.zero());
    for (unsigned i = 0; i < rows_; ++i)
      for (unsigned j = 0; j < cols_; ++j)
        if (!at(i, j).is_zero()) r[i] = r[i] + at(i, j) * v[j];
    return r;
  }
  std::vector<Elem> apply_row(const std::vector<Elem>& v) const {  // v M
    require(v.size() == rows_, Err::Internal, "vector dimension mismatch");
    std::vector<Elem> r(cols_, f_.zero());
    for (unsigned i = 0; i < rows_; ++i)
      if (!v[i].is_zero())
        for (unsigned j = 0; j < cols_; ++j) r[j] = r[j] + v[i] * at(i, j);
    return r;
  }

 private:
  F f_{};
  unsigned rows_ = 0, cols_ = 0;
  std::vector<Elem> e_;
};

template <class F>
struct Echelon {
  Mat<F> reduced;
  std::vector<unsigned> pivot_cols;
  unsigned rank;
};

/// Reduced row echelon form by exact Gauss-Jordan elimination.  Pivot choice
/// is the first nonzero entry in scan order, so the output is deterministic.
template <class F>
Echelon<F> rref(Mat<F> m) {
  const F& f = m.field();
  std::vector<unsigned> pivots;
  unsigned r = 0;
  for (unsigned c = 0; c < m.cols() && r < m.rows(); ++c) {
    unsigned sel = m.rows();
    for (unsigned i = r; i < m.rows(); ++i)
      if (!m.at(i, c).is_zero()) {
        sel = i;
        break;
      }
    if (sel == m.rows()) continue;
    if (sel != r)
      for (unsigned j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(r, j));
    auto pinv = m.at(r, c).inv();
    for (unsigned j = c; j < m.cols(); ++j) m.at(r, j) = m.at(r, j) * pinv;
    for (unsigned i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      auto factor = m.at(i, c);
      for (unsigned j = c; j < m.cols(); ++j)
        m.at(i, j) = m.at(i, j) - factor * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  (void)f;
  return Echelon<F>{std::move(m), std::move(pivots), r};
}

template <class F>
unsigned rank_rref(const Mat<F>& m) {
  return rref(m).rank;
}

/// Basis of the right kernel {x : M x = 0}.
template <class F>
std::vector<Vec<F>> kernel_basis(const Mat<F>& m) {
  auto ech = rref(m);
  const F& f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : ech.pivot_cols) is_pivot[c] = true;
  std::vector<Vec<F>> basis;
  for (unsigned free_c = 0; free_c < m.cols(); ++free_c) {
    if (is_pivot[free_c]) continue;
    Vec<F> v(m.cols(), f.zero());
    v[free_c] = f.one();
    for (unsigned pr = 0; pr < ech.pivot_cols.size(); ++pr)
      v[ech.pivot_cols[pr]] = -ech.reduced.at(pr, free_c);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// One solution of M x = b, if any.
template <class F>
std::optional<Vec<F>> solve(const Mat<F>& m, const Vec<F>& b) {
  const F& f = m.field();
  Mat<F> aug(f, m.rows(), m.cols() + 1);
  for (unsigned i = 0; i < m.rows(); ++i) {
    for (unsigned j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols()) = b[i];
  }
  auto ech = rref(std::move(aug));
  Vec<F> x(m.cols(), f.zero());
  for (unsigned pr = 0; pr < ech.pivot_cols.size(); ++pr) {
    if (ech.pivot_cols[pr] == m.cols()) return std::nullopt;  // inconsistent
    x[ech.pivot_cols[pr]] = ech.reduced.at(pr, m.cols());
  }
  return x;
}

namespace detail {

/*
 * Fraction-free (Bareiss) elimination over a polynomial ring.  Every
 * intermediate entry is a minor of the input, so the division by the previous
 * pivot is exact and coefficient degrees stay bounded by sums of row degrees
 * instead of doubling each step.  Pivots are the first nonzero entry in scan
 * order; rank-deficient columns are skipped.
 */
template <class C>
unsigned bareiss_rank(std::vector<std::vector<Poly<C>>>& m) {
  if (m.empty()) return 0;
  const C& cf = m[0][0].field();
  std::size_t rows = m.size(), cols = m[0].size();
  Poly<C> prev = Poly<C>::one(cf);
  unsigned r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (!m[i][c].is_zero()) {
        sel = i;
        break;
      }
    if (sel == rows) continue;
    if (sel != r) std::swap(m[sel], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j)
        m[i][j] = exact_div(m[r][c] * m[i][j] - m[i][c] * m[r][j], prev);
      m[i][c] = Poly<C>::zero(cf);
    }
    prev = m[r][c];
    ++r;
  }
  return r;
}

}  // namespace detail

/// Rank over the entry field.  Function-field matrices are cleared of
/// denominators row by row and eliminated fraction-free; matrices whose
/// entries are all constants drop to the coefficient field first.
template <class C>
unsigned exact_rank(const Mat<FunField<C>>& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  const C& cf = m.at(0, 0).coeff_field();
  bool all_constant = true;
  for (unsigned i = 0; i < m.rows() && all_constant; ++i)
    for (unsigned j = 0; j < m.cols(); ++j)
      if (!m.at(i, j).is_constant() && !m.at(i, j).is_zero()) {
        all_constant = false;
        break;
      }
  if (all_constant) {
    Mat<C> mc(cf, m.rows(), m.cols());
    for (unsigned i = 0; i < m.rows(); ++i)
      for (unsigned j = 0; j < m.cols(); ++j)
        if (!m.at(i, j).is_zero()) mc.at(i, j) = m.at(i, j).constant_value();
    return rank_rref(mc);
  }
  std::vector<std::vector<Poly<C>>> work(m.rows());
  for (unsigned i = 0; i < m.rows(); ++i) {
    Poly<C> common = Poly<C>::one(cf);
    for (unsigned j = 0; j < m.cols(); ++j) {
      const Poly<C>& d = m.at(i, j).den();
      common = exact_div(common * d, poly_gcd(common, d));  // lcm
    }
    work[i].reserve(m.cols());
    for (unsigned j = 0; j < m.cols(); ++j)
      work[i].push_back(m.at(i, j).num() * exact_div(common, m.at(i, j).den()));
  }
  return detail::bareiss_rank(work);
}

inline unsigned exact_rank(const Mat<GF>& m) { return rank_rref(m); }
inline unsigned exact_rank(const Mat<Rationals>& m) { return rank_rref(m); }

/// Incremental row-reduced span: O(dim^2) membership tests and insertions.
template <class F>
class SpanBuilder {
 public:
  SpanBuilder(F field, unsigned dim) : f_(std::move(field)), dim_(dim) {}

  unsigned dim() const { return dim_; }
  unsigned rank() const { return static_cast<unsigned>(rows_.size()); }
  const std::vector<Vec<F>>& rows() const { return rows_; }

  /// reduce v against the current rows; returns the residue
  Vec<F> reduce(Vec<F> v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const auto& c = v[pivots_[r]];
      if (c.is_zero()) continue;
      auto factor = c;  // rows are pivot-normalized
      for (unsigned j = 0; j < dim_; ++j)
        if (!rows_[r][j].is_zero()) v[j] = v[j] - factor * rows_[r][j];
    }
    return v;
  }

  bool contains(const Vec<F>& v) const { return vec_is_zero<F>(reduce(v)); }

  /// returns true when v enlarged the span
  bool insert(const Vec<F>& v) {
    Vec<F> r = reduce(v);
    unsigned piv = dim_;
    for (unsigned j = 0; j < dim_; ++j)
      if (!r[j].is_zero()) {
        piv = j;
        break;
      }
    if (piv == dim_) return false;
    auto inv = r[piv].inv();
    for (unsigned j = 0; j < dim_; ++j) r[j] = r[j] * inv;
    rows_.push_back(std::move(r));
    pivots_.push_back(piv);
    return true;
  }

 private:
  F f_;
  unsigned dim_;
  std::vector<Vec<F>> rows_;
  std::vector<unsigned> pivots_;
};

/// rank of the span of a list of coordinate vectors
template <class F>
unsigned span_rank(const F& f, const std::vector<Vec<F>>& vecs, unsigned dim) {
  Mat<F> m(f, static_cast<unsigned>(vecs.size()), dim);
  for (unsigned i = 0; i < vecs.size(); ++i)
    for (unsigned j = 0; j < dim; ++j) m.at(i, j) = vecs[i][j];
  return exact_rank(m);
}

/// true iff v lies in the span of basis (all vectors of length dim)
template <class F>
bool in_span(const F& f, const std::vector<Vec<F>>& basis, const Vec<F>& v) {
  if (vec_is_zero<F>(v)) return true;
  unsigned dim = static_cast<unsigned>(v.size());
  Mat<F> m(f, dim, static_cast<unsigned>(basis.size()));
  for (unsigned j = 0; j < basis.size(); ++j)
    for (unsigned i = 0; i < dim; ++i) m.at(i, j) = basis[j][i];
  return solve(m, v).has_value();
}

/// coordinates of v w.r.t. basis, if v lies in the span
template <class F>
std::optional<Vec<F>> coords_in_basis(const F& f, const std::vector<Vec<F>>& basis,
                                      const Vec<F>& v) {
  unsigned dim = static_cast<unsigned>(v.size());
  Mat<F> m(f, dim, static_cast<unsigned>(basis.size()));
  for (unsigned j = 0; j < basis.size(); ++j)
    for (unsigned i = 0; i < dim; ++i) m.at(i, j) = basis[j][i];
  return solve(m, v);
}

}  // namespace hf

#endif
