#include "affbol/linalg.hpp"

#include <cassert>

#include "affbol/errors.hpp"

namespace affbol {

Matrix Matrix::from_rows(std::size_t cols, const std::vector<Vec>& rows) {
  Matrix m(0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

void Matrix::append_row(std::span<const Elem> v) {
  if (v.size() != cols_) {
    throw Error(ErrorKind::DimensionMismatch, "row length does not match column count");
  }
  data_.insert(data_.end(), v.begin(), v.end());
  ++rows_;
}

void Matrix::truncate(std::size_t k) {
  if (k >= rows_) return;
  rows_ = k;
  data_.resize(rows_ * cols_);
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

Matrix stack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "stacked matrices differ in column count");
  }
  Matrix m = a;
  for (std::size_t r = 0; r < b.rows(); ++r) m.append_row(b.row(r));
  return m;
}

RrefResult rref(const Field& f, Matrix m) {
  RrefResult out;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < m.cols() && lead < m.rows(); ++c) {
    std::size_t p = lead;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != lead) {
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(p, k), m(lead, k));
    }
    const Elem inv = f.inv(m(lead, c));
    for (std::size_t k = c; k < m.cols(); ++k) m(lead, k) = f.mul(m(lead, k), inv);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead) continue;
      const Elem factor = m(r, c);
      if (factor == 0) continue;
      const Elem nf = f.neg(factor);
      for (std::size_t k = c; k < m.cols(); ++k) {
        m(r, k) = f.add(m(r, k), f.mul(nf, m(lead, k)));
      }
    }
    out.pivots.push_back(c);
    ++lead;
  }
  out.rank = lead;
  out.matrix = std::move(m);
  return out;
}

bool is_rref(const Matrix& m) {
  std::size_t prev_pivot = 0;
  bool seen_zero_row = false;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::size_t c = 0;
    while (c < m.cols() && m(r, c) == 0) ++c;
    if (c == m.cols()) {
      seen_zero_row = true;
      continue;
    }
    if (seen_zero_row) return false;
    if (r > 0 && c <= prev_pivot) return false;
    if (m(r, c) != 1) return false;
    for (std::size_t o = 0; o < m.rows(); ++o) {
      if (o != r && m(o, c) != 0) return false;
    }
    prev_pivot = c;
  }
  return true;
}

Matrix row_space_basis(const Field& f, const Matrix& m) {
  auto res = rref(f, m);
  res.matrix.truncate(res.rank);
  return std::move(res.matrix);
}

std::size_t rank(const Field& f, const Matrix& m) { return rref(f, m).rank; }

Matrix kernel(const Field& f, const Matrix& m) {
  const auto red = rref(f, m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : red.pivots) is_pivot[p] = true;
  Matrix k(0, n);
  // One basis vector per free column, in increasing column order; this is
  // already RREF up to row order, which rref() then fixes.
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vec v(n, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < red.rank; ++i) v[red.pivots[i]] = f.neg(red.matrix(i, free));
    k.append_row(v);
  }
  return row_space_basis(f, k);
}

AffineSolution solve_affine(const Field& f, const Matrix& m, std::span<const Elem> b) {
  if (b.size() != m.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "right-hand side length does not match row count");
  }
  Matrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = b[r];
  }
  const auto red = rref(f, aug);
  AffineSolution out;
  out.kernel = kernel(f, m);
  if (!red.pivots.empty() && red.pivots.back() == m.cols()) return out;
  Vec x(m.cols(), 0);
  for (std::size_t i = 0; i < red.rank; ++i) x[red.pivots[i]] = red.matrix(i, m.cols());
  out.particular = std::move(x);
  return out;
}

Matrix subspace_sum(const Field& f, const Matrix& u, const Matrix& v) {
  return row_space_basis(f, stack(u, v));
}

Matrix subspace_intersection(const Field& f, const Matrix& u, const Matrix& v) {
  if (u.cols() != v.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "subspaces live in different ambient spaces");
  }
  // (U ∩ V) = (U^⊥ + V^⊥)^⊥ for the standard nondegenerate form.
  return kernel(f, stack(kernel(f, u), kernel(f, v)));
}

Vec mat_vec(const Field& f, const Matrix& m, std::span<const Elem> x) {
  assert(x.size() == m.cols());
  Vec y(m.rows(), 0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Elem acc = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) acc = f.add(acc, f.mul(m(r, c), x[c]));
    y[r] = acc;
  }
  return y;
}

Vec combine_rows(const Field& f, const Matrix& m, std::span<const Elem> coeffs) {
  assert(coeffs.size() == m.rows());
  Vec y(m.cols(), 0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (coeffs[r] == 0) continue;
    for (std::size_t c = 0; c < m.cols(); ++c) y[c] = f.add(y[c], f.mul(coeffs[r], m(r, c)));
  }
  return y;
}

Vec vec_add(const Field& f, std::span<const Elem> a, std::span<const Elem> b) {
  assert(a.size() == b.size());
  Vec y(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) y[i] = f.add(a[i], b[i]);
  return y;
}

Vec vec_sub(const Field& f, std::span<const Elem> a, std::span<const Elem> b) {
  assert(a.size() == b.size());
  Vec y(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) y[i] = f.sub(a[i], b[i]);
  return y;
}

}  // namespace affbol
