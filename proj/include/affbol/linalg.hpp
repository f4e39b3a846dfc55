#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "affbol/field.hpp"

namespace affbol {

using Vec = std::vector<Elem>;

/// Dense row-major matrix of field elements. The column count is explicit so
/// that a 0 x n matrix still knows its ambient dimension.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static Matrix from_rows(std::size_t cols, const std::vector<Vec>& rows);
  static Matrix identity(std::size_t n);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] bool empty() const noexcept { return rows_ == 0; }

  Elem& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  Elem operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  [[nodiscard]] std::span<Elem> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  [[nodiscard]] std::span<const Elem> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }
  [[nodiscard]] Vec row_vec(std::size_t r) const { auto s = row(r); return {s.begin(), s.end()}; }

  void append_row(std::span<const Elem> v);
  /// Keeps the first k rows.
  void truncate(std::size_t k);

  [[nodiscard]] Matrix transposed() const;
  [[nodiscard]] const std::vector<Elem>& data() const noexcept { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

/// Rows of a above rows of b; column counts must agree.
Matrix stack(const Matrix& a, const Matrix& b);

struct RrefResult {
  Matrix matrix;  // same shape as the input, zero rows at the bottom
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

RrefResult rref(const Field& f, Matrix m);

/// True when m is in reduced row echelon form (zero rows last).
bool is_rref(const Matrix& m);

/// RREF basis of the row space with zero rows removed.
Matrix row_space_basis(const Field& f, const Matrix& m);

std::size_t rank(const Field& f, const Matrix& m);

/// Basis (as rows, RREF) of {x : m x = 0}.
Matrix kernel(const Field& f, const Matrix& m);

struct AffineSolution {
  std::optional<Vec> particular;  // empty when the system is infeasible
  Matrix kernel;                  // basis of the homogeneous solutions
};

/// Solves m x = b. Infeasibility is reported through an empty `particular`.
AffineSolution solve_affine(const Field& f, const Matrix& m, std::span<const Elem> b);

/// RREF basis of rowspace(u) + rowspace(v).
Matrix subspace_sum(const Field& f, const Matrix& u, const Matrix& v);

/// RREF basis of rowspace(u) ∩ rowspace(v).
Matrix subspace_intersection(const Field& f, const Matrix& u, const Matrix& v);

/// y = m x (m is rows x cols, x has cols entries).
Vec mat_vec(const Field& f, const Matrix& m, std::span<const Elem> x);

/// x * m, i.e. the combination of rows of m with coefficients x.
Vec combine_rows(const Field& f, const Matrix& m, std::span<const Elem> coeffs);

Vec vec_add(const Field& f, std::span<const Elem> a, std::span<const Elem> b);
Vec vec_sub(const Field& f, std::span<const Elem> a, std::span<const Elem> b);

}  // namespace affbol
