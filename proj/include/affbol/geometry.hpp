#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "affbol/config.hpp"
#include "affbol/field.hpp"
#include "affbol/linalg.hpp"

namespace affbol {

/// The ambient space F_q^n.
class Space {
 public:
  /// Throws Error{BudgetExceeded} when q^n exceeds `budget`.
  static Space make(Field field, std::size_t n, std::uint64_t budget = point_budget());

  [[nodiscard]] const Field& field() const noexcept { return field_; }
  [[nodiscard]] std::size_t dim() const noexcept { return n_; }
  [[nodiscard]] std::uint32_t q() const noexcept { return field_.order(); }
  [[nodiscard]] std::uint64_t point_count() const noexcept { return points_; }

  friend bool operator==(const Space& a, const Space& b) noexcept {
    return a.n_ == b.n_ && a.field_ == b.field_;
  }

 private:
  Space(Field f, std::size_t n, std::uint64_t points) : field_(std::move(f)), n_(n), points_(points) {}

  Field field_;
  std::size_t n_;
  std::uint64_t points_;
};

/// Base-q index of a point, coordinate 1 least significant.
std::uint64_t point_index(const Space& space, std::span<const Elem> v);
Vec point_unindex(const Space& space, std::uint64_t index);

/// A linear subspace held as its RREF basis (no zero rows).
class LinearSubspace {
 public:
  /// Span of the rows of `generators`.
  static LinearSubspace span(const Space& space, const Matrix& generators);
  static LinearSubspace zero(const Space& space);
  static LinearSubspace full(const Space& space);

  [[nodiscard]] const Space& space() const noexcept { return space_; }
  [[nodiscard]] const Matrix& basis() const noexcept { return basis_; }
  [[nodiscard]] std::size_t dim() const noexcept { return basis_.rows(); }
  [[nodiscard]] const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  [[nodiscard]] bool contains(std::span<const Elem> v) const;
  /// v minus its projection along the pivots; zero iff v is a member.
  [[nodiscard]] Vec reduce(std::span<const Elem> v) const;

  [[nodiscard]] std::size_t hash() const noexcept;

  friend bool operator==(const LinearSubspace& a, const LinearSubspace& b) noexcept {
    return a.space_ == b.space_ && a.basis_ == b.basis_;
  }

 private:
  LinearSubspace(Space s, Matrix basis);

  Space space_;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

LinearSubspace intersect(const LinearSubspace& u, const LinearSubspace& v);
LinearSubspace sum(const LinearSubspace& u, const LinearSubspace& v);

/// A nonempty coset base + direction. Canonical: the direction basis is RREF
/// and the base point is zero on every pivot column, so equal cosets compare
/// equal member-wise.
class AffineSubspace {
 public:
  [[nodiscard]] const Space& space() const noexcept { return direction_.space(); }
  [[nodiscard]] const LinearSubspace& direction() const noexcept { return direction_; }
  [[nodiscard]] const Vec& base() const noexcept { return base_; }
  [[nodiscard]] std::size_t dim() const noexcept { return direction_.dim(); }
  /// Number of points, q^dim.
  [[nodiscard]] std::uint64_t size() const noexcept;

  [[nodiscard]] bool contains(std::span<const Elem> v) const;
  [[nodiscard]] AffineSubspace translate(std::span<const Elem> v) const;

  /// Calls fn(point) for all q^dim points.
  void for_each_point(const std::function<void(const Vec&)>& fn) const;

  [[nodiscard]] std::size_t hash() const noexcept;

  friend bool operator==(const AffineSubspace& a, const AffineSubspace& b) noexcept {
    return a.direction_ == b.direction_ && a.base_ == b.base_;
  }

 private:
  friend AffineSubspace affine_canon(const Space&, const Matrix&, std::span<const Elem>);
  friend AffineSubspace affine_from_linear(const LinearSubspace&);
  AffineSubspace(LinearSubspace dir, Vec base) : direction_(std::move(dir)), base_(std::move(base)) {}

  LinearSubspace direction_;
  Vec base_;
};

/// Canonical coset point + rowspace(direction_basis).
/// Throws Error{DimensionMismatch} on shape disagreement.
AffineSubspace affine_canon(const Space& space, const Matrix& direction_basis,
                            std::span<const Elem> point);

/// The coset through the origin.
AffineSubspace affine_from_linear(const LinearSubspace& u);

struct IntersectionResult {
  std::optional<AffineSubspace> coset;  // empty intersection when absent
  [[nodiscard]] bool empty() const noexcept { return !coset.has_value(); }
  /// Exponent t with |A ∩ B| = q^t; only meaningful when nonempty.
  [[nodiscard]] std::optional<std::size_t> exponent() const {
    if (!coset) return std::nullopt;
    return coset->dim();
  }
};

IntersectionResult affine_intersect(const AffineSubspace& a, const AffineSubspace& b);

/// alpha ∈ F − G, decided as alpha − (base F − base G) ∈ dir F + dir G.
bool minkowski_member(std::span<const Elem> alpha, const AffineSubspace& f,
                      const AffineSubspace& g);

/// Number of d-dimensional linear subspaces of F_q^n; saturates at UINT64_MAX.
std::uint64_t gaussian_binomial(std::size_t n, std::size_t d, std::uint64_t q);

/// Number of d-dimensional cosets in F_q^n; saturates at UINT64_MAX.
std::uint64_t affine_subspace_count(std::size_t n, std::size_t d, std::uint64_t q);

/// All d-dimensional linear subspaces, ordered by RREF basis entries (row-major,
/// lexicographic). Throws Error{BudgetExceeded} above `budget` results.
std::vector<LinearSubspace> enumerate_linear_subspaces(const Space& space, std::size_t d,
                                                       std::uint64_t budget = point_budget());

/// One canonical coset per affine subspace with dimension in `dims`, ordered
/// by (dim, direction basis entries, point_index(base)).
/// Throws Error{BudgetExceeded} above `budget` results.
std::vector<AffineSubspace> enumerate_affine_subspaces(const Space& space,
                                                       std::span<const std::size_t> dims,
                                                       std::uint64_t budget = point_budget());

/// Normal vectors with first nonzero coordinate 1, in lexicographic order
/// (coordinate 1 most significant).
std::vector<Vec> normalized_normals(const Space& space);

/// The (q^n-1)/(q-1) linear hyperplanes, ker(normal) for each normalized normal.
std::vector<LinearSubspace> enumerate_linear_hyperplanes(const Space& space);

/// Projective subspace of PG(n, q), held as its carrier in F_q^{n+1}.
class ProjectiveSubspace {
 public:
  /// Throws Error{DimensionMismatch} when the span is {0}.
  static ProjectiveSubspace make(const Space& homogeneous, const Matrix& generators);
  static ProjectiveSubspace from_carrier(LinearSubspace carrier);

  [[nodiscard]] const LinearSubspace& carrier() const noexcept { return carrier_; }
  [[nodiscard]] const Space& space() const noexcept { return carrier_.space(); }
  [[nodiscard]] std::size_t projective_dim() const noexcept { return carrier_.dim() - 1; }

  friend bool operator==(const ProjectiveSubspace&, const ProjectiveSubspace&) = default;

 private:
  explicit ProjectiveSubspace(LinearSubspace c) : carrier_(std::move(c)) {}
  LinearSubspace carrier_;
};

bool projective_disjoint(const ProjectiveSubspace& p, const ProjectiveSubspace& q);

/// Projective subspaces of PG(n, q) (carriers in the (n+1)-dim `homogeneous`
/// space) whose carrier dimensions lie in `carrier_dims`; dimension 0 is skipped.
std::vector<ProjectiveSubspace> enumerate_projective_subspaces(
    const Space& homogeneous, std::span<const std::size_t> carrier_dims,
    std::uint64_t budget = point_budget());

}  // namespace affbol
