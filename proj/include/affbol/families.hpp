#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "affbol/geometry.hpp"

namespace affbol {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class Geometry { Sets, Linear, Affine, Projective };
enum class Mode { Skew, Symmetric };

std::string_view to_string(Geometry g) noexcept;
std::string_view to_string(Mode m) noexcept;

/// A finite set of nonnegative integers, sorted and duplicate free.
class FiniteSet {
 public:
  FiniteSet() = default;
  explicit FiniteSet(std::vector<std::int64_t> elements);

  [[nodiscard]] const std::vector<std::int64_t>& elements() const noexcept { return elems_; }
  [[nodiscard]] std::size_t size() const noexcept { return elems_.size(); }

  friend bool operator==(const FiniteSet&, const FiniteSet&) = default;

 private:
  std::vector<std::int64_t> elems_;
};

/// Ordered family of set pairs (A_i, B_i). Reports use 1-based indices.
template <class Subset>
struct PairFamily {
  Mode mode = Mode::Skew;
  std::vector<std::pair<Subset, Subset>> pairs;

  [[nodiscard]] std::size_t size() const noexcept { return pairs.size(); }
  friend bool operator==(const PairFamily&, const PairFamily&) = default;
};

using SetFamily = PairFamily<FiniteSet>;
using LinearFamily = PairFamily<LinearSubspace>;
using AffineFamily = PairFamily<AffineSubspace>;
using ProjectiveFamily = PairFamily<ProjectiveSubspace>;

template <class S> constexpr Geometry geometry_of();
template <> constexpr Geometry geometry_of<FiniteSet>() { return Geometry::Sets; }
template <> constexpr Geometry geometry_of<LinearSubspace>() { return Geometry::Linear; }
template <> constexpr Geometry geometry_of<AffineSubspace>() { return Geometry::Affine; }
template <> constexpr Geometry geometry_of<ProjectiveSubspace>() { return Geometry::Projective; }

enum class ViolationKind { DiagonalNonempty, OffDiagonalEmpty };
std::string_view to_string(ViolationKind k) noexcept;

struct Violation {
  ViolationKind kind;
  std::size_t i;  // 1-based
  std::size_t j;  // 1-based
  /// A common element/point for DiagonalNonempty, a nonzero common vector for
  /// linear and projective geometry. Absent for OffDiagonalEmpty.
  std::optional<std::vector<std::int64_t>> witness;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Common element of a and b, or nothing when they are disjoint. For linear
/// and projective subspaces "disjoint" means meeting only in the zero vector.
std::optional<std::vector<std::int64_t>> meet_witness(const FiniteSet& a, const FiniteSet& b);
std::optional<std::vector<std::int64_t>> meet_witness(const LinearSubspace& a,
                                                      const LinearSubspace& b);
std::optional<std::vector<std::int64_t>> meet_witness(const AffineSubspace& a,
                                                      const AffineSubspace& b);
std::optional<std::vector<std::int64_t>> meet_witness(const ProjectiveSubspace& a,
                                                      const ProjectiveSubspace& b);

/// Checks the cross-intersecting conditions for the family's mode and returns
/// every violation sorted by (i, j). Empty result means the family passes.
///
/// Skew: A_i ∩ B_i = ∅ for all i and A_i ∩ B_j ≠ ∅ for i < j.
/// Symmetric: A_i ∩ B_j = ∅ exactly when i = j.
///
/// Throws Error{ContextMismatch} when members live in different spaces.
std::vector<Violation> verify_cross_intersecting(const SetFamily& fam);
std::vector<Violation> verify_cross_intersecting(const LinearFamily& fam);
std::vector<Violation> verify_cross_intersecting(const AffineFamily& fam);
std::vector<Violation> verify_cross_intersecting(const ProjectiveFamily& fam);

/// Sum of 1 / C(|A_i|+|B_i|, |A_i|). Throws Error{NotVerified} unless the
/// family satisfies the symmetric condition (whatever its declared mode).
Rational bollobas_sum(const SetFamily& fam);

/// C(r+s, r).
BigInt uniform_bound(std::uint64_t r, std::uint64_t s);

/// Linear pairs with optional uniform dimensions (r, s).
struct LinearPairFamily {
  LinearFamily family;
  std::optional<std::pair<std::size_t, std::size_t>> uniform;

  /// Sets `uniform` when every U_i has one dimension and every V_i another.
  static LinearPairFamily from(LinearFamily fam);
};

/// Dimension-based check: dim(U_i ∩ V_i) = 0, and dim(U_i ∩ V_j) ≥ 1 for
/// i < j (all i ≠ j in symmetric mode), where the intersection dimension is
/// dim U + dim V − dim(U + V). A uniform family that passes and has more than
/// C(r+s, r) members raises InternalInconsistency.
std::vector<Violation> verify_linear_pairs(const LinearPairFamily& fam);

}  // namespace affbol
