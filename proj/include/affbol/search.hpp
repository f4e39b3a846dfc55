#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "affbol/bitset.hpp"
#include "affbol/families.hpp"
#include "affbol/geometry.hpp"

namespace affbol {

/// Allowed dimensions for one side of a pair; empty means every dimension.
using DimFilter = std::vector<std::size_t>;

/// One admissible pair (A, B) with A ∩ B = ∅. Bit j of `out` is set iff
/// A ∩ B_j ≠ ∅, i.e. node j may follow this node in a sequence.
template <class Subset>
struct PairNode {
  std::size_t id = 0;
  std::size_t a_index = 0;  // into GroundSet::subsets
  std::size_t b_index = 0;
  Bitset out;
};

/// The search universe: every subspace of the geometry plus all disjoint
/// ordered pairs drawn from it.
template <class Subset>
struct GroundSet {
  Space space;  // affine: F_q^n; projective: homogeneous F_q^{n+1}
  DimFilter dims_a;
  DimFilter dims_b;
  std::vector<Subset> subsets;
  std::vector<PairNode<Subset>> nodes;

  [[nodiscard]] const Subset& a(std::size_t node) const { return subsets[nodes[node].a_index]; }
  [[nodiscard]] const Subset& b(std::size_t node) const { return subsets[nodes[node].b_index]; }
  [[nodiscard]] std::vector<Bitset> adjacency() const;
};

using AffineGroundSet = GroundSet<AffineSubspace>;
using ProjectiveGroundSet = GroundSet<ProjectiveSubspace>;

/// Throws Error{BudgetExceeded} when the subspace enumeration or the
/// node count exceeds `budget`.
AffineGroundSet build_ground_set(const Space& space, const DimFilter& dims_a,
                                 const DimFilter& dims_b, std::uint64_t budget = point_budget());

/// `homogeneous` is F_q^{n+1} for PG(n, q); filters are projective dimensions.
ProjectiveGroundSet build_projective_ground_set(const Space& homogeneous, const DimFilter& dims_a,
                                                const DimFilter& dims_b,
                                                std::uint64_t budget = point_budget());

/// current_k + min(|candidates|, number of colour classes of a greedy
/// colouring of the symmetrised compatibility graph on the candidates).
/// `symmetric[u]` holds the nodes joined to u by an edge in either direction.
std::size_t prune_bound(std::size_t current_k, const Bitset& candidates,
                        const std::vector<Bitset>& symmetric);

std::vector<Bitset> symmetrize(const std::vector<Bitset>& out);

/// Smallest node id of every orbit under the affine group x -> Mx + t (or
/// GL(n+1, q) for projective ground sets), in increasing order.
/// Throws Error{BudgetExceeded} when |group| · |ground set| exceeds `work_budget`.
std::vector<std::size_t> canonical_seeds(const AffineGroundSet& ground,
                                         std::uint64_t work_budget = std::uint64_t{1} << 27);
std::vector<std::size_t> canonical_seeds(const ProjectiveGroundSet& ground,
                                         std::uint64_t work_budget = std::uint64_t{1} << 27);

struct SearchLimits {
  /// Maximum DFS node expansions; 0 means unlimited.
  std::uint64_t max_expansions = 0;
  unsigned workers = 1;
  bool use_seeds = true;
  /// Checkpoint file read on start (if present) and rewritten after each seed.
  std::optional<std::string> checkpoint_path;
};

struct SearchStats {
  std::uint64_t nodes_expanded = 0;
  std::uint64_t prunes_size = 0;
  std::uint64_t prunes_coloring = 0;
  std::uint64_t prunes_degree = 0;
  std::uint64_t prunes_memo = 0;
  std::size_t ground_nodes = 0;
  std::size_t seeds_total = 0;
  std::size_t seeds_resumed = 0;
  bool seeding_fallback = false;
  double wall_seconds = 0;
};

template <class Subset>
struct SearchResult {
  std::size_t best_m = 0;
  std::vector<std::size_t> witness_nodes;
  PairFamily<Subset> witness;
  bool optimal = false;
  SearchStats stats;
  /// Affine: (q^n-1)/(q-1). Projective: unused (0).
  std::uint64_t lower_bound = 0;
  /// Affine: q^n + 1 for q >= 3. Projective: 2^{n+1} - 2 (conjectured).
  std::optional<std::uint64_t> upper_bound;
};

using AffineSearchResult = SearchResult<AffineSubspace>;
using ProjectiveSearchResult = SearchResult<ProjectiveSubspace>;

/// Longest sequence of nodes p_1..p_k with p_i -> p_j for all i < j.
/// A search that hits max_expansions returns the best found with optimal = false.
AffineSearchResult search_max(const AffineGroundSet& ground, const SearchLimits& limits = {});

/// Builds PG(n, q) ground set for projective dimension n and searches it.
ProjectiveSearchResult search_projective(const Space& homogeneous, const SearchLimits& limits = {},
                                         const DimFilter& dims_a = {},
                                         const DimFilter& dims_b = {});
ProjectiveSearchResult search_max(const ProjectiveGroundSet& ground,
                                  const SearchLimits& limits = {});

}  // namespace affbol
