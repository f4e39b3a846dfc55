#pragma once

#include <cstdint>

namespace affbol {

inline constexpr std::uint64_t kDefaultPointBudget = std::uint64_t{1} << 24;

/// Cap on q^n and on enumeration sizes. AFFBOL_BUDGET overrides the default
/// 2^24 when set to a positive integer.
std::uint64_t point_budget();

}  // namespace affbol
