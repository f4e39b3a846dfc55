#include "affbol/config.hpp"

#include <cstdlib>
#include <string>

namespace affbol {

std::uint64_t point_budget() {
  if (const char* env = std::getenv("AFFBOL_BUDGET")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::char_traits<char>::length(env) && v > 0) return v;
    } catch (const std::exception&) {
    }
  }
  return kDefaultPointBudget;
}

}  // namespace affbol
