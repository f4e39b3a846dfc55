#include "affbol/construction.hpp"

#include "affbol/errors.hpp"

namespace affbol {

Vec choose_beta(const LinearSubspace& h) {
  const Space& space = h.space();
  if (h.dim() + 1 != space.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "choose_beta expects a hyperplane");
  }
  for (std::uint64_t idx = 0; idx < space.point_count(); ++idx) {
    auto v = point_unindex(space, idx);
    if (!h.contains(v)) return v;
  }
  throw InternalInconsistency("hyperplane covers the whole space");
}

ConstructionOutput build_construction(const Space& space) {
  ConstructionOutput out;
  out.family.mode = Mode::Skew;
  out.hyperplanes = enumerate_linear_hyperplanes(space);
  for (const auto& h : out.hyperplanes) {
    auto beta = choose_beta(h);
    auto a = affine_from_linear(h);
    auto b = a.translate(beta);
    out.family.pairs.emplace_back(std::move(a), std::move(b));
    out.shifts.push_back(std::move(beta));
  }
  if (!verify_cross_intersecting(out.family).empty()) {
    throw InternalInconsistency("hyperplane construction failed the skew verifier");
  }
  return out;
}

}  // namespace affbol
