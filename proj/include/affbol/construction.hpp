#pragma once

#include <vector>

#include "affbol/families.hpp"
#include "affbol/geometry.hpp"

namespace affbol {

/// Hyperplane family A_i = H_i, B_i = H_i + beta_i over all linear
/// hyperplanes H_i of F_q^n, giving (q^n - 1)/(q - 1) skew pairs.
struct ConstructionOutput {
  AffineFamily family;
  std::vector<LinearSubspace> hyperplanes;
  std::vector<Vec> shifts;
};

/// Smallest vector in point_index order outside the hyperplane h.
Vec choose_beta(const LinearSubspace& h);

/// Hyperplanes follow enumerate_linear_hyperplanes order. Throws
/// InternalInconsistency if the result fails the skew verifier.
ConstructionOutput build_construction(const Space& space);

}  // namespace affbol
