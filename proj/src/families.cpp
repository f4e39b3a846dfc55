#include "affbol/families.hpp"

#include <algorithm>
#include <string>

#include "affbol/errors.hpp"

namespace affbol {

std::string_view to_string(Geometry g) noexcept {
  switch (g) {
    case Geometry::Sets: return "sets";
    case Geometry::Linear: return "linear";
    case Geometry::Affine: return "affine";
    case Geometry::Projective: return "projective";
  }
  return "unknown";
}

std::string_view to_string(Mode m) noexcept { return m == Mode::Skew ? "skew" : "symmetric"; }

std::string_view to_string(ViolationKind k) noexcept {
  return k == ViolationKind::DiagonalNonempty ? "DiagonalNonempty" : "OffDiagonalEmpty";
}

FiniteSet::FiniteSet(std::vector<std::int64_t> elements) : elems_(std::move(elements)) {
  std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

namespace {

std::vector<std::int64_t> widen(std::span<const Elem> v) { return {v.begin(), v.end()}; }

const Space* space_of(const FiniteSet&) { return nullptr; }
const Space* space_of(const LinearSubspace& s) { return &s.space(); }
const Space* space_of(const AffineSubspace& s) { return &s.space(); }
const Space* space_of(const ProjectiveSubspace& s) { return &s.space(); }

template <class S>
void check_context(const PairFamily<S>& fam) {
  const Space* first = nullptr;
  for (const auto& [a, b] : fam.pairs) {
    for (const Space* s : {space_of(a), space_of(b)}) {
      if (s == nullptr) continue;
      if (first == nullptr) {
        first = s;
      } else if (!(*first == *s)) {
        throw Error(ErrorKind::ContextMismatch, "family members live in different spaces");
      }
    }
  }
}

bool required_nonempty(Mode mode, std::size_t i, std::size_t j) {
  return mode == Mode::Symmetric ? i != j : i < j;
}

template <class S>
std::vector<Violation> verify_generic(const PairFamily<S>& fam) {
  check_context(fam);
  std::vector<Violation> out;
  const std::size_t m = fam.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) {
        if (auto w = meet_witness(fam.pairs[i].first, fam.pairs[i].second)) {
          out.push_back({ViolationKind::DiagonalNonempty, i + 1, j + 1, std::move(w)});
        }
      } else if (required_nonempty(fam.mode, i, j)) {
        if (!meet_witness(fam.pairs[i].first, fam.pairs[j].second)) {
          out.push_back({ViolationKind::OffDiagonalEmpty, i + 1, j + 1, std::nullopt});
        }
      }
    }
  }
  return out;
}

}  // namespace

std::optional<std::vector<std::int64_t>> meet_witness(const FiniteSet& a, const FiniteSet& b) {
  std::vector<std::int64_t> common;
  std::set_intersection(a.elements().begin(), a.elements().end(), b.elements().begin(),
                        b.elements().end(), std::back_inserter(common));
  if (common.empty()) return std::nullopt;
  return std::vector<std::int64_t>{common.front()};
}

std::optional<std::vector<std::int64_t>> meet_witness(const LinearSubspace& a,
                                                      const LinearSubspace& b) {
  const auto common = intersect(a, b);
  if (common.dim() == 0) return std::nullopt;
  return widen(common.basis().row(0));
}

std::optional<std::vector<std::int64_t>> meet_witness(const AffineSubspace& a,
                                                      const AffineSubspace& b) {
  const auto res = affine_intersect(a, b);
  if (res.empty()) return std::nullopt;
  return widen(res.coset->base());
}

std::optional<std::vector<std::int64_t>> meet_witness(const ProjectiveSubspace& a,
                                                      const ProjectiveSubspace& b) {
  return meet_witness(a.carrier(), b.carrier());
}

std::vector<Violation> verify_cross_intersecting(const SetFamily& fam) {
  return verify_generic(fam);
}

std::vector<Violation> verify_cross_intersecting(const LinearFamily& fam) {
  return verify_linear_pairs(LinearPairFamily::from(fam));
}

std::vector<Violation> verify_cross_intersecting(const AffineFamily& fam) {
  return verify_generic(fam);
}

std::vector<Violation> verify_cross_intersecting(const ProjectiveFamily& fam) {
  return verify_generic(fam);
}

BigInt uniform_bound(std::uint64_t r, std::uint64_t s) {
  BigInt c = 1;
  // C(r+s, k) built incrementally stays integral at each step.
  for (std::uint64_t k = 1; k <= r; ++k) {
    c *= BigInt(s + k);
    c /= BigInt(k);
  }
  return c;
}

Rational bollobas_sum(const SetFamily& fam) {
  SetFamily sym = fam;
  sym.mode = Mode::Symmetric;
  if (!verify_cross_intersecting(sym).empty()) {
    throw Error(ErrorKind::NotVerified, "family does not satisfy the symmetric condition");
  }
  Rational total = 0;
  for (const auto& [a, b] : fam.pairs) {
    total += Rational(BigInt(1), uniform_bound(a.size(), b.size()));
  }
  return total;
}

LinearPairFamily LinearPairFamily::from(LinearFamily fam) {
  LinearPairFamily out{std::move(fam), std::nullopt};
  if (out.family.pairs.empty()) return out;
  const std::size_t r = out.family.pairs.front().first.dim();
  const std::size_t s = out.family.pairs.front().second.dim();
  const bool uniform = std::all_of(out.family.pairs.begin(), out.family.pairs.end(),
                                   [&](const auto& p) {
                                     return p.first.dim() == r && p.second.dim() == s;
                                   });
  if (uniform) out.uniform = std::make_pair(r, s);
  return out;
}

std::vector<Violation> verify_linear_pairs(const LinearPairFamily& lp) {
  const auto& fam = lp.family;
  check_context(fam);
  auto meet_dim = [](const LinearSubspace& u, const LinearSubspace& v) {
    return u.dim() + v.dim() - sum(u, v).dim();
  };
  std::vector<Violation> out;
  const std::size_t m = fam.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const auto& u = fam.pairs[i].first;
      const auto& v = fam.pairs[j].second;
      if (i == j) {
        if (meet_dim(u, v) != 0) {
          out.push_back({ViolationKind::DiagonalNonempty, i + 1, j + 1, meet_witness(u, v)});
        }
      } else if (required_nonempty(fam.mode, i, j) && meet_dim(u, v) == 0) {
        out.push_back({ViolationKind::OffDiagonalEmpty, i + 1, j + 1, std::nullopt});
      }
    }
  }
  if (out.empty() && lp.uniform) {
    const auto [r, s] = *lp.uniform;
    if (BigInt(m) > uniform_bound(r, s)) {
      throw InternalInconsistency("verified uniform linear family exceeds C(r+s, r)");
    }
  }
  return out;
}

}  // namespace affbol
