#include <random>

#include <gtest/gtest.h>

#include "affbol/construction.hpp"
#include "affbol/errors.hpp"
#include "affbol/families.hpp"
#include "oracles.hpp"
#include "test_seed.hpp"

using namespace affbol;

namespace {

Space space_of(std::uint32_t q, std::size_t n) { return Space::make(Field::make(q), n); }

// Recomputes the required pairwise conditions from raw point sets.
bool brute_force_ok(const AffineFamily& fam) {
  const std::size_t m = fam.size();
  for (std::size_t i = 0; i < m; ++i) {
    const auto a = oracle::points_of(fam.pairs[i].first);
    for (std::size_t j = 0; j < m; ++j) {
      const bool meet = !oracle::intersection(a, oracle::points_of(fam.pairs[j].second)).empty();
      if (i == j && meet) return false;
      const bool required = fam.mode == Mode::Symmetric ? i != j : i < j;
      if (i != j && required && !meet) return false;
    }
  }
  return true;
}

SetFamily tight_family(std::size_t r, std::size_t s) {
  SetFamily fam;
  fam.mode = Mode::Symmetric;
  const std::size_t n = r + s;
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != r) continue;
    std::vector<std::int64_t> a, b;
    for (std::size_t k = 0; k < n; ++k) ((mask >> k) & 1 ? a : b).push_back(static_cast<std::int64_t>(k + 1));
    fam.pairs.emplace_back(FiniteSet(a), FiniteSet(b));
  }
  return fam;
}

}  // namespace

TEST(Verify, ConstructionPassesBothModes) {
  const auto c = build_construction(space_of(3, 2));
  EXPECT_TRUE(verify_cross_intersecting(c.family).empty());
  auto sym = c.family;
  sym.mode = Mode::Symmetric;
  EXPECT_TRUE(verify_cross_intersecting(sym).empty());
}

TEST(Verify, DiagonalViolationCarriesWitness) {
  const auto s = space_of(3, 2);
  const auto a = affine_canon(s, Matrix::from_rows(2, {{1, 1}}), Vec{0, 1});
  AffineFamily fam{Mode::Skew, {{a, a}}};
  const auto vs = verify_cross_intersecting(fam);
  ASSERT_EQ(vs.size(), 1U);
  EXPECT_EQ(vs[0].kind, ViolationKind::DiagonalNonempty);
  EXPECT_EQ(vs[0].i, 1U);
  EXPECT_EQ(vs[0].j, 1U);
  ASSERT_TRUE(vs[0].witness);
  EXPECT_EQ(*vs[0].witness, (std::vector<std::int64_t>{a.base().begin(), a.base().end()}));
}

TEST(Verify, SkewIgnoresLowerTriangleSymmetricDoesNot) {
  const auto s = space_of(3, 1);
  auto pt = [&](Elem x) { return affine_canon(s, Matrix(0, 1), Vec{x}); };
  AffineFamily fam{Mode::Skew, {{pt(0), pt(1)}, {pt(2), pt(0)}}};
  // A_1 ∩ B_2 = {0}: ok. A_2 ∩ B_1 = {2} ∩ {1} = ∅: only symmetric complains.
  EXPECT_TRUE(verify_cross_intersecting(fam).empty());
  fam.mode = Mode::Symmetric;
  const auto vs = verify_cross_intersecting(fam);
  ASSERT_EQ(vs.size(), 1U);
  EXPECT_EQ(vs[0].kind, ViolationKind::OffDiagonalEmpty);
  EXPECT_EQ(vs[0].i, 2U);
  EXPECT_EQ(vs[0].j, 1U);
}

TEST(Verify, ReportsAllViolationsSorted) {
  const auto s = space_of(2, 2);
  auto pt = [&](Elem x, Elem y) { return affine_canon(s, Matrix(0, 2), Vec{x, y}); };
  AffineFamily fam{Mode::Skew, {{pt(0, 0), pt(0, 0)}, {pt(1, 0), pt(1, 1)}, {pt(1, 1), pt(1, 1)}}};
  const auto vs = verify_cross_intersecting(fam);
  ASSERT_EQ(vs.size(), 5U);
  for (std::size_t k = 1; k < vs.size(); ++k) {
    EXPECT_LT(std::make_pair(vs[k - 1].i, vs[k - 1].j), std::make_pair(vs[k].i, vs[k].j));
  }
  // Each violation reproduces when its pair is re-checked on its own.
  for (const auto& v : vs) {
    const bool meet = !affine_intersect(fam.pairs[v.i - 1].first, fam.pairs[v.j - 1].second).empty();
    EXPECT_EQ(meet, v.kind == ViolationKind::DiagonalNonempty);
  }
}

TEST(Verify, SoundAgainstBruteForceOnRandomFamilies) {
  std::mt19937_64 rng(affbol_test::seed());
  const auto s = space_of(3, 2);
  int ok_count = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    AffineFamily fam;
    fam.mode = trial % 2 ? Mode::Symmetric : Mode::Skew;
    const std::size_t m = 1 + rng() % 4;
    for (std::size_t i = 0; i < m; ++i) {
      const auto ra = oracle::random_raw_coset(rng, s);
      const auto rb = oracle::random_raw_coset(rng, s);
      fam.pairs.emplace_back(affine_canon(s, ra.gens, ra.base), affine_canon(s, rb.gens, rb.base));
    }
    const bool ok = verify_cross_intersecting(fam).empty();
    ok_count += ok;
    ASSERT_EQ(ok, brute_force_ok(fam)) << "trial " << trial;
  }
  EXPECT_GT(ok_count, 0);
}

TEST(Verify, ContextMismatch) {
  const auto a = affine_canon(space_of(3, 2), Matrix(0, 2), Vec{0, 0});
  const auto b = affine_canon(space_of(3, 3), Matrix(0, 3), Vec{1, 0, 0});
  AffineFamily fam{Mode::Skew, {{a, a}, {b, b}}};
  try {
    (void)verify_cross_intersecting(fam);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ContextMismatch);
  }
}

TEST(Bollobas, SmallSums) {
  SetFamily one{Mode::Symmetric, {{FiniteSet({1}), FiniteSet({2})}}};
  EXPECT_EQ(bollobas_sum(one), Rational(1, 2));
  SetFamily two{Mode::Symmetric, {{FiniteSet({1}), FiniteSet({2})}, {FiniteSet({2}), FiniteSet({1})}}};
  EXPECT_EQ(bollobas_sum(two), Rational(1));
}

TEST(Bollobas, TightExampleSumsToOne) {
  for (auto [r, s] : {std::pair{2UL, 2UL}, {1UL, 3UL}, {3UL, 2UL}}) {
    const auto fam = tight_family(r, s);
    EXPECT_EQ(BigInt(fam.size()), uniform_bound(r, s));
    EXPECT_EQ(bollobas_sum(fam), Rational(1));
  }
}

TEST(Bollobas, RejectsNonSymmetricFamilies) {
  SetFamily bad{Mode::Symmetric, {{FiniteSet({1}), FiniteSet({1})}}};
  try {
    (void)bollobas_sum(bad);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotVerified);
  }
}

TEST(UniformBound, Values) {
  EXPECT_EQ(uniform_bound(1, 1), 2);
  EXPECT_EQ(uniform_bound(2, 2), 6);
  EXPECT_EQ(uniform_bound(7, 0), 1);
  EXPECT_EQ(uniform_bound(0, 7), 1);
  EXPECT_EQ(uniform_bound(50, 50), BigInt("100891344545564193334812497256"));
}

TEST(LinearPairs, Examples) {
  const auto s = space_of(3, 2);
  const auto e1 = LinearSubspace::span(s, Matrix::from_rows(2, {{1, 0}}));
  const auto e2 = LinearSubspace::span(s, Matrix::from_rows(2, {{0, 1}}));
  const auto one = LinearPairFamily::from({Mode::Skew, {{e1, e2}}});
  EXPECT_TRUE(verify_linear_pairs(one).empty());
  ASSERT_TRUE(one.uniform);
  EXPECT_EQ(*one.uniform, std::make_pair(std::size_t{1}, std::size_t{1}));

  const auto bad = LinearPairFamily::from({Mode::Skew, {{e1, e1}}});
  const auto vs = verify_linear_pairs(bad);
  ASSERT_EQ(vs.size(), 1U);
  EXPECT_EQ(vs[0].kind, ViolationKind::DiagonalNonempty);
  ASSERT_TRUE(vs[0].witness);
}

TEST(LinearPairs, CoordinateFamilyMeetsTheUniformBound) {
  for (auto [r, s] : {std::pair{1UL, 1UL}, {2UL, 2UL}, {1UL, 3UL}, {2UL, 3UL}}) {
    const std::size_t n = r + s;
    const auto sp = space_of(2, n);
    // U_S = span{e_k : k ∈ S}, V_S = span{e_k : k ∉ S}. Ordering the r-sets
    // by decreasing colex rank makes U_i ∩ V_j ≠ {0} for i < j.
    std::vector<std::uint32_t> masks;
    for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) == r) masks.push_back(mask);
    }
    std::reverse(masks.begin(), masks.end());
    LinearFamily fam;
    for (auto mask : masks) {
      Matrix u(0, n), v(0, n);
      for (std::size_t k = 0; k < n; ++k) {
        Vec e(n, 0);
        e[k] = 1;
        ((mask >> k) & 1 ? u : v).append_row(e);
      }
      fam.pairs.emplace_back(LinearSubspace::span(sp, u), LinearSubspace::span(sp, v));
    }
    const auto lp = LinearPairFamily::from(fam);
    EXPECT_TRUE(verify_linear_pairs(lp).empty()) << r << "," << s;
    EXPECT_EQ(BigInt(fam.size()), uniform_bound(r, s));
    // The generic verifier agrees with the dimension-based one.
    EXPECT_TRUE(verify_cross_intersecting(fam).empty());
  }
}
