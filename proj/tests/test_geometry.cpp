#include <random>

#include <gtest/gtest.h>

#include "affbol/errors.hpp"
#include "affbol/geometry.hpp"
#include "oracles.hpp"
#include "test_seed.hpp"

using namespace affbol;

namespace {

Space space_of(std::uint32_t q, std::size_t n) { return Space::make(Field::make(q), n); }

Matrix rows(std::size_t cols, std::vector<Vec> r) { return Matrix::from_rows(cols, r); }

}  // namespace

TEST(Space, BudgetIsEnforced) {
  EXPECT_NO_THROW((void)Space::make(Field::make(2), 24));
  try {
    (void)Space::make(Field::make(2), 25);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BudgetExceeded);
  }
  EXPECT_NO_THROW((void)Space::make(Field::make(2), 25, std::uint64_t{1} << 25));
}

TEST(PointIndex, EncodingAndBijection) {
  const auto s = space_of(3, 2);
  EXPECT_EQ(point_index(s, Vec{0, 0}), 0U);
  EXPECT_EQ(point_index(s, Vec{2, 1}), 5U);
  for (std::uint32_t q : {2U, 3U, 4U, 5U}) {
    const auto sp = space_of(q, 3);
    std::vector<bool> hit(sp.point_count(), false);
    for (std::uint64_t i = 0; i < sp.point_count(); ++i) {
      const auto v = point_unindex(sp, i);
      ASSERT_EQ(point_index(sp, v), i);
      hit[i] = true;
    }
    EXPECT_TRUE(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }));
  }
}

TEST(AffineCanon, Examples) {
  const auto s = space_of(3, 2);
  const auto pt = affine_canon(s, Matrix(0, 2), Vec{2, 1});
  EXPECT_EQ(pt.dim(), 0U);
  EXPECT_EQ(pt.base(), (Vec{2, 1}));

  const auto full = affine_canon(s, rows(2, {{1, 2}, {0, 1}}), Vec{2, 1});
  EXPECT_EQ(full.dim(), 2U);
  EXPECT_EQ(full.base(), (Vec{0, 0}));

  EXPECT_THROW((void)affine_canon(s, Matrix(0, 3), Vec{0, 0}), Error);
  EXPECT_THROW((void)affine_canon(s, Matrix(0, 2), Vec{0, 0, 0}), Error);
}

TEST(AffineCanon, EveryRepresentativeGivesTheSameCoset) {
  std::mt19937_64 rng(affbol_test::seed());
  for (auto [q, n] : {std::pair{2U, 4UL}, {3U, 3UL}, {4U, 2UL}, {5U, 2UL}}) {
    const auto s = space_of(q, n);
    for (int trial = 0; trial < 50; ++trial) {
      const auto raw = oracle::random_raw_coset(rng, s);
      const auto c = affine_canon(s, raw.gens, raw.base);
      const auto pts = oracle::coset_points(s, raw.gens, raw.base);
      ASSERT_EQ(oracle::points_of(c), pts);
      EXPECT_EQ(c.size(), pts.size());
      for (auto idx : pts) {
        const auto other = affine_canon(s, raw.gens, point_unindex(s, idx));
        ASSERT_EQ(other, c);
        ASSERT_EQ(other.hash(), c.hash());
        EXPECT_TRUE(c.contains(point_unindex(s, idx)));
      }
      for (std::size_t r = 0; r < c.direction().pivots().size(); ++r) {
        EXPECT_EQ(c.base()[c.direction().pivots()[r]], 0U);
      }
    }
  }
}

TEST(AffineIntersect, Examples) {
  const auto s = space_of(3, 2);
  const auto h0 = affine_canon(s, rows(2, {{0, 1}}), Vec{0, 0});
  const auto h1 = affine_canon(s, rows(2, {{0, 1}}), Vec{1, 0});
  EXPECT_TRUE(affine_intersect(h0, h1).empty());

  const auto x1 = affine_canon(s, rows(2, {{0, 1}}), Vec{0, 0});  // x1 = 0
  const auto x2 = affine_canon(s, rows(2, {{1, 0}}), Vec{0, 0});  // x2 = 0
  const auto r = affine_intersect(x1, x2);
  ASSERT_FALSE(r.empty());
  EXPECT_EQ(r.exponent(), 0U);
  EXPECT_EQ(r.coset->base(), (Vec{0, 0}));

  EXPECT_THROW((void)affine_intersect(h0, affine_canon(space_of(3, 3), Matrix(0, 3), Vec{0, 0, 0})),
               Error);
}

TEST(AffineIntersect, AgreesWithPointSetsAndSizesArePowersOfQ) {
  std::mt19937_64 rng(affbol_test::seed() + 1);
  for (auto [q, n] : {std::pair{2U, 3UL}, {3U, 2UL}, {3U, 3UL}, {4U, 2UL}, {7U, 2UL}, {9U, 2UL}}) {
    const auto s = space_of(q, n);
    for (int trial = 0; trial < 400; ++trial) {
      const auto ra = oracle::random_raw_coset(rng, s);
      const auto rb = oracle::random_raw_coset(rng, s);
      const auto a = affine_canon(s, ra.gens, ra.base);
      const auto b = affine_canon(s, rb.gens, rb.base);
      const auto brute = oracle::intersection(oracle::coset_points(s, ra.gens, ra.base),
                                              oracle::coset_points(s, rb.gens, rb.base));
      const auto res = affine_intersect(a, b);
      ASSERT_EQ(res.empty(), brute.empty());
      if (res.empty()) continue;
      EXPECT_EQ(oracle::points_of(*res.coset), brute);
      std::uint64_t size = 1;
      for (std::size_t t = 0; t < *res.exponent(); ++t) size *= q;
      EXPECT_EQ(brute.size(), size);
      EXPECT_EQ(res.coset->direction(), intersect(a.direction(), b.direction()));
    }
  }
}

TEST(MinkowskiMember, Examples) {
  const auto s = space_of(3, 2);
  const auto f = affine_canon(s, rows(2, {{1, 1}}), Vec{0, 2});
  EXPECT_TRUE(minkowski_member(Vec{0, 0}, f, f));

  // Hyperplane H = {x1 = 0}, beta = (1, 0) outside H: H ∩ (beta + H) = ∅.
  const auto h = affine_from_linear(LinearSubspace::span(s, rows(2, {{0, 1}})));
  EXPECT_FALSE(minkowski_member(Vec{1, 0}, h, h));
}

TEST(MinkowskiMember, EquivalentToTranslatedIntersection) {
  std::mt19937_64 rng(affbol_test::seed() + 2);
  for (auto [q, n] : {std::pair{2U, 3UL}, {3U, 2UL}, {5U, 2UL}}) {
    const auto s = space_of(q, n);
    for (int trial = 0; trial < 500; ++trial) {
      const auto rf = oracle::random_raw_coset(rng, s);
      const auto rg = oracle::random_raw_coset(rng, s);
      const auto alpha = oracle::random_vec(rng, s);
      const auto f = affine_canon(s, rf.gens, rf.base);
      const auto g = affine_canon(s, rg.gens, rg.base);
      const bool member = minkowski_member(alpha, f, g);
      EXPECT_EQ(member, !affine_intersect(f, g.translate(alpha)).empty());
      const auto shifted = oracle::coset_points(s, rg.gens, vec_add(s.field(), rg.base, alpha));
      EXPECT_EQ(member, !oracle::intersection(oracle::points_of(f), shifted).empty());
    }
  }
}

TEST(Enumerate, SmallCounts) {
  const auto s = space_of(3, 2);
  const std::vector<std::size_t> d0{0}, d1{1};
  EXPECT_EQ(enumerate_affine_subspaces(s, d0).size(), 9U);
  EXPECT_EQ(enumerate_affine_subspaces(s, d1).size(), 12U);
  EXPECT_EQ(gaussian_binomial(2, 1, 3), 4U);
}

TEST(Enumerate, MatchesExhaustiveAffineClosureOracle) {
  for (auto [q, n] : {std::pair{2U, 2UL}, {3U, 2UL}, {2U, 3UL}}) {
    const auto s = space_of(q, n);
    std::vector<std::size_t> all;
    for (std::size_t d = 0; d <= n; ++d) all.push_back(d);
    const auto subs = enumerate_affine_subspaces(s, all);
    const auto brute = oracle::affine_subsets_by_size(s);
    std::size_t brute_total = 0;
    for (auto [size, count] : brute) brute_total += count;
    EXPECT_EQ(subs.size(), brute_total);
    std::map<std::size_t, std::size_t> by_size;
    for (const auto& a : subs) ++by_size[a.size()];
    EXPECT_EQ(by_size, brute);
  }
  const auto s22 = space_of(2, 2);
  const std::vector<std::size_t> all{0, 1, 2};
  EXPECT_EQ(enumerate_affine_subspaces(s22, all).size(), 11U);
}

TEST(Enumerate, CountsMatchGaussianBinomialsAndAreDistinctAndOrdered) {
  for (std::uint32_t q : {2U, 3U, 4U, 5U, 7U, 8U, 9U}) {
    for (std::size_t n = 1; n <= 4; ++n) {
      std::uint64_t pts = 1;
      for (std::size_t i = 0; i < n; ++i) pts *= q;
      if (pts > 10000) continue;
      const auto s = space_of(q, n);
      for (std::size_t d = 0; d <= n; ++d) {
        const std::vector<std::size_t> dims{d};
        const auto subs = enumerate_affine_subspaces(s, dims);
        ASSERT_EQ(subs.size(), affine_subspace_count(n, d, q)) << q << " " << n << " " << d;
        EXPECT_EQ(enumerate_linear_subspaces(s, d).size(), gaussian_binomial(n, d, q));
        if (pts > 1000) continue;
        for (std::size_t i = 1; i < subs.size(); ++i) {
          const auto& x = subs[i - 1];
          const auto& y = subs[i];
          const auto key = [&](const AffineSubspace& a) {
            return std::make_pair(a.direction().basis().data(), point_index(s, a.base()));
          };
          ASSERT_LT(key(x), key(y));
        }
      }
    }
  }
}

TEST(Enumerate, BudgetExceeded) {
  const auto s = space_of(3, 4);
  const std::vector<std::size_t> dims{2};
  try {
    (void)enumerate_affine_subspaces(s, dims, 100);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BudgetExceeded);
  }
}

TEST(Hyperplanes, CountsAndNormalization) {
  EXPECT_EQ(enumerate_linear_hyperplanes(space_of(3, 2)).size(), 4U);
  EXPECT_EQ(enumerate_linear_hyperplanes(space_of(2, 3)).size(), 7U);
  const auto line = enumerate_linear_hyperplanes(space_of(5, 1));
  ASSERT_EQ(line.size(), 1U);
  EXPECT_EQ(line[0].dim(), 0U);

  for (std::uint32_t q : {2U, 3U, 4U, 5U}) {
    for (std::size_t n = 1; n <= 3; ++n) {
      const auto s = space_of(q, n);
      const auto normals = normalized_normals(s);
      const auto hs = enumerate_linear_hyperplanes(s);
      ASSERT_EQ(hs.size(), (s.point_count() - 1) / (q - 1));
      EXPECT_TRUE(std::is_sorted(normals.begin(), normals.end()));
      for (std::size_t i = 0; i < hs.size(); ++i) {
        EXPECT_EQ(hs[i].dim(), n - 1);
        const auto lead = std::find_if(normals[i].begin(), normals[i].end(), [](Elem e) { return e != 0; });
        EXPECT_EQ(*lead, 1U);
        for (std::size_t j = 0; j < i; ++j) EXPECT_FALSE(hs[i] == hs[j]);
      }
    }
  }
}

TEST(Projective, Disjointness) {
  const auto pg12 = space_of(2, 2);
  const auto p = ProjectiveSubspace::make(pg12, rows(2, {{1, 0}}));
  const auto q = ProjectiveSubspace::make(pg12, rows(2, {{1, 1}}));
  EXPECT_TRUE(projective_disjoint(p, q));
  const auto line = ProjectiveSubspace::make(pg12, Matrix::identity(2));
  EXPECT_FALSE(projective_disjoint(p, line));
  EXPECT_THROW((void)ProjectiveSubspace::make(pg12, Matrix(0, 2)), Error);
}

TEST(Projective, DisjointnessMatchesVectorEnumeration) {
  std::mt19937_64 rng(affbol_test::seed() + 3);
  const auto s = space_of(3, 3);  // PG(2, 3)
  int checked = 0;
  while (checked < 500) {
    const Matrix a = oracle::random_matrix(rng, s, 1 + rng() % 3);
    const Matrix b = oracle::random_matrix(rng, s, 1 + rng() % 3);
    if (rank(s.field(), a) == 0 || rank(s.field(), b) == 0) continue;
    ++checked;
    const bool brute = oracle::intersection(oracle::nonzero_span(s, a), oracle::nonzero_span(s, b)).empty();
    EXPECT_EQ(projective_disjoint(ProjectiveSubspace::make(s, a), ProjectiveSubspace::make(s, b)), brute);
  }
}

TEST(Projective, EnumerationCounts) {
  const auto s = space_of(2, 3);  // PG(2, 2): 7 points, 7 lines, 1 plane
  const std::vector<std::size_t> dims{0, 1, 2, 3};
  EXPECT_EQ(enumerate_projective_subspaces(s, dims).size(), 15U);
}
