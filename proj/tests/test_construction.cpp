#include <gtest/gtest.h>

#include "affbol/construction.hpp"
#include "affbol/errors.hpp"
#include "oracles.hpp"

using namespace affbol;

namespace {

Space space_of(std::uint32_t q, std::size_t n) { return Space::make(Field::make(q), n); }

std::uint64_t expected_m(std::uint32_t q, std::size_t n) {
  std::uint64_t p = 1;
  for (std::size_t i = 0; i < n; ++i) p *= q;
  return (p - 1) / (q - 1);
}

}  // namespace

TEST(ChooseBeta, Examples) {
  const auto s = space_of(3, 2);
  const auto x_axis = LinearSubspace::span(s, Matrix::from_rows(2, {{1, 0}}));
  const auto y_axis = LinearSubspace::span(s, Matrix::from_rows(2, {{0, 1}}));
  EXPECT_EQ(choose_beta(y_axis), (Vec{1, 0}));
  EXPECT_EQ(choose_beta(x_axis), (Vec{0, 1}));
}

TEST(ChooseBeta, RejectsNonHyperplanes) {
  const auto s = space_of(3, 3);
  const auto line = LinearSubspace::span(s, Matrix::from_rows(3, {{1, 0, 0}}));
  EXPECT_THROW((void)choose_beta(line), Error);
}

TEST(Construction, LineOverF3) {
  const auto c = build_construction(space_of(3, 1));
  ASSERT_EQ(c.family.size(), 1U);
  EXPECT_EQ(oracle::points_of(c.family.pairs[0].first), (oracle::PointSet{0}));
  EXPECT_EQ(oracle::points_of(c.family.pairs[0].second), (oracle::PointSet{1}));
}

TEST(Construction, PlaneOverF3HasFourPairs) {
  const auto s = space_of(3, 2);
  const auto c = build_construction(s);
  ASSERT_EQ(c.family.size(), 4U);
  EXPECT_EQ(c.family.mode, Mode::Skew);
  EXPECT_TRUE(verify_cross_intersecting(c.family).empty());
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(c.family.pairs[i].first.size(), 3U);
    EXPECT_EQ(c.family.pairs[i].second.size(), 3U);
    EXPECT_FALSE(c.hyperplanes[i].contains(c.shifts[i]));
  }
}

TEST(Construction, SpaceF2Cubed) {
  const auto c = build_construction(space_of(2, 3));
  EXPECT_EQ(c.family.size(), 7U);
  EXPECT_TRUE(verify_cross_intersecting(c.family).empty());
}

TEST(Construction, GridSizesAndVerification) {
  for (std::uint32_t q : {2U, 3U, 4U, 5U, 7U, 8U, 9U}) {
    std::uint64_t qn = 1;
    for (std::size_t n = 1; n <= 3; ++n) {
      qn *= q;
      if (qn > 1000) break;
      const auto c = build_construction(space_of(q, n));
      EXPECT_EQ(c.family.size(), expected_m(q, n)) << q << "," << n;
      EXPECT_TRUE(verify_cross_intersecting(c.family).empty()) << q << "," << n;
    }
  }
}

TEST(Construction, AgreesWithPointSets) {
  // Distinct linear hyperplanes are never parallel, so every off-diagonal
  // pair meets, on both sides of the diagonal.
  for (auto [q, n] : {std::pair{3U, 2UL}, {2U, 3UL}, {4U, 2UL}, {5U, 2UL}}) {
    const auto c = build_construction(space_of(q, n));
    const std::size_t m = c.family.size();
    std::vector<oracle::PointSet> a(m), b(m);
    for (std::size_t i = 0; i < m; ++i) {
      a[i] = oracle::points_of(c.family.pairs[i].first);
      b[i] = oracle::points_of(c.family.pairs[i].second);
    }
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        EXPECT_EQ(oracle::intersection(a[i], b[j]).empty(), i == j) << i << "," << j;
      }
    }
    auto sym = c.family;
    sym.mode = Mode::Symmetric;
    EXPECT_TRUE(verify_cross_intersecting(sym).empty());
  }
}

TEST(Construction, Deterministic) {
  const auto s = space_of(4, 2);
  const auto c1 = build_construction(s);
  const auto c2 = build_construction(s);
  EXPECT_EQ(c1.family, c2.family);
  EXPECT_EQ(c1.shifts, c2.shifts);
}
