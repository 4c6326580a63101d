#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "vancycle/classify.hpp"

using namespace vancycle;

TEST(Classify, SymmetricQuarticColumnTwo) {
  auto r = classify_cycle(parse_poly("(x^2-1)^2"), parse_poly("y^3-3*y"), {1, 2});
  EXPECT_EQ(r.verdict, Verdict::Symmetric);
  EXPECT_EQ(r.axis, Axis::Horizontal);
  EXPECT_EQ(r.p, 2u);
  ASSERT_TRUE(r.decomposition);
  EXPECT_EQ(r.decomposition->inner, parse_poly("x^2"));
  EXPECT_EQ(r.decomposition->outer, parse_poly("z^2-2*z+1"));
  EXPECT_EQ(r.orbit_rank, 4u);
  EXPECT_EQ(r.ambient_rank, 6u);
  ASSERT_TRUE(r.pushforward);
  EXPECT_TRUE(r.pushforward->holds);
}

TEST(Classify, SymmetricQuarticColumnOne) {
  auto r = classify_cycle(parse_poly("(x^2-1)^2"), parse_poly("y^3-3*y"), {1, 1});
  EXPECT_EQ(r.verdict, Verdict::FullHomology);
  EXPECT_EQ(r.orbit_rank, 6u);
}

TEST(Classify, ExampleIsFullEverywhere) {
  RealPoly g = parse_poly(fixtures::kExampleG), h = parse_poly(fixtures::kExampleH);
  for (std::size_t i = 1; i <= 3; ++i)
    for (std::size_t j = 1; j <= 5; ++j) {
      auto r = classify_cycle(g, h, {i, j});
      EXPECT_EQ(r.verdict, Verdict::FullHomology);
      EXPECT_EQ(r.orbit_rank, 15u);
    }
}

TEST(Classify, VerticalAxisBySwappingRoles) {
  auto r = classify_cycle(parse_poly("x^3-3*x"), parse_poly("(y^2-1)^2"), {2, 1});
  EXPECT_EQ(r.verdict, Verdict::Symmetric);
  EXPECT_EQ(r.axis, Axis::Vertical);
  EXPECT_EQ(r.p, 2u);
  ASSERT_TRUE(r.pushforward);
  EXPECT_TRUE(r.pushforward->holds);
  EXPECT_EQ(classify_cycle(parse_poly("x^3-3*x"), parse_poly("(y^2-1)^2"), {1, 1}).verdict, Verdict::FullHomology);
}

TEST(Classify, TwoWayDecomposable) {
  // T6 = T2 o T3 = T3 o T2: column 3 is explained by p = 3, columns 2 and 4 by p = 2.
  RealPoly g = parse_poly("32*x^6-48*x^4+18*x^2-1"), h = parse_poly("y^5-5*y^3+4*y");
  auto c3 = classify_cycle(g, h, {1, 3});
  EXPECT_EQ(c3.verdict, Verdict::Symmetric);
  EXPECT_EQ(c3.p, 3u);
  EXPECT_EQ(c3.decomposition->inner.degree(), 2);
  auto c2 = classify_cycle(g, h, {2, 2});
  EXPECT_EQ(c2.p, 2u);
  EXPECT_EQ(c2.decomposition->inner.degree(), 3);
  EXPECT_TRUE(c2.pushforward->holds);
  EXPECT_EQ(classify_cycle(g, h, {1, 1}).verdict, Verdict::FullHomology);
}

TEST(Classify, Preconditions) {
  EXPECT_THROW(classify_cycle(parse_poly("x^3-3*x"), parse_poly("y^3-3*y/2+y/9"), {1, 1}), GcdOutOfRange);
  EXPECT_THROW(classify_cycle(parse_poly("(x^2-1)^2"), parse_poly("y^2"), {2, 1}), IndexOutOfRange);
  EXPECT_THROW(classify_cycle(parse_poly("x^3+x"), parse_poly("y^2"), {1, 1}), NonRealCriticalPoint);
}

TEST(Classify, ExperimentalGcdLeavesTheConstruction) {
  // Equal cubics: diagonal neighbours share a value and intersect.
  RealPoly g = parse_poly("4*x^3-3*x"), h = parse_poly("4*y^3-3*y");
  EXPECT_THROW(classify_cycle(g, h, {1, 1}), GcdOutOfRange);
  ClassifyOptions opt;
  opt.allow_any_gcd = true;
  EXPECT_THROW(classify_cycle(g, h, {1, 1}, opt), NonCommutingGroup);
}
