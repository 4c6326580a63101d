#include <gtest/gtest.h>

#include "vancycle/pushforward.hpp"

using namespace vancycle;

namespace {

const RealPoly kG = parse_poly("(x^2-1)^2");
const RealPoly kG1 = parse_poly("x^2");
const RealPoly kH = parse_poly("y^3-3*y");

}  // namespace

TEST(Pushforward, SymmetricQuartic) {
  auto pm = pushforward_matrix(kG, kG1, kH);
  EXPECT_EQ(pm.outer, parse_poly("z^2-2*z+1"));
  EXPECT_EQ(pm.source_rows, 2u);
  EXPECT_EQ(pm.source_cols, 3u);
  EXPECT_EQ(pm.target_cols, 1u);
  ASSERT_EQ(pm.column_kinds.size(), 3u);
  EXPECT_FALSE(pm.column_kinds[0].collapsed);
  EXPECT_EQ(pm.column_kinds[0].target_col, 1u);
  EXPECT_EQ(pm.column_kinds[0].sign, -1);
  EXPECT_TRUE(pm.column_kinds[1].collapsed);
  EXPECT_EQ(pm.column_kinds[2].sign, 1);
  // per row i: v_{i,1} -> -w_{i,1}, v_{i,2} -> 0, v_{i,3} -> +w_{i,1}
  IndexMap src(2, 3), dst(2, 1);
  for (std::size_t i = 1; i <= 2; ++i) {
    std::size_t r = dst.linear({i, 1});
    EXPECT_EQ(pm.at(r, src.linear({i, 1})), -1);
    EXPECT_EQ(pm.at(r, src.linear({i, 2})), 0);
    EXPECT_EQ(pm.at(r, src.linear({i, 3})), 1);
  }
}

TEST(Pushforward, NotAComposition) {
  EXPECT_THROW(pushforward_matrix(kG, parse_poly("x"), kH), NotAComposition);
  EXPECT_THROW(pushforward_matrix(parse_poly("x^4-2*x^2+x"), kG1, kH), NotAComposition);
}

TEST(Pushforward, DegenerateOverlap) {
  // x = 0 is critical for g1 = x^2 and g1(0) = 0 is critical for g2 = z^3 - 3z^2/2.
  EXPECT_THROW(pushforward_matrix(parse_poly("x^6 - 3*x^4/2"), kG1, kH), DegenerateOverlap);
}

TEST(Pushforward, MorseQuarticOverSquare) {
  // (x^2 - 1)^2 - 1/4: one collapsed column and two mapped ones with opposite signs.
  auto pm = pushforward_matrix(parse_poly("(x^2-1)^2 - 1/4"), kG1, parse_poly("y^2"));
  int collapsed = 0, sum = 0;
  for (const auto& k : pm.column_kinds) {
    collapsed += k.collapsed;
    sum += k.sign;
  }
  EXPECT_EQ(collapsed, 1);
  EXPECT_EQ(sum, 0);
}

TEST(Kernel, SymmetricQuartic) {
  auto k = kernel_basis(pushforward_matrix(kG, kG1, kH));
  EXPECT_EQ(k.kernel.rank(), 4u);
  EXPECT_TRUE(k.surjective);
  IndexMap src(2, 3);
  for (std::size_t i = 1; i <= 2; ++i) {
    EXPECT_TRUE(k.kernel.contains(CycleVector::unit(6, src.linear({i, 2}))));
    CycleVector v(6);
    v[src.linear({i, 1})] = 1;
    v[src.linear({i, 3})] = 1;
    EXPECT_TRUE(k.kernel.contains(v));
  }
}

TEST(Kernel, InjectiveAndZeroMatrices) {
  PushforwardMatrix id;
  id.source_rows = id.target_rows = 1;
  id.source_cols = id.target_cols = 2;
  id.entries = {1, 0, 0, 1};
  EXPECT_EQ(kernel_basis(id).kernel.rank(), 0u);
  id.entries = {0, 0, 0, 0};
  EXPECT_EQ(kernel_basis(id).kernel.rank(), 2u);
  EXPECT_FALSE(kernel_basis(id).surjective);
}

TEST(KernelLemma, SymmetricColumn) {
  for (std::size_t row : {1u, 2u}) {
    auto c = verify_kernel_lemma(kG, kG1, kH, {row, 2});
    EXPECT_TRUE(c.holds);
    EXPECT_EQ(c.kernel_rank, 4u);
    EXPECT_EQ(c.orbit_rank, 4u);
    EXPECT_TRUE(c.cycle_maps_to_zero);
  }
}

TEST(KernelLemma, NonSymmetricCycleRejected) {
  EXPECT_THROW(verify_kernel_lemma(kG, kG1, kH, {1, 1}), PreconditionError);
  EXPECT_THROW(verify_kernel_lemma(kG, kG1, kH, {3, 2}), IndexOutOfRange);
}

TEST(KernelLemma, CompositionFamilies) {
  struct Case {
    const char *g2, *g1, *h;
  };
  for (auto c : {Case{"z^3-3*z", "x^2-2", "y^3-y"}, Case{"z^2-z", "x^3-3*x", "y^2"},
                 Case{"(z-2)^3-3*(z-2)", "x^2", "y^5-5*y^3+4*y"}, Case{"z^2-z", "x^2-x", "y^3-3*y"}}) {
    RealPoly g1 = parse_poly(c.g1);
    RealPoly g = compose(parse_poly(c.g2), g1);
    auto pm = pushforward_matrix(g, g1, parse_poly(c.h));
    const std::size_t a = static_cast<std::size_t>(g1.degree());
    auto ker = kernel_basis(pm);
    EXPECT_TRUE(ker.surjective);
    EXPECT_EQ(ker.kernel.rank(), pm.source_rows * (pm.source_cols - pm.target_cols));
    std::size_t collapsed = 0;
    std::vector<std::size_t> hits(pm.target_cols + 1, 0);
    for (std::size_t j = 0; j < pm.column_kinds.size(); ++j) {
      if (pm.column_kinds[j].collapsed) {
        ++collapsed;
        EXPECT_EQ((j + 1) % (pm.target_cols + 1), 0u);  // positions d*m/a
        EXPECT_TRUE(verify_kernel_lemma(g, g1, parse_poly(c.h), {1, j + 1}).holds) << c.g2 << " o " << c.g1;
      } else {
        ++hits[pm.column_kinds[j].target_col];
      }
    }
    EXPECT_EQ(collapsed, a - 1);
    for (std::size_t t = 1; t <= pm.target_cols; ++t) EXPECT_EQ(hits[t], a);
  }
}
