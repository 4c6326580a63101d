#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "vancycle/report.hpp"
#include "vancycle/sweep.hpp"

using namespace vancycle;

namespace {

std::string dump(const SweepReport& r) { return sweep_report_json(r).dump(); }

std::string temp_path(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("vancycle_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove(p);
  return p.string();
}

}  // namespace

TEST(Enumerate, SmallBounds) {
  SweepConfig c;
  c.max_product = 4;
  EXPECT_EQ(enumerate_pairs(c), (std::vector<std::pair<std::size_t, std::size_t>>{{2, 2}}));
  c.max_product = 6;
  EXPECT_EQ(enumerate_pairs(c), (std::vector<std::pair<std::size_t, std::size_t>>{{2, 2}, {2, 3}, {3, 2}}));
  c.max_product = 20;
  EXPECT_EQ(enumerate_pairs(c).size(), 23u);
}

TEST(Enumerate, CountMatchesBruteForce) {
  for (std::size_t P : {30u, 60u, 200u})
    for (std::size_t gmax : {1u, 2u}) {
      SweepConfig c;
      c.max_product = P;
      c.gcd_max = gmax;
      std::size_t n = 0;
      for (std::size_t d = 2; d <= P; ++d)
        for (std::size_t e = 2; e <= P; ++e) n += d * e <= P && std::gcd(d, e) <= gmax;
      auto pairs = enumerate_pairs(c);
      EXPECT_EQ(pairs.size(), n);
      EXPECT_TRUE(std::is_sorted(pairs.begin(), pairs.end()));
    }
}

TEST(Config, Validation) {
  SweepConfig c;
  c.max_product = 3;
  EXPECT_THROW(c.validate(), PreconditionError);
  c.max_product = 10;
  c.workers = 0;
  EXPECT_THROW(c.validate(), PreconditionError);
  c.workers = 1;
  c.gcd_max = 3;
  EXPECT_THROW(c.validate(), GcdOutOfRange);
  c.experimental_gcd = true;
  EXPECT_NO_THROW(c.validate());
}

TEST(Sweep, ExactToThirtyPasses) {
  SweepConfig c;
  c.max_product = 30;
  c.backend = Backend::Exact;
  auto r = sweep_run(c);
  EXPECT_EQ(r.total(), enumerate_pairs(c).size());
  EXPECT_EQ(r.failed(), 0u);
  EXPECT_FALSE(r.interrupted);
}

TEST(Sweep, BackendsAgreeToSixty) {
  SweepConfig c;
  c.max_product = 60;
  c.backend = Backend::Both;
  c.workers = 4;
  auto r = sweep_run(c);
  EXPECT_EQ(r.failed(), 0u);
  for (const auto& p : r.pairs) EXPECT_EQ(p.backend, Backend::Both);
}

TEST(Sweep, WorkerCountDoesNotChangeReport) {
  SweepConfig c;
  c.max_product = 40;
  c.backend = Backend::Exact;
  c.workers = 1;
  auto a = sweep_run(c);
  c.workers = 8;
  auto b = sweep_run(c);
  EXPECT_EQ(dump(a), dump(b));
}

TEST(Sweep, CheckpointRerunIsIdempotent) {
  SweepConfig c;
  c.max_product = 30;
  c.backend = Backend::Exact;
  c.checkpoint_path = temp_path("idem");
  auto first = sweep_run(c);
  EXPECT_EQ(first.resumed, 0u);
  auto second = sweep_run(c);
  EXPECT_EQ(second.resumed, second.total());
  EXPECT_EQ(dump(first), dump(second));
  std::filesystem::remove(*c.checkpoint_path);
}

TEST(Sweep, KillAndResumeMatchesUninterrupted) {
  SweepConfig c;
  c.max_product = 40;
  c.backend = Backend::Exact;
  auto reference = sweep_run(c);

  c.checkpoint_path = temp_path("resume");
  c.stop_after = 12;
  auto partial = sweep_run(c);
  EXPECT_TRUE(partial.interrupted);
  EXPECT_EQ(partial.total(), 12u);
  // Simulate a write cut short by the kill.
  { std::ofstream(*c.checkpoint_path, std::ios::app) << "{\"d\":7,\"e\":3,\"sta"; }

  c.stop_after.reset();
  c.workers = 3;
  auto resumed = sweep_run(c);
  EXPECT_EQ(resumed.resumed, 12u);
  EXPECT_EQ(dump(resumed), dump(reference));
  // The damaged line was isolated; every completed pair reads back.
  EXPECT_EQ(read_checkpoint(*c.checkpoint_path).size(), reference.total());
  std::filesystem::remove(*c.checkpoint_path);
}

TEST(Sweep, CheckpointFromOtherBackendIsIgnored) {
  SweepConfig c;
  c.max_product = 12;
  c.backend = Backend::Eigen;
  c.checkpoint_path = temp_path("backend");
  sweep_run(c);
  c.backend = Backend::Exact;
  auto r = sweep_run(c);
  EXPECT_EQ(r.resumed, 0u);
  for (const auto& p : r.pairs) EXPECT_EQ(p.backend, Backend::Exact);
  std::filesystem::remove(*c.checkpoint_path);
}

TEST(Sweep, ExperimentalGcdRuns) {
  SweepConfig c;
  c.max_product = 16;
  c.gcd_max = 4;
  c.experimental_gcd = true;
  c.backend = Backend::Exact;
  auto r = sweep_run(c);
  bool saw_gcd_three_or_more = false;
  for (const auto& p : r.pairs) saw_gcd_three_or_more |= std::gcd(p.d, p.e) > 2;
  EXPECT_TRUE(saw_gcd_three_or_more);
}

TEST(CrossValidate, Examples) {
  auto a = cross_validate(3, 2);
  ASSERT_EQ(a.size(), 2u);
  for (const auto& r : a) {
    EXPECT_EQ(r.exact_rank, 2u);
    EXPECT_EQ(r.eigen_support, 2u);
  }
  auto b = cross_validate(6, 4);
  ASSERT_EQ(b.size(), 15u);
  for (const auto& r : b) EXPECT_TRUE(r.agree());
  auto c = cross_validate(2, 2);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].exact_rank, 1u);
  EXPECT_EQ(c[0].eigen_support, 1u);
  EXPECT_THROW(cross_validate(4, 4), GcdOutOfRange);
}

TEST(Eigenvalues, RealPartsVanishOnModelMatrices) {
  // General (non-Hermitian) solver on the real matrix.
  for (std::size_t d = 2; d <= 12; ++d)
    for (std::size_t e = 2; d * e <= 60; ++e) {
      IntMatrix psi = model_matrix(d, e).entries;
      Eigen::MatrixXd m(psi.size(), psi.size());
      for (std::size_t r = 0; r < psi.size(); ++r)
        for (std::size_t c = 0; c < psi.size(); ++c) m(r, c) = static_cast<double>(psi(r, c));
      Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
      ASSERT_EQ(es.info(), Eigen::Success);
      EXPECT_LT(es.eigenvalues().real().cwiseAbs().maxCoeff(), 1e-8) << d << "," << e;
    }
}
