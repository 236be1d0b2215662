#include <vector>

#include <gtest/gtest.h>

#include "bqs/synth.hpp"
#include "bqs/verify.hpp"
#include "test_support.hpp"

namespace bqs {
namespace {

CompressedTrajectory manual(Algorithm algo, std::vector<TrackPoint> kept) {
  CompressedTrajectory ct;
  ct.algorithm = algo;
  ct.segment_bounds.assign(kept.size() - 1, 0.0);
  ct.kept = std::move(kept);
  return ct;
}

TEST(Verify, IdentityHasNoError) {
  const auto raw = testing::random_walk(500, 3);
  const auto ct = manual(Algorithm::dp, raw);
  const VerifyReport r = verify_error_bound(raw, ct, 1e-12);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.max_deviation, 0.0);
}

TEST(Verify, ReportsHandBuiltViolation) {
  const std::vector<TrackPoint> raw{{0, 0, 0}, {1, 1, 0.5}, {2, 2, 3}, {3, 3, -1}, {4, 4, 0}};
  const auto ct = manual(Algorithm::fbqs, {raw.front(), raw.back()});
  const VerifyReport r = verify_error_bound(raw, ct, 2.0);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].index, 2u);
  EXPECT_EQ(r.violations[0].deviation, 3.0);
  EXPECT_EQ(r.max_deviation, 3.0);
  EXPECT_TRUE(verify_error_bound(raw, ct, 3.0).ok());
}

TEST(Verify, DeadReckoningModel) {
  // Velocity at the kept start is zero, so the error is the distance from it.
  const std::vector<TrackPoint> raw{{0, 0, 0}, {1, 3, 4}, {2, 0, 0}};
  const auto ct = manual(Algorithm::dr, {raw.front(), raw.back()});
  const VerifyReport r = verify_error_bound(raw, ct, 4.0);
  EXPECT_EQ(r.max_deviation, 5.0);
  EXPECT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(error_model_for(Algorithm::dr), ErrorModel::dead_reckoning);
  EXPECT_EQ(error_model_for(Algorithm::bqs), ErrorModel::line_deviation);
}

TEST(Verify, RejectsMalformedOutput) {
  const auto raw = testing::collinear(10);
  EXPECT_THROW(verify_error_bound(raw, manual(Algorithm::dp, {raw[1], raw[9]}), 1.0),
               std::invalid_argument);
  EXPECT_THROW(verify_error_bound(raw, manual(Algorithm::dp, {raw[0], raw[8]}), 1.0),
               std::invalid_argument);
  EXPECT_THROW(
      verify_error_bound(raw, manual(Algorithm::dp, {raw[0], {4.5, 4.5, 0}, raw[9]}), 1.0),
      std::invalid_argument);
  EXPECT_THROW(verify_error_bound(raw, manual(Algorithm::dp, {raw[0], raw[5], raw[3], raw[9]}),
                                  1.0),
               std::invalid_argument);
  EXPECT_THROW(verify_error_bound_serial(raw, manual(Algorithm::dp, {raw[0], raw[9]}), 1.0)
                   .violations.at(0),
               std::out_of_range);
}

TEST(Verify, ParallelMatchesSerial) {
  SynthParams p;
  p.n_points = 20000;
  p.seed = 8;
  const auto raw = generate(p);
  for (Algorithm a : kAllAlgorithms) {
    const auto ct = compress(raw, {a, 5.0, 32});
    for (double eps : {0.5, 5.0}) {
      const VerifyReport par = verify_error_bound(raw, ct, eps);
      const VerifyReport ser = verify_error_bound_serial(raw, ct, eps);
      ASSERT_EQ(par.max_deviation, ser.max_deviation);
      ASSERT_EQ(par.violations.size(), ser.violations.size());
      for (std::size_t i = 0; i < par.violations.size(); ++i) {
        ASSERT_EQ(par.violations[i].index, ser.violations[i].index);
        ASSERT_EQ(par.violations[i].deviation, ser.violations[i].deviation);
      }
    }
  }
}

}  // namespace
}  // namespace bqs
