#include <vector>

#include <gtest/gtest.h>

#include "apvnet/metrics.hpp"
#include "apvnet/rng.hpp"

namespace apvnet {
namespace {

TEST(Confusion, HandCountedExample) {
  const std::vector<int> preds{0, 1, 1, 0};
  const std::vector<int> labels{0, 1, 0, 0};
  const ConfusionMatrix m = confusion(preds, labels);
  EXPECT_EQ(m.counts[0][0], 2u);
  EXPECT_EQ(m.counts[0][1], 1u);
  EXPECT_EQ(m.counts[1][1], 1u);
  EXPECT_EQ(m.counts[1][0], 0u);
  EXPECT_EQ(m.total(), 4u);
}

TEST(Confusion, PerfectPredictionsAreDiagonal) {
  const std::vector<int> v{1, 0, 0, 1, 1};
  const ConfusionMatrix m = confusion(v, v);
  EXPECT_EQ(m.counts[0][1], 0u);
  EXPECT_EQ(m.counts[1][0], 0u);
}

TEST(Confusion, Errors) {
  const std::vector<int> three{0, 1, 1};
  const std::vector<int> four{0, 1, 1, 0};
  const std::vector<int> none;
  try {
    confusion(three, four);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::LengthMismatch);
  }
  try {
    confusion(none, none);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyInput);
  }
  const std::vector<int> bad{2};
  const std::vector<int> ok{1};
  EXPECT_THROW(confusion(bad, ok), Error);
}

TEST(Report, HandArithmetic) {
  const ConfusionMatrix m = confusion(std::vector<int>{0, 1, 1, 0}, std::vector<int>{0, 1, 0, 0});
  const MetricsReport r = report(m);
  EXPECT_DOUBLE_EQ(r.accuracy, 0.75);
  EXPECT_DOUBLE_EQ(r.per_class[1].precision, 0.5);
  EXPECT_DOUBLE_EQ(r.per_class[1].recall, 1.0);
  EXPECT_DOUBLE_EQ(r.per_class[1].f1, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(r.per_class[0].precision, 1.0);
  EXPECT_DOUBLE_EQ(r.per_class[0].recall, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(r.per_class[0].f1, 0.8);
  EXPECT_EQ(r.support[0], 3u);
  EXPECT_EQ(r.support[1], 1u);
  EXPECT_FALSE(r.degenerate());
}

TEST(Report, Perfect) {
  const std::vector<int> v{1, 0, 1};
  const MetricsReport r = report(confusion(v, v));
  EXPECT_EQ(r.accuracy, 1.0);
  for (const auto& c : r.per_class) {
    EXPECT_EQ(c.precision, 1.0);
    EXPECT_EQ(c.recall, 1.0);
    EXPECT_EQ(c.f1, 1.0);
  }
}

TEST(Report, DegenerateClassReportsZero) {
  const std::vector<int> zeros{0, 0, 0};
  const MetricsReport r = report(confusion(zeros, zeros));
  EXPECT_EQ(r.per_class[1].precision, 0.0);
  EXPECT_EQ(r.per_class[1].recall, 0.0);
  EXPECT_EQ(r.per_class[1].f1, 0.0);
  EXPECT_TRUE(r.per_class[1].degenerate);
  EXPECT_FALSE(r.per_class[0].degenerate);
  EXPECT_TRUE(r.degenerate());
}

TEST(Report, EmptyMatrix) {
  try {
    report(ConfusionMatrix{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyMatrix);
  }
}

TEST(Report, RandomizedInvariants) {
  SplitMix64 rng(404);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng.uniform_below(50);
    std::vector<int> preds(n), labels(n), preds_swapped(n), labels_swapped(n);
    for (std::size_t i = 0; i < n; ++i) {
      preds[i] = static_cast<int>(rng.uniform_below(2));
      labels[i] = static_cast<int>(rng.uniform_below(2));
      preds_swapped[i] = 1 - preds[i];
      labels_swapped[i] = 1 - labels[i];
    }
    const ConfusionMatrix m = confusion(preds, labels);
    const MetricsReport r = report(m);

    const double weighted_recall = (static_cast<double>(r.support[0]) * r.per_class[0].recall +
                                    static_cast<double>(r.support[1]) * r.per_class[1].recall) /
                                   static_cast<double>(n);
    EXPECT_NEAR(r.accuracy, weighted_recall, 1e-12);

    const ConfusionMatrix ms = confusion(preds_swapped, labels_swapped);
    EXPECT_EQ(ms.counts[0][0], m.counts[1][1]);
    EXPECT_EQ(ms.counts[0][1], m.counts[1][0]);
    const MetricsReport rs = report(ms);
    EXPECT_EQ(rs.accuracy, r.accuracy);
    EXPECT_EQ(rs.per_class[0].f1, r.per_class[1].f1);
    EXPECT_EQ(rs.per_class[1].precision, r.per_class[0].precision);

    for (const auto& c : r.per_class) {
      for (double v : {c.precision, c.recall, c.f1}) {
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
      }
    }
  }
}

}  // namespace
}  // namespace apvnet
