#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>

#include "apvnet/error.hpp"

namespace apvnet {

// counts[actual][predicted] over classes {0, 1}.
struct ConfusionMatrix {
  std::array<std::array<std::uint64_t, 2>, 2> counts{};

  std::uint64_t total() const { return counts[0][0] + counts[0][1] + counts[1][0] + counts[1][1]; }
  std::uint64_t correct() const { return counts[0][0] + counts[1][1]; }
  std::uint64_t actual(int c) const { return counts[c][0] + counts[c][1]; }
  std::uint64_t predicted(int c) const { return counts[0][c] + counts[1][c]; }

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool degenerate = false;  // a 0/0 ratio was reported as 0
};

struct MetricsReport {
  double accuracy = 0.0;
  std::array<ClassMetrics, 2> per_class{};
  std::array<std::uint64_t, 2> support{};

  bool degenerate() const { return per_class[0].degenerate || per_class[1].degenerate; }
};

inline ConfusionMatrix confusion(std::span<const int> predictions, std::span<const int> labels) {
  if (predictions.size() != labels.size()) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(predictions.size()) + " predictions vs " +
                                               std::to_string(labels.size()) + " labels");
  }
  if (predictions.empty()) throw Error(ErrorCode::EmptyInput, "nothing to evaluate");
  ConfusionMatrix m;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int a = labels[i];
    const int p = predictions[i];
    if ((a != 0 && a != 1) || (p != 0 && p != 1)) throw Error(ErrorCode::BadLabel, "class outside {0, 1}");
    ++m.counts[a][p];
  }
  return m;
}

inline MetricsReport report(const ConfusionMatrix& m) {
  if (m.total() == 0) throw Error(ErrorCode::EmptyMatrix, "confusion matrix is empty");
  MetricsReport r;
  r.accuracy = static_cast<double>(m.correct()) / static_cast<double>(m.total());
  for (int c = 0; c < 2; ++c) {
    ClassMetrics& cm = r.per_class[c];
    const auto hit = static_cast<double>(m.counts[c][c]);
    const std::uint64_t predicted = m.predicted(c);
    const std::uint64_t actual = m.actual(c);
    if (predicted == 0) {
      cm.degenerate = true;
    } else {
      cm.precision = hit / static_cast<double>(predicted);
    }
    if (actual == 0) {
      cm.degenerate = true;
    } else {
      cm.recall = hit / static_cast<double>(actual);
    }
    const double pr = cm.precision + cm.recall;
    cm.f1 = pr > 0.0 ? 2.0 * cm.precision * cm.recall / pr : 0.0;
    r.support[c] = actual;
  }
  return r;
}

}  // namespace apvnet
