#pragma once

// Labeled news corpus: ingestion from the fake/true CSV pair, deterministic
// splitting, deduplication by feature vector, and featurization into a
// design matrix.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "apvnet/csv.hpp"
#include "apvnet/error.hpp"
#include "apvnet/features.hpp"
#include "apvnet/rng.hpp"

namespace apvnet {

inline constexpr int kFakeLabel = 0;
inline constexpr int kTrueLabel = 1;

struct Record {
  std::uint64_t id = 0;
  std::string title;
  std::string text;
  int label = 0;
};

struct Corpus {
  std::vector<Record> records;
  std::map<int, std::size_t> source_counts;

  std::size_t size() const { return records.size(); }
  bool empty() const { return records.empty(); }
};

struct SplitSpec {
  std::size_t train_size = 30000;
  std::size_t test_size = 9898;
  std::uint64_t seed = 0;
  bool stratified = false;
};

struct DesignMatrix {
  std::vector<FeatureVector> features;
  std::vector<int> labels;
  std::vector<std::uint64_t> ids;
  std::vector<std::uint64_t> skipped_ids;

  std::size_t rows() const { return features.size(); }
};

inline std::string document_text(const Record& r, bool include_title) {
  if (!include_title) return r.text;
  return r.title + "\n" + r.text;
}

namespace detail {

inline std::string lower_trimmed(std::string_view s) {
  std::string out(trim(s));
  if (out.starts_with("\xEF\xBB\xBF")) out.erase(0, 3);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

inline void read_labeled_csv(std::istream& in, int label, const char* source_name,
                             std::vector<Record>& out) {
  csv::Reader reader(in);
  auto header = reader.next();
  if (!header) throw Error(ErrorCode::EmptySource, std::string(source_name) + " source is empty");
  std::ptrdiff_t text_col = -1;
  std::ptrdiff_t title_col = -1;
  for (std::size_t i = 0; i < header->size(); ++i) {
    const std::string name = lower_trimmed((*header)[i]);
    if (name == "text" && text_col < 0) text_col = static_cast<std::ptrdiff_t>(i);
    if (name == "title" && title_col < 0) title_col = static_cast<std::ptrdiff_t>(i);
  }
  if (text_col < 0) {
    throw Error(ErrorCode::MalformedCsv, std::string(source_name) + " source has no 'text' column");
  }
  std::size_t rows = 0;
  while (auto fields = reader.next()) {
    // A bare empty line carries no record.
    if (fields->size() == 1 && (*fields)[0].empty()) continue;
    if (fields->size() <= static_cast<std::size_t>(text_col) ||
        (title_col >= 0 && fields->size() <= static_cast<std::size_t>(title_col))) {
      throw Error(ErrorCode::MalformedCsv, std::string(source_name) + " row ending at line " +
                                               std::to_string(reader.line()) +
                                               " has too few fields");
    }
    Record r;
    r.id = out.size();
    r.label = label;
    r.text = std::move((*fields)[static_cast<std::size_t>(text_col)]);
    if (title_col >= 0) r.title = std::move((*fields)[static_cast<std::size_t>(title_col)]);
    out.push_back(std::move(r));
    ++rows;
  }
  if (rows == 0) throw Error(ErrorCode::EmptySource, std::string(source_name) + " source has no data rows");
}

inline Corpus subset(const Corpus& corpus, std::span<const std::size_t> positions) {
  Corpus out;
  out.records.reserve(positions.size());
  for (std::size_t p : positions) {
    out.records.push_back(corpus.records[p]);
    ++out.source_counts[corpus.records[p].label];
  }
  return out;
}

}  // namespace detail

// Fake rows are labeled 0 and come first, true rows are labeled 1.
inline Corpus load_corpus(std::istream& fake_source, std::istream& true_source) {
  Corpus corpus;
  detail::read_labeled_csv(fake_source, kFakeLabel, "fake", corpus.records);
  corpus.source_counts[kFakeLabel] = corpus.records.size();
  detail::read_labeled_csv(true_source, kTrueLabel, "true", corpus.records);
  corpus.source_counts[kTrueLabel] = corpus.records.size() - corpus.source_counts[kFakeLabel];
  return corpus;
}

// Shuffles corpus positions with the seeded Fisher-Yates, takes the first
// train_size for train and the next test_size for test. The remainder is
// discarded. Records keep their corpus ids.
inline std::pair<Corpus, Corpus> split(const Corpus& corpus, const SplitSpec& spec) {
  if (spec.train_size == 0 || spec.test_size == 0) {
    throw Error(ErrorCode::BadConfig, "train and test sizes must be positive");
  }
  if (spec.train_size + spec.test_size > corpus.size()) {
    throw Error(ErrorCode::SplitTooLarge, std::to_string(spec.train_size) + " + " +
                                              std::to_string(spec.test_size) + " exceeds corpus size " +
                                              std::to_string(corpus.size()));
  }
  SplitMix64 rng(spec.seed);
  std::vector<std::size_t> train_pos;
  std::vector<std::size_t> test_pos;

  if (!spec.stratified) {
    std::vector<std::size_t> order(corpus.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    fisher_yates_shuffle(std::span<std::size_t>(order), rng);
    train_pos.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(spec.train_size));
    test_pos.assign(order.begin() + static_cast<std::ptrdiff_t>(spec.train_size),
                    order.begin() + static_cast<std::ptrdiff_t>(spec.train_size + spec.test_size));
  } else {
    // Per-class shuffles; class quotas by largest remainder.
    std::map<int, std::vector<std::size_t>> by_label;
    for (std::size_t i = 0; i < corpus.size(); ++i) by_label[corpus.records[i].label].push_back(i);
    auto quotas = [&](std::size_t wanted, const std::map<int, std::size_t>& avail) {
      std::size_t pool = 0;
      for (const auto& [label, n] : avail) pool += n;
      std::map<int, std::size_t> q;
      std::vector<std::pair<std::uint64_t, int>> remainders;
      std::size_t given = 0;
      for (const auto& [label, n] : avail) {
        const std::uint64_t scaled = static_cast<std::uint64_t>(wanted) * n;
        q[label] = scaled / pool;
        given += q[label];
        remainders.emplace_back(scaled % pool, label);
      }
      std::stable_sort(remainders.begin(), remainders.end(),
                       [](const auto& a, const auto& b) { return a.first > b.first; });
      for (std::size_t i = 0; given < wanted; i = (i + 1) % remainders.size()) {
        const int label = remainders[i].second;
        if (q[label] < avail.at(label)) {
          ++q[label];
          ++given;
        }
      }
      return q;
    };
    std::map<int, std::size_t> avail;
    for (auto& [label, pos] : by_label) {
      fisher_yates_shuffle(std::span<std::size_t>(pos), rng);
      avail[label] = pos.size();
    }
    const auto train_q = quotas(spec.train_size, avail);
    std::map<int, std::size_t> left;
    for (const auto& [label, n] : avail) left[label] = n - train_q.at(label);
    const auto test_q = quotas(spec.test_size, left);
    for (auto& [label, pos] : by_label) {
      const std::size_t a = train_q.at(label);
      const std::size_t b = test_q.at(label);
      train_pos.insert(train_pos.end(), pos.begin(), pos.begin() + static_cast<std::ptrdiff_t>(a));
      test_pos.insert(test_pos.end(), pos.begin() + static_cast<std::ptrdiff_t>(a),
                      pos.begin() + static_cast<std::ptrdiff_t>(a + b));
    }
    fisher_yates_shuffle(std::span<std::size_t>(train_pos), rng);
    fisher_yates_shuffle(std::span<std::size_t>(test_pos), rng);
  }
  return {detail::subset(corpus, train_pos), detail::subset(corpus, test_pos)};
}

// Keeps the first record of each class of identical feature vectors.
// Records without a defined vector are kept.
inline Corpus dedup_by_vector(const Corpus& corpus, const PreprocessConfig& config) {
  Corpus out;
  std::set<std::array<double, kAlphabetSize>> seen;
  for (const Record& r : corpus.records) {
    bool keep = true;
    try {
      keep = seen.insert(extract(document_text(r, config.include_title), config).values).second;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::EmptyText) throw;
    }
    if (keep) {
      out.records.push_back(r);
      ++out.source_counts[r.label];
    }
  }
  return out;
}

inline DesignMatrix featurize_corpus(const Corpus& corpus, const PreprocessConfig& config) {
  DesignMatrix m;
  m.features.reserve(corpus.size());
  m.labels.reserve(corpus.size());
  m.ids.reserve(corpus.size());
  for (const Record& r : corpus.records) {
    try {
      m.features.push_back(extract(document_text(r, config.include_title), config));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::EmptyText) throw;
      m.skipped_ids.push_back(r.id);
      continue;
    }
    m.labels.push_back(r.label);
    m.ids.push_back(r.id);
  }
  std::sort(m.skipped_ids.begin(), m.skipped_ids.end());
  return m;
}

// Featurized export: header `id,label,f_a,...,f_z`, values at 17
// significant digits.
inline void write_design_matrix(std::ostream& out, const DesignMatrix& m) {
  out << "id,label";
  for (char c = 'a'; c <= 'z'; ++c) out << ",f_" << c;
  out << '\n';
  char buf[40];
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out << m.ids[i] << ',' << m.labels[i];
    for (double v : m.features[i].values) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << ',' << buf;
    }
    out << '\n';
  }
}

// Reads the export format back. The feature kind is inferred from the row
// sum (unit sum means raw, otherwise ssm).
inline DesignMatrix read_design_matrix(std::istream& in) {
  csv::Reader reader(in);
  auto header = reader.next();
  if (!header || header->size() != 2 + kAlphabetSize || (*header)[0] != "id" || (*header)[1] != "label") {
    throw Error(ErrorCode::MalformedCsv, "expected header id,label,f_a,...,f_z");
  }
  DesignMatrix m;
  while (auto fields = reader.next()) {
    if (fields->size() == 1 && (*fields)[0].empty()) continue;
    if (fields->size() != 2 + kAlphabetSize) {
      throw Error(ErrorCode::MalformedCsv, "row ending at line " + std::to_string(reader.line()) +
                                               " has " + std::to_string(fields->size()) + " fields");
    }
    auto parse_u = [&](const std::string& s) {
      char* end = nullptr;
      const auto v = std::strtoull(s.c_str(), &end, 10);
      if (s.empty() || end != s.c_str() + s.size()) throw Error(ErrorCode::MalformedCsv, "bad integer '" + s + "'");
      return v;
    };
    m.ids.push_back(parse_u((*fields)[0]));
    const auto label = parse_u((*fields)[1]);
    if (label > 1) throw Error(ErrorCode::MalformedCsv, "label must be 0 or 1");
    m.labels.push_back(static_cast<int>(label));
    FeatureVector f;
    for (std::size_t k = 0; k < kAlphabetSize; ++k) {
      const std::string& s = (*fields)[2 + k];
      char* end = nullptr;
      f.values[k] = std::strtod(s.c_str(), &end);
      if (s.empty() || end != s.c_str() + s.size()) throw Error(ErrorCode::MalformedCsv, "bad number '" + s + "'");
    }
    f.kind = std::abs(f.sum() - 1.0) < 1e-6 ? FeatureKind::raw : FeatureKind::ssm;
    m.features.push_back(f);
  }
  return m;
}

}  // namespace apvnet
