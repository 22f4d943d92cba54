#pragma once

// Alphabet frequency features: raw letter counts, the alphabet probability
// vector (APV), its N-supplied variant (N-SAPV) and the standard-subtraction
// modification (SSM) against a reference English letter distribution.

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <istream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>

#include "apvnet/error.hpp"

namespace apvnet {

inline constexpr std::size_t kAlphabetSize = 26;

struct AlphabetCounts {
  std::array<std::uint64_t, kAlphabetSize> counts{};
  std::uint64_t total = 0;

  friend bool operator==(const AlphabetCounts&, const AlphabetCounts&) = default;
};

enum class FeatureKind { raw, ssm };

struct FeatureVector {
  std::array<double, kAlphabetSize> values{};
  FeatureKind kind = FeatureKind::raw;

  double operator[](std::size_t k) const { return values[k]; }
  double sum() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

inline std::span<const double> row_span(const FeatureVector& v) { return v.values; }

struct StandardVector {
  std::array<double, kAlphabetSize> values{};
};

struct PreprocessConfig {
  std::uint64_t supplement_n = 0;
  bool ssm_enabled = false;
  StandardVector standard_vector{};
  bool include_title = false;
};

constexpr int letter_index(char c) noexcept {
  if (c >= 'a' && c <= 'z') return c - 'a';
  if (c >= 'A' && c <= 'Z') return c - 'A';
  return -1;
}

// Counts ASCII letters a-z after case folding. Every other byte, including
// the bytes of multi-byte UTF-8 sequences, is ignored.
inline AlphabetCounts count_letters(std::string_view text) noexcept {
  AlphabetCounts out;
  for (char c : text) {
    const int k = letter_index(c);
    if (k >= 0) {
      ++out.counts[static_cast<std::size_t>(k)];
      ++out.total;
    }
  }
  return out;
}

inline FeatureVector to_apv(const AlphabetCounts& counts) {
  if (counts.total == 0) throw Error(ErrorCode::EmptyText, "text contains no letters");
  FeatureVector v;
  const auto total = static_cast<double>(counts.total);
  for (std::size_t k = 0; k < kAlphabetSize; ++k) {
    v.values[k] = static_cast<double>(counts.counts[k]) / total;
  }
  return v;
}

// Letters that never occur receive the pseudo-count n before normalization.
// With n == 0 this is exactly to_apv.
inline FeatureVector to_n_sapv(const AlphabetCounts& counts, std::uint64_t n) {
  std::array<std::uint64_t, kAlphabetSize> supplied{};
  std::uint64_t total = 0;
  for (std::size_t k = 0; k < kAlphabetSize; ++k) {
    supplied[k] = counts.counts[k] > 0 ? counts.counts[k] : n;
    total += supplied[k];
  }
  if (total == 0) throw Error(ErrorCode::EmptyText, "text contains no letters and n = 0");
  FeatureVector v;
  const auto denom = static_cast<double>(total);
  for (std::size_t k = 0; k < kAlphabetSize; ++k) {
    v.values[k] = static_cast<double>(supplied[k]) / denom;
  }
  return v;
}

inline FeatureVector apply_ssm(const FeatureVector& v, const StandardVector& v0) {
  if (v.kind != FeatureKind::raw) {
    throw Error(ErrorCode::KindMismatch, "standard subtraction applied to an already shifted vector");
  }
  FeatureVector out;
  out.kind = FeatureKind::ssm;
  for (std::size_t k = 0; k < kAlphabetSize; ++k) out.values[k] = v.values[k] - v0.values[k];
  return out;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace detail

// Reads `<letter>,<value>` lines (any order, '#' comments, blank lines
// skipped) and renormalizes the 26 values to unit sum.
inline StandardVector load_standard_vector(std::istream& in) {
  std::array<double, kAlphabetSize> raw{};
  std::array<bool, kAlphabetSize> seen{};
  std::size_t entries = 0;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::MalformedStandardVector, "line " + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view s = detail::trim(line);
    if (line_no == 1 && s.starts_with("\xEF\xBB\xBF")) s = detail::trim(s.substr(3));
    if (s.empty() || s.front() == '#') continue;
    const auto comma = s.find(',');
    if (comma == std::string_view::npos) fail("expected <letter>,<value>");
    const auto letter = detail::trim(s.substr(0, comma));
    const std::string value(detail::trim(s.substr(comma + 1)));
    if (letter.size() != 1 || letter_index(letter[0]) < 0) fail("not a letter a-z");
    const auto k = static_cast<std::size_t>(letter_index(letter[0]));
    if (seen[k]) fail(std::string("duplicate letter '") + letter[0] + "'");
    char* end = nullptr;
    const double x = std::strtod(value.c_str(), &end);
    if (value.empty() || end != value.c_str() + value.size()) fail("unparseable value");
    if (!std::isfinite(x) || x <= 0.0) fail("value must be positive");
    raw[k] = x;
    seen[k] = true;
    ++entries;
  }
  if (entries != kAlphabetSize) {
    throw Error(ErrorCode::MalformedStandardVector,
                "expected 26 entries, found " + std::to_string(entries));
  }
  double sum = 0.0;
  for (double x : raw) sum += x;
  StandardVector v0;
  for (std::size_t k = 0; k < kAlphabetSize; ++k) v0.values[k] = raw[k] / sum;
  return v0;
}

// Same table as data/english_letter_frequencies.csv, in percent.
inline constexpr std::string_view kDefaultStandardVectorText =
    "e,12.02\nt,9.10\na,8.12\no,7.68\ni,7.31\nn,6.95\ns,6.28\nr,6.02\nh,5.92\n"
    "d,4.32\nl,3.98\nu,2.88\nc,2.71\nm,2.61\nf,2.30\ny,2.11\nw,2.09\ng,2.03\n"
    "p,1.82\nb,1.49\nv,1.11\nk,0.69\nx,0.17\nq,0.11\nj,0.10\nz,0.07\n";

inline const StandardVector& default_standard_vector() {
  static const StandardVector v0 = [] {
    std::istringstream in{std::string(kDefaultStandardVectorText)};
    return load_standard_vector(in);
  }();
  return v0;
}

inline FeatureVector extract(std::string_view text, const PreprocessConfig& config) {
  FeatureVector v = to_n_sapv(count_letters(text), config.supplement_n);
  if (config.ssm_enabled) v = apply_ssm(v, config.standard_vector);
  return v;
}

}  // namespace apvnet
