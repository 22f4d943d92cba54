#pragma once

// Test-only data generators and reference implementations. Nothing here
// calls into the code paths it is used to check.

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "apvnet/csv.hpp"
#include "apvnet/dataset.hpp"
#include "apvnet/rng.hpp"

namespace apvnet::testing {

// One character at a time against explicit alphabets.
inline std::array<std::uint64_t, 26> naive_letter_counts(std::string_view text) {
  static constexpr std::string_view lower = "abcdefghijklmnopqrstuvwxyz";
  static constexpr std::string_view upper = "ABCDEFGHIJKLMNOPQRSTUVWXYZ";
  std::array<std::uint64_t, 26> counts{};
  for (char c : text) {
    for (std::size_t k = 0; k < 26; ++k) {
      if (c == lower[k] || c == upper[k]) ++counts[k];
    }
  }
  return counts;
}

// Random text mixing ASCII letters of both cases, digits, punctuation,
// whitespace and multi-byte UTF-8 symbols.
inline std::string random_text(SplitMix64& rng, std::size_t max_len) {
  static const std::vector<std::string> extras = {
      " ", " ", " ", ",", ".", "!", "?", "-", "'", "\"", "\n", "\t", "0", "7", "9",
      "\xC3\xA9",          // e with acute
      "\xC3\x9F",          // sharp s
      "\xCE\xB1",          // greek alpha
      "\xD0\x96",          // cyrillic zhe
      "\xE2\x80\x94",      // em dash
      "\xE4\xB8\xAD",      // CJK
      "\xF0\x9F\x98\x80",  // emoji
  };
  const std::size_t len = static_cast<std::size_t>(rng.uniform_below(max_len + 1));
  std::string s;
  for (std::size_t i = 0; i < len; ++i) {
    const auto pick = rng.uniform_below(10);
    if (pick < 4) {
      s.push_back(static_cast<char>('a' + rng.uniform_below(26)));
    } else if (pick < 6) {
      s.push_back(static_cast<char>('A' + rng.uniform_below(26)));
    } else {
      s += extras[rng.uniform_below(extras.size())];
    }
  }
  return s;
}

// Two Gaussian blobs centred at -center and +center on every axis; label 1
// is the positive blob.
struct Blobs {
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
};

inline Blobs two_blobs(std::uint64_t seed, std::size_t rows, std::size_t dim, double center, double spread) {
  SplitMix64 rng(seed);
  Blobs b;
  for (std::size_t r = 0; r < rows; ++r) {
    const int label = static_cast<int>(r % 2);
    std::vector<double> x(dim);
    for (double& v : x) v = rng.normal(label ? center : -center, spread);
    b.rows.push_back(std::move(x));
    b.labels.push_back(label);
  }
  return b;
}

// Letters drawn from a skewed distribution: fake-labelled documents favour
// the first half of the alphabet slightly more than true-labelled ones.
inline std::string synthetic_article(SplitMix64& rng, int label, std::size_t letters) {
  std::string s;
  std::size_t since_space = 0;
  for (std::size_t i = 0; i < letters; ++i) {
    const double bias = label == 0 ? 0.62 : 0.48;
    const bool first_half = rng.uniform01() < bias;
    const auto k = rng.uniform_below(13) + (first_half ? 0 : 13);
    char c = static_cast<char>('a' + k);
    if (since_space == 0 && rng.uniform_below(4) == 0) c = static_cast<char>(c - 'a' + 'A');
    s.push_back(c);
    ++since_space;
    if (since_space > 2 + rng.uniform_below(7)) {
      const auto p = rng.uniform_below(20);
      s += p == 0 ? ", " : p == 1 ? ". " : p == 2 ? "\n" : p == 3 ? " \"q\" " : " ";
      since_space = 0;
    }
  }
  return s;
}

// Writes a fake/true CSV pair shaped like the news corpus (title, text,
// subject, date). Every 97th row has a digits-only text.
inline void write_synthetic_corpus(const std::filesystem::path& fake_path, const std::filesystem::path& true_path,
                                   std::size_t rows_per_class, std::uint64_t seed) {
  SplitMix64 rng(seed);
  for (int label = 0; label < 2; ++label) {
    std::ofstream out(label == 0 ? fake_path : true_path, std::ios::binary);
    out << "title,text,subject,date\n";
    for (std::size_t i = 0; i < rows_per_class; ++i) {
      const std::string title = synthetic_article(rng, label, 20 + rng.uniform_below(30));
      std::string text = (i % 97 == 96) ? std::string("2017 1999, 42") : synthetic_article(rng, label, 150 + rng.uniform_below(600));
      out << csv::quote(title) << ',' << csv::quote(text) << ",politicsNews,\"December 31, 2017\"\n";
    }
  }
}

}  // namespace apvnet::testing
