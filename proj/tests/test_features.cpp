#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "apvnet/features.hpp"
#include "support/synthetic.hpp"

namespace apvnet {
namespace {

TEST(CountLetters, CountsEachLetter) {
  const AlphabetCounts c = count_letters("abc");
  EXPECT_EQ(c.counts[0], 1u);
  EXPECT_EQ(c.counts[1], 1u);
  EXPECT_EQ(c.counts[2], 1u);
  EXPECT_EQ(c.total, 3u);
  for (std::size_t k = 3; k < kAlphabetSize; ++k) EXPECT_EQ(c.counts[k], 0u);
}

TEST(CountLetters, EmptyText) {
  const AlphabetCounts c = count_letters("");
  EXPECT_EQ(c.total, 0u);
  EXPECT_EQ(c, AlphabetCounts{});
}

TEST(CountLetters, FoldsCaseAndIgnoresNonLetters) {
  const AlphabetCounts c = count_letters("AaB-b! 2");
  EXPECT_EQ(c.counts[0], 2u);
  EXPECT_EQ(c.counts[1], 2u);
  EXPECT_EQ(c.total, 4u);
}

TEST(CountLetters, IgnoresAccentedAndNonLatinLetters) {
  // "café", greek alpha, cyrillic zhe
  const AlphabetCounts c = count_letters("caf\xC3\xA9 \xCE\xB1\xD0\x96");
  EXPECT_EQ(c.total, 3u);
  EXPECT_EQ(c.counts['c' - 'a'], 1u);
  EXPECT_EQ(c.counts['e' - 'a'], 0u);
}

TEST(ToApv, NormalizesCounts) {
  const FeatureVector v = to_apv(count_letters("aab"));
  EXPECT_EQ(v.kind, FeatureKind::raw);
  EXPECT_DOUBLE_EQ(v[0], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(v[1], 1.0 / 3.0);
  for (std::size_t k = 2; k < kAlphabetSize; ++k) EXPECT_EQ(v[k], 0.0);
}

TEST(ToApv, AllLettersOnceIsUniform) {
  const FeatureVector v = to_apv(count_letters("abcdefghijklmnopqrstuvwxyz"));
  for (double x : v.values) EXPECT_EQ(x, 1.0 / 26.0);
}

TEST(ToApv, EmptyTextThrows) {
  try {
    to_apv(count_letters("123"));
    FAIL() << "expected EmptyText";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyText);
  }
}

TEST(ToNSapv, ZeroSupplementIsApv) {
  const AlphabetCounts c = count_letters("aab");
  EXPECT_EQ(to_n_sapv(c, 0), to_apv(c));
}

TEST(ToNSapv, SupplementsAbsentLetters) {
  const FeatureVector v = to_n_sapv(count_letters("aab"), 1);
  EXPECT_EQ(v[0], 2.0 / 27.0);
  EXPECT_EQ(v[1], 1.0 / 27.0);
  for (std::size_t k = 2; k < kAlphabetSize; ++k) EXPECT_EQ(v[k], 1.0 / 27.0);
}

TEST(ToNSapv, SupplementRescuesEmptyText) {
  const FeatureVector v = to_n_sapv(count_letters(""), 1);
  for (double x : v.values) EXPECT_EQ(x, 1.0 / 26.0);
  const FeatureVector v3 = to_n_sapv(count_letters("!!"), 3);
  for (double x : v3.values) EXPECT_EQ(x, 1.0 / 26.0);
}

TEST(ToNSapv, ZeroSupplementOnEmptyThrows) {
  EXPECT_THROW(to_n_sapv(count_letters(""), 0), Error);
}

TEST(StandardVector, BundledDefaultIsNormalized) {
  const StandardVector& v0 = default_standard_vector();
  double sum = 0.0;
  for (double x : v0.values) {
    EXPECT_GT(x, 0.0);
    sum += x;
  }
  EXPECT_NEAR(sum, 1.0, 1e-6);
  // Transcribed percentages total 99.99.
  EXPECT_NEAR(v0.values['e' - 'a'], 12.02 / 99.99, 1e-15);
  EXPECT_NEAR(v0.values['z' - 'a'], 0.07 / 99.99, 1e-15);
}

TEST(StandardVector, ShippedFileMatchesBuiltin) {
  std::ifstream in(APVNET_DATA_DIR "/english_letter_frequencies.csv");
  ASSERT_TRUE(in.good());
  const StandardVector from_file = load_standard_vector(in);
  EXPECT_EQ(from_file.values, default_standard_vector().values);
}

TEST(StandardVector, AcceptsFractionsAndAnyOrder) {
  std::ostringstream text;
  text << std::setprecision(17) << "# fractions\n\n";
  for (int k = 25; k >= 0; --k) text << static_cast<char>('a' + k) << ", " << (k + 1) / 351.0 << "\n";
  std::istringstream in(text.str());
  const StandardVector v = load_standard_vector(in);
  EXPECT_NEAR(v.values[0], 1.0 / 351.0, 1e-15);
  EXPECT_NEAR(v.values[25], 26.0 / 351.0, 1e-15);
}

ErrorCode load_error(const std::string& text) {
  std::istringstream in(text);
  try {
    load_standard_vector(in);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Io;  // sentinel: no error
}

std::string table_without(char skip) {
  std::string s;
  for (char c = 'a'; c <= 'z'; ++c) {
    if (c != skip) s += std::string(1, c) + ",1.0\n";
  }
  return s;
}

TEST(StandardVector, RejectsTwentyFiveLines) {
  EXPECT_EQ(load_error(table_without('q')), ErrorCode::MalformedStandardVector);
}

TEST(StandardVector, RejectsDuplicateLetter) {
  EXPECT_EQ(load_error(table_without('q') + "e,2.0\n"), ErrorCode::MalformedStandardVector);
}

TEST(StandardVector, RejectsBadValues) {
  EXPECT_EQ(load_error(table_without('q') + "q,0\n"), ErrorCode::MalformedStandardVector);
  EXPECT_EQ(load_error(table_without('q') + "q,-1\n"), ErrorCode::MalformedStandardVector);
  EXPECT_EQ(load_error(table_without('q') + "q,abc\n"), ErrorCode::MalformedStandardVector);
  EXPECT_EQ(load_error(table_without('q') + "q 1.0\n"), ErrorCode::MalformedStandardVector);
  EXPECT_EQ(load_error(table_without('q') + "qq,1.0\n"), ErrorCode::MalformedStandardVector);
}

TEST(ApplySsm, SelfSubtractionIsZero) {
  StandardVector v0 = default_standard_vector();
  FeatureVector v;
  v.values = v0.values;
  const FeatureVector d = apply_ssm(v, v0);
  EXPECT_EQ(d.kind, FeatureKind::ssm);
  for (double x : d.values) EXPECT_EQ(x, 0.0);
}

TEST(ApplySsm, SubtractsBundledEComponent) {
  FeatureVector v;
  v.values['e' - 'a'] = 0.10;
  v.values['t' - 'a'] = 0.90;
  const FeatureVector d = apply_ssm(v, default_standard_vector());
  // 0.10 - 12.02 / 99.99, computed by hand.
  EXPECT_NEAR(d['e' - 'a'], -0.020212021202120212, 1e-15);
  EXPECT_NEAR(d.sum(), 0.0, 1e-9);
}

TEST(ApplySsm, RejectsShiftedInput) {
  FeatureVector v = to_apv(count_letters("hello"));
  const FeatureVector once = apply_ssm(v, default_standard_vector());
  try {
    apply_ssm(once, default_standard_vector());
    FAIL() << "expected KindMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::KindMismatch);
  }
}

TEST(Extract, ComposesPipeline) {
  PreprocessConfig cfg;
  const FeatureVector plain = extract("aab", cfg);
  EXPECT_EQ(plain[0], 2.0 / 3.0);
  EXPECT_EQ(plain[1], 1.0 / 3.0);

  cfg.supplement_n = 1;
  cfg.ssm_enabled = true;
  cfg.standard_vector = default_standard_vector();
  const FeatureVector shifted = extract("aab", cfg);
  const FeatureVector expected = apply_ssm(to_n_sapv(count_letters("aab"), 1), default_standard_vector());
  EXPECT_EQ(shifted, expected);
  EXPECT_NEAR(shifted.sum(), 0.0, 1e-9);
}

TEST(Extract, DigitsOnlyWithoutSupplementThrows) {
  try {
    extract("1234", PreprocessConfig{});
    FAIL() << "expected EmptyText";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyText);
  }
}

// Randomized properties over generated texts.
class FeatureProperties : public ::testing::Test {
 protected:
  SplitMix64 rng{20240611};
};

TEST_F(FeatureProperties, CountingMatchesNaiveOracle) {
  for (int i = 0; i < 500; ++i) {
    const std::string t = testing::random_text(rng, 300);
    const AlphabetCounts c = count_letters(t);
    const auto expected = testing::naive_letter_counts(t);
    ASSERT_EQ(c.counts, expected) << t;
    std::uint64_t sum = 0;
    for (auto x : expected) sum += x;
    ASSERT_EQ(c.total, sum);
  }
}

TEST_F(FeatureProperties, NormalizationAnagramAndDuplication) {
  const StandardVector& v0 = default_standard_vector();
  for (int i = 0; i < 300; ++i) {
    std::string t = testing::random_text(rng, 200);
    const AlphabetCounts c = count_letters(t);
    for (std::uint64_t n = 0; n <= 5; ++n) {
      if (n == 0 && c.total == 0) continue;
      const FeatureVector v = to_n_sapv(c, n);
      ASSERT_NEAR(v.sum(), 1.0, 1e-9);
      for (double x : v.values) {
        ASSERT_GE(x, 0.0);
        ASSERT_LE(x, 1.0);
        if (n > 0) {
          ASSERT_GT(x, 0.0);
        }
      }
      ASSERT_NEAR(apply_ssm(v, v0).sum(), 0.0, 1e-9);
    }
    if (c.total == 0) continue;
    EXPECT_EQ(to_n_sapv(c, 0), to_apv(c));
    std::string shuffled = t;
    fisher_yates_shuffle(std::span<char>(shuffled), rng);
    PreprocessConfig cfg{1, true, v0, false};
    EXPECT_EQ(extract(t, cfg), extract(shuffled, cfg));
    EXPECT_EQ(to_apv(count_letters(t + t)), to_apv(c));
  }
}

}  // namespace
}  // namespace apvnet
