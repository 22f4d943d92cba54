#pragma once

// Experiment runners: the four-variant preprocessing comparison, the
// supplement-N sweep, and corpus compression statistics. Runs are fully
// determined by the configuration; every report echoes that configuration.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "apvnet/dataset.hpp"
#include "apvnet/error.hpp"
#include "apvnet/features.hpp"
#include "apvnet/metrics.hpp"
#include "apvnet/nn.hpp"

#ifndef APVNET_COMMIT
#define APVNET_COMMIT "unknown"
#endif

namespace apvnet {

inline constexpr std::string_view kReportFormat = "apvnet-report/1";

struct Variant {
  std::string name;
  std::string slug;
  std::uint64_t supplement_n = 0;
  bool ssm = false;
};

inline std::vector<Variant> table1_variants() {
  return {
      {"APV", "apv", 0, false},
      {"APV, SSM", "apv_ssm", 0, true},
      {"1-SAPV", "1-sapv", 1, false},
      {"1-SAPV, SSM", "1-sapv_ssm", 1, true},
  };
}

inline Variant sweep_variant(std::uint64_t n) {
  return {std::to_string(n) + "-SAPV, SSM", "nsweep_n" + std::to_string(n), n, true};
}

struct ExperimentConfig {
  std::filesystem::path fake_path;
  std::filesystem::path true_path;
  std::uint64_t seed = 42;
  SplitSpec split{};
  TrainConfig train{};
  bool include_title = false;
  bool dedup = false;
  std::optional<std::filesystem::path> standard_vector_path;
  std::filesystem::path out_dir = "results";
  bool resume = false;
  std::size_t jobs = 1;
  std::function<void(const std::string&)> log;
};

struct ResolvedSeeds {
  std::uint64_t split = 0;
  std::uint64_t init = 0;
  std::uint64_t shuffle = 0;
};

// All randomness hangs off the master seed through independent streams.
inline ResolvedSeeds resolve_seeds(std::uint64_t master) {
  return {derive_seed(master, 1), derive_seed(master, 2), derive_seed(master, 3)};
}

struct PreparedData {
  Corpus train;
  Corpus test;
  StandardVector standard_vector;
  ResolvedSeeds seeds;
  std::string id_digest;
  std::size_t corpus_size = 0;
};

// FNV-1a over the decimal train ids, a separator, then the test ids.
inline std::string split_digest(const Corpus& train, const Corpus& test) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&](std::string_view s) {
    for (char c : s) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ULL;
    }
  };
  for (const auto& r : train.records) {
    feed(std::to_string(r.id));
    feed(",");
  }
  feed("|");
  for (const auto& r : test.records) {
    feed(std::to_string(r.id));
    feed(",");
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::ifstream open_input(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + p.string());
  return in;
}

inline Corpus load_corpus_files(const std::filesystem::path& fake_path, const std::filesystem::path& true_path) {
  auto fake = open_input(fake_path);
  auto real = open_input(true_path);
  return load_corpus(fake, real);
}

inline StandardVector load_standard_vector_or_default(const std::optional<std::filesystem::path>& path) {
  if (!path) return default_standard_vector();
  auto in = open_input(*path);
  return load_standard_vector(in);
}

// Ingests, optionally deduplicates (by plain APV, before splitting so every
// variant sees the same records), and splits once.
inline PreparedData prepare_data(const ExperimentConfig& cfg) {
  PreparedData d;
  d.standard_vector = load_standard_vector_or_default(cfg.standard_vector_path);
  d.seeds = resolve_seeds(cfg.seed);
  Corpus corpus = load_corpus_files(cfg.fake_path, cfg.true_path);
  if (cfg.dedup) {
    PreprocessConfig plain;
    plain.include_title = cfg.include_title;
    corpus = dedup_by_vector(corpus, plain);
  }
  d.corpus_size = corpus.size();
  SplitSpec spec = cfg.split;
  spec.seed = d.seeds.split;
  auto [train, test] = split(corpus, spec);
  d.train = std::move(train);
  d.test = std::move(test);
  d.id_digest = split_digest(d.train, d.test);
  return d;
}

inline PreprocessConfig preprocess_for(const Variant& v, const ExperimentConfig& cfg, const StandardVector& v0) {
  PreprocessConfig p;
  p.supplement_n = v.supplement_n;
  p.ssm_enabled = v.ssm;
  p.standard_vector = v0;
  p.include_title = cfg.include_title;
  return p;
}

struct VariantOutcome {
  Variant variant;
  ConfusionMatrix confusion;
  MetricsReport metrics;
  nlohmann::ordered_json report;
  double seconds = 0.0;
  bool resumed = false;
};

inline nlohmann::ordered_json metrics_json(const MetricsReport& m) {
  nlohmann::ordered_json per_class;
  for (int c = 0; c < 2; ++c) {
    per_class[std::to_string(c)] = {{"precision", m.per_class[c].precision},
                                    {"recall", m.per_class[c].recall},
                                    {"f1", m.per_class[c].f1},
                                    {"degenerate", m.per_class[c].degenerate}};
  }
  return {{"accuracy", m.accuracy},
          {"per_class", per_class},
          {"support", {{"0", m.support[0]}, {"1", m.support[1]}}}};
}

inline nlohmann::ordered_json config_json(const Variant& v, const ExperimentConfig& cfg, const PreparedData& d) {
  return {{"supplement_n", v.supplement_n},
          {"ssm", v.ssm},
          {"include_title", cfg.include_title},
          {"dedup", cfg.dedup},
          {"epochs", cfg.train.epochs},
          {"batch_size", cfg.train.batch_size},
          {"learning_rate", cfg.train.learning_rate},
          {"optimizer", std::string(to_string(cfg.train.optimizer))},
          {"shuffle_each_epoch", cfg.train.shuffle_each_epoch},
          {"layer_dims", kDefaultLayerDims},
          {"threshold", 0.5},
          {"seed", cfg.seed},
          {"split_seed", d.seeds.split},
          {"init_seed", d.seeds.init},
          {"shuffle_seed", d.seeds.shuffle},
          {"initialization", "fresh"},
          {"standard_vector", cfg.standard_vector_path ? cfg.standard_vector_path->string() : "builtin"},
          {"commit", APVNET_COMMIT}};
}

inline nlohmann::ordered_json split_json(const ExperimentConfig& cfg, const PreparedData& d) {
  return {{"corpus_size", d.corpus_size},
          {"train_size", cfg.split.train_size},
          {"test_size", cfg.split.test_size},
          {"unused", d.corpus_size - cfg.split.train_size - cfg.split.test_size},
          {"stratified", cfg.split.stratified},
          {"id_digest", d.id_digest}};
}

inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline std::filesystem::path report_path(const ExperimentConfig& cfg, const Variant& v) {
  return cfg.out_dir / (v.slug + ".json");
}

namespace detail {

inline nlohmann::ordered_json without_commit(nlohmann::ordered_json j) {
  j.erase("commit");
  return j;
}

inline std::optional<VariantOutcome> try_resume(const ExperimentConfig& cfg, const Variant& v,
                                                const nlohmann::ordered_json& config,
                                                const nlohmann::ordered_json& split) {
  const auto path = report_path(cfg, v);
  if (!std::filesystem::exists(path)) return std::nullopt;
  try {
    std::ifstream in(path);
    const auto j = nlohmann::ordered_json::parse(in);
    if (j.at("format") != kReportFormat || without_commit(j.at("config")) != without_commit(config) ||
        j.at("split") != split) {
      return std::nullopt;
    }
    VariantOutcome out;
    out.variant = v;
    const auto& cm = j.at("confusion");
    for (int a = 0; a < 2; ++a) {
      for (int p = 0; p < 2; ++p) out.confusion.counts[a][p] = cm.at(a).at(p).get<std::uint64_t>();
    }
    out.metrics = report(out.confusion);
    out.report = j;
    out.resumed = true;
    const std::filesystem::path timing = cfg.out_dir / (v.slug + ".timing.json");
    if (std::filesystem::exists(timing)) {
      std::ifstream tin(timing);
      out.seconds = nlohmann::json::parse(tin).value("seconds", 0.0);
    }
    return out;
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;
  }
}

}  // namespace detail

// Featurizes both halves of the shared split for one variant, trains a
// freshly initialized network, evaluates on the test half, and persists
// the report (JSON without timings) plus a timing sidecar.
inline VariantOutcome run_variant(const ExperimentConfig& cfg, const PreparedData& d, const Variant& v,
                                  std::string_view experiment) {
  const auto config = config_json(v, cfg, d);
  const auto split = split_json(cfg, d);
  if (cfg.resume) {
    if (auto done = detail::try_resume(cfg, v, config, split)) {
      if (cfg.log) cfg.log(v.name + ": reusing " + report_path(cfg, v).string());
      return *done;
    }
  }
  const auto started = std::chrono::steady_clock::now();
  const PreprocessConfig pre = preprocess_for(v, cfg, d.standard_vector);
  const DesignMatrix train_m = featurize_corpus(d.train, pre);
  const DesignMatrix test_m = featurize_corpus(d.test, pre);
  if (test_m.rows() == 0) throw Error(ErrorCode::EmptyInput, "no test rows survive featurization");

  TrainConfig tc = cfg.train;
  tc.seed = d.seeds.shuffle;
  EpochCallback progress;
  if (cfg.log) {
    progress = [&](std::size_t epoch, double loss) {
      if (epoch == 1 || epoch % 50 == 0 || epoch == tc.epochs) {
        char buf[96];
        std::snprintf(buf, sizeof buf, ": epoch %zu/%zu loss %.6f", epoch, tc.epochs, loss);
        cfg.log(v.name + buf);
      }
    };
  }
  const TrainResult trained = train(train_m, tc, d.seeds.init, kDefaultLayerDims, progress);

  VariantOutcome out;
  out.variant = v;
  out.confusion = confusion(predict_all(trained.model, test_m.features), test_m.labels);
  out.metrics = report(out.confusion);
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  nlohmann::ordered_json j;
  j["format"] = kReportFormat;
  j["experiment"] = experiment;
  j["variant"] = v.name;
  j["config"] = config;
  j["split"] = split;
  j["data"] = {{"train_rows", train_m.rows()},
               {"test_rows", test_m.rows()},
               {"train_skipped_ids", train_m.skipped_ids},
               {"test_skipped_ids", test_m.skipped_ids}};
  j["training"] = {{"final_loss", trained.history.epoch_loss.back()},
                   {"epoch_loss", trained.history.epoch_loss}};
  j["confusion"] = {{out.confusion.counts[0][0], out.confusion.counts[0][1]},
                    {out.confusion.counts[1][0], out.confusion.counts[1][1]}};
  j["metrics"] = metrics_json(out.metrics);
  out.report = j;

  write_atomic(report_path(cfg, v), j.dump(2) + "\n");
  write_atomic(cfg.out_dir / (v.slug + ".timing.json"),
               nlohmann::json{{"variant", v.name}, {"seconds", out.seconds}}.dump() + "\n");
  if (cfg.log) cfg.log(v.name + ": accuracy " + std::to_string(out.metrics.accuracy));
  return out;
}

// Runs the variants on cfg.jobs worker threads. Each variant trains on one
// thread, so results do not depend on the worker count.
inline std::vector<VariantOutcome> run_variants(const ExperimentConfig& cfg, const PreparedData& d,
                                                const std::vector<Variant>& variants, std::string_view experiment) {
  std::vector<std::optional<VariantOutcome>> slots(variants.size());
  const std::size_t workers = std::clamp<std::size_t>(cfg.jobs, 1, std::max<std::size_t>(1, variants.size()));
  if (workers == 1) {
    for (std::size_t i = 0; i < variants.size(); ++i) slots[i] = run_variant(cfg, d, variants[i], experiment);
  } else {
    std::atomic<std::size_t> next{0};
    std::mutex err_mu;
    std::exception_ptr first_error;
    std::mutex log_mu;
    ExperimentConfig local = cfg;
    if (cfg.log) {
      local.log = [&](const std::string& s) {
        std::lock_guard lock(log_mu);
        cfg.log(s);
      };
    }
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < variants.size();) {
          try {
            slots[i] = run_variant(local, d, variants[i], experiment);
          } catch (...) {
            std::lock_guard lock(err_mu);
            if (!first_error) first_error = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
  }
  std::vector<VariantOutcome> out;
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

namespace detail {

inline std::string fixed2(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

inline std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

}  // namespace detail

// Plain-text table with two decimals: Type, Accuracy, Precision, recall,
// F1-score, with per-class `0:` / `1:` entries.
inline std::string format_table1(const std::vector<VariantOutcome>& rows) {
  using detail::fixed2;
  auto pair = [](double a, double b) { return "0: " + fixed2(a) + ", 1: " + fixed2(b); };
  const std::vector<std::string> header{"Type", "Accuracy", "Precision", "recall", "F1-score"};
  std::vector<std::vector<std::string>> cells{header};
  for (const auto& r : rows) {
    const auto& m = r.metrics;
    cells.push_back({r.variant.name, fixed2(m.accuracy), pair(m.per_class[0].precision, m.per_class[1].precision),
                     pair(m.per_class[0].recall, m.per_class[1].recall), pair(m.per_class[0].f1, m.per_class[1].f1)});
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::string out;
  for (std::size_t r = 0; r < cells.size(); ++r) {
    for (std::size_t c = 0; c < cells[r].size(); ++c) {
      out += (c ? " | " : "") + (c + 1 < cells[r].size() ? detail::pad(cells[r][c], width[c]) : cells[r][c]);
    }
    out += "\n";
    if (r == 0) {
      std::size_t total = 0;
      for (std::size_t w : width) total += w;
      out += std::string(total + 3 * (width.size() - 1), '-') + "\n";
    }
  }
  return out;
}

inline std::vector<VariantOutcome> run_table1(const ExperimentConfig& cfg) {
  const PreparedData d = prepare_data(cfg);
  auto rows = run_variants(cfg, d, table1_variants(), "table1");
  write_atomic(cfg.out_dir / "table1.txt", format_table1(rows));
  return rows;
}

struct SweepEntry {
  double accuracy = 0.0;
  MetricsReport report;
  std::uint64_t seed = 0;
  double seconds = 0.0;
};

using SweepResult = std::map<std::uint64_t, SweepEntry>;

inline std::string format_sweep_csv(const SweepResult& r) {
  std::string out = "n,accuracy,seconds,seed\n";
  char buf[128];
  for (const auto& [n, e] : r) {
    std::snprintf(buf, sizeof buf, "%llu,%.17g,%.3f,%llu\n", static_cast<unsigned long long>(n), e.accuracy,
                  e.seconds, static_cast<unsigned long long>(e.seed));
    out += buf;
  }
  return out;
}

inline std::string format_sweep_table(const SweepResult& r) {
  std::string head = "         ";
  std::string acc = "Accuracy ";
  for (const auto& [n, e] : r) {
    std::string label = std::to_string(n) + "-SAPV";
    if (n == 0) label += " (APV)";
    const std::size_t w = std::max<std::size_t>(label.size(), 4);
    head += " | " + detail::pad(label, w);
    acc += " | " + detail::pad(detail::fixed2(e.accuracy), w);
  }
  return head + "\n" + acc + "\n";
}

// Every N shares one split and one initialization seed.
inline SweepResult run_nsweep(const ExperimentConfig& cfg, const std::vector<std::uint64_t>& n_values) {
  if (n_values.empty()) throw Error(ErrorCode::BadConfig, "no N values requested");
  const PreparedData d = prepare_data(cfg);
  std::vector<Variant> variants;
  for (std::uint64_t n : n_values) variants.push_back(sweep_variant(n));
  const auto rows = run_variants(cfg, d, variants, "nsweep");
  SweepResult result;
  for (const auto& row : rows) {
    result[row.variant.supplement_n] = {row.metrics.accuracy, row.metrics, cfg.seed, row.seconds};
  }
  write_atomic(cfg.out_dir / "nsweep.csv", format_sweep_csv(result));
  write_atomic(cfg.out_dir / "nsweep.txt", format_sweep_table(result));
  return result;
}

struct CompressionStats {
  double mean_text_length = 0.0;   // bytes of the featurized text
  double mean_letter_count = 0.0;  // letters a-z
  double mean_ratio = 0.0;         // mean of 26 / letter count
  std::size_t included = 0;
  std::size_t excluded = 0;        // records without letters
};

// Ratio of the 26 feature values to the letters they summarize.
inline CompressionStats compression_stats(const Corpus& corpus, bool include_title = false) {
  if (corpus.empty()) throw Error(ErrorCode::EmptyInput, "empty corpus");
  CompressionStats s;
  double length_sum = 0.0;
  double letter_sum = 0.0;
  double ratio_sum = 0.0;
  for (const Record& r : corpus.records) {
    const std::string text = document_text(r, include_title);
    const std::uint64_t letters = count_letters(text).total;
    if (letters == 0) {
      ++s.excluded;
      continue;
    }
    ++s.included;
    length_sum += static_cast<double>(text.size());
    letter_sum += static_cast<double>(letters);
    ratio_sum += static_cast<double>(kAlphabetSize) / static_cast<double>(letters);
  }
  if (s.included > 0) {
    const auto n = static_cast<double>(s.included);
    s.mean_text_length = length_sum / n;
    s.mean_letter_count = letter_sum / n;
    s.mean_ratio = ratio_sum / n;
  } else {
    s.mean_text_length = s.mean_letter_count = s.mean_ratio = std::numeric_limits<double>::quiet_NaN();
  }
  return s;
}

}  // namespace apvnet
