#pragma once

// Command-line front end. Exit status: 0 success, 1 usage error, 2 data
// error, 3 runtime failure.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "apvnet/dataset.hpp"
#include "apvnet/error.hpp"
#include "apvnet/experiment.hpp"
#include "apvnet/features.hpp"
#include "apvnet/metrics.hpp"
#include "apvnet/nn.hpp"

namespace apvnet {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitRuntime = 3;

namespace cli_detail {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// `--config FILE` holds `key = value` lines mirroring long flags (without
// the dashes). Flags given on the command line take precedence. Boolean
// flags take true/false.
inline std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a file");
      config_path = args[++i];
    } else if (args[i].starts_with("--config=")) {
      config_path = args[i].substr(9);
    } else {
      out.push_back(args[i]);
    }
  }
  if (config_path.empty()) return out;
  std::ifstream in(config_path);
  if (!in) throw Error(ErrorCode::Io, "cannot open config " + config_path);
  auto given = [&](const std::string& flag) {
    for (const auto& a : out) {
      if (a == flag || a.starts_with(flag + "=")) return true;
    }
    return false;
  };
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view s = detail::trim(line);
    if (s.empty() || s.front() == '#') continue;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) {
      throw UsageError(config_path + ":" + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key(detail::trim(s.substr(0, eq)));
    std::string value(detail::trim(s.substr(eq + 1)));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    const std::string flag = "--" + key;
    if (given(flag)) continue;
    if (value == "true") {
      out.push_back(flag);
    } else if (value == "false") {
      continue;
    } else {
      out.push_back(flag + "=" + value);
    }
  }
  return out;
}

struct DataOptions {
  std::string fake_path;
  std::string true_path;
  std::uint64_t seed = 42;
  std::size_t train_size = 30000;
  std::size_t test_size = 9898;
  bool stratified = false;
  bool include_title = false;
  bool dedup = false;
  std::string standard_vector;
};

struct PreprocessOptions {
  std::uint64_t n = 0;
  bool ssm = false;
};

struct TrainOptions {
  std::size_t epochs = 600;
  std::size_t batch_size = 200;
  double learning_rate = 0.001;
  std::string optimizer = "adam";
  bool no_shuffle = false;
};

inline void add_corpus_options(CLI::App* sub, DataOptions& d) {
  sub->add_option("--fake", d.fake_path, "CSV of fake news (label 0)")->required();
  sub->add_option("--true", d.true_path, "CSV of true news (label 1)")->required();
  sub->add_flag("--include-title", d.include_title, "Prepend the title to the text before counting");
}

inline void add_split_options(CLI::App* sub, DataOptions& d) {
  sub->add_option("--seed", d.seed, "Master seed for split, initialization and shuffling")->capture_default_str();
  sub->add_option("--train-size", d.train_size, "Training rows")->capture_default_str();
  sub->add_option("--test-size", d.test_size, "Test rows")->capture_default_str();
  sub->add_flag("--stratified", d.stratified, "Class-stratified split");
  sub->add_flag("--dedup", d.dedup, "Drop records whose plain letter vector repeats");
  sub->add_option("--standard-vector", d.standard_vector, "Reference letter frequency file");
}

inline void add_preprocess_options(CLI::App* sub, PreprocessOptions& p) {
  sub->add_option("--n", p.n, "Pseudo-count supplied to absent letters (0 = plain APV)")->capture_default_str();
  sub->add_flag("--ssm", p.ssm, "Subtract the reference English letter distribution");
}

inline void add_train_options(CLI::App* sub, TrainOptions& t) {
  sub->add_option("--epochs", t.epochs, "Training epochs")->capture_default_str();
  sub->add_option("--batch-size", t.batch_size, "Mini-batch size")->capture_default_str();
  sub->add_option("--lr", t.learning_rate, "Learning rate")->capture_default_str();
  sub->add_option("--optimizer", t.optimizer, "adam or sgd")
      ->check(CLI::IsMember({"adam", "sgd"}))
      ->capture_default_str();
  sub->add_flag("--no-shuffle", t.no_shuffle, "Keep row order fixed across epochs");
}

inline ExperimentConfig make_experiment(const DataOptions& d, const TrainOptions& t) {
  ExperimentConfig cfg;
  cfg.fake_path = d.fake_path;
  cfg.true_path = d.true_path;
  cfg.seed = d.seed;
  cfg.split.train_size = d.train_size;
  cfg.split.test_size = d.test_size;
  cfg.split.stratified = d.stratified;
  cfg.include_title = d.include_title;
  cfg.dedup = d.dedup;
  if (!d.standard_vector.empty()) cfg.standard_vector_path = d.standard_vector;
  cfg.train.epochs = t.epochs;
  cfg.train.batch_size = t.batch_size;
  cfg.train.learning_rate = t.learning_rate;
  cfg.train.optimizer = t.optimizer == "sgd" ? OptimizerKind::sgd : OptimizerKind::adam;
  cfg.train.shuffle_each_epoch = !t.no_shuffle;
  return cfg;
}

inline PreprocessConfig make_preprocess(const PreprocessOptions& p, bool include_title,
                                        const std::string& standard_vector) {
  PreprocessConfig c;
  c.supplement_n = p.n;
  c.ssm_enabled = p.ssm;
  c.include_title = include_title;
  std::optional<std::filesystem::path> path;
  if (!standard_vector.empty()) path = standard_vector;
  c.standard_vector = load_standard_vector_or_default(path);
  return c;
}

inline std::vector<std::uint64_t> parse_n_values(const std::string& s) {
  std::vector<std::uint64_t> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    const std::string t(detail::trim(item));
    char* end = nullptr;
    const auto v = std::strtoull(t.c_str(), &end, 10);
    if (t.empty() || t.front() == '-' || end != t.c_str() + t.size()) throw UsageError("bad N value '" + t + "'");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("--n-values is empty");
  return out;
}

inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace cli_detail

inline int cli_main(const std::vector<std::string>& raw_args, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
  using namespace cli_detail;
  CLI::App app{"Alphabet-frequency fake news classification", "apvnet"};
  app.require_subcommand(1, 1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  DataOptions data;
  PreprocessOptions pre;
  TrainOptions tr;
  TrainOptions sweep_tr;
  sweep_tr.epochs = 1000;
  std::string out_path;
  std::string model_path;
  std::string text;
  std::string text_file;
  std::string json_path;
  std::string history_path;
  std::string n_values = "0,1,2,3,4,5";
  double threshold = 0.5;
  bool resume = false;
  bool quiet = false;
  std::size_t jobs = 1;

  auto* ingest = app.add_subcommand("ingest", "Load the corpus and print row counts");
  add_corpus_options(ingest, data);
  ingest->add_flag("--dedup", data.dedup, "Also report the count after deduplication");

  auto* featurize = app.add_subcommand("featurize", "Export feature vectors as CSV");
  add_corpus_options(featurize, data);
  add_preprocess_options(featurize, pre);
  featurize->add_option("--standard-vector", data.standard_vector, "Reference letter frequency file");
  featurize->add_option("--out", out_path, "Output CSV")->required();

  auto* train_cmd = app.add_subcommand("train", "Train on the training split and save the model");
  add_corpus_options(train_cmd, data);
  add_split_options(train_cmd, data);
  add_preprocess_options(train_cmd, pre);
  add_train_options(train_cmd, tr);
  train_cmd->add_option("--model-out", model_path, "Model file to write")->required();
  train_cmd->add_option("--history", history_path, "Optional CSV of per-epoch loss");
  train_cmd->add_flag("--quiet", quiet, "No progress output");

  auto* evaluate = app.add_subcommand("evaluate", "Evaluate a saved model on the test split");
  add_corpus_options(evaluate, data);
  add_split_options(evaluate, data);
  add_preprocess_options(evaluate, pre);
  evaluate->add_option("--model", model_path, "Model file")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--json", json_path, "Write the metrics report as JSON");
  evaluate->add_option("--threshold", threshold, "Decision threshold")->capture_default_str();

  auto* predict_cmd = app.add_subcommand("predict", "Classify a single text");
  predict_cmd->add_option("--model", model_path, "Model file")->required()->check(CLI::ExistingFile);
  auto* text_opt = predict_cmd->add_option("--text", text, "Text to classify");
  auto* file_opt = predict_cmd->add_option("--text-file", text_file, "File holding the text")
                       ->check(CLI::ExistingFile);
  text_opt->excludes(file_opt);
  add_preprocess_options(predict_cmd, pre);
  predict_cmd->add_option("--standard-vector", data.standard_vector, "Reference letter frequency file");
  predict_cmd->add_option("--threshold", threshold, "Decision threshold")->capture_default_str();

  auto* table1 = app.add_subcommand("table1", "Compare APV, APV+SSM, 1-SAPV and 1-SAPV+SSM");
  add_corpus_options(table1, data);
  add_split_options(table1, data);
  add_train_options(table1, tr);
  table1->add_option("--out", out_path, "Output directory")->required();
  table1->add_flag("--resume", resume, "Reuse completed variant reports");
  table1->add_option("--jobs", jobs, "Variants trained concurrently")->capture_default_str();
  table1->add_flag("--quiet", quiet, "No progress output");

  auto* nsweep = app.add_subcommand("nsweep", "Accuracy of N-SAPV with SSM across N");
  add_corpus_options(nsweep, data);
  add_split_options(nsweep, data);
  add_train_options(nsweep, sweep_tr);
  nsweep->add_option("--n-values", n_values, "Comma-separated N values")->capture_default_str();
  nsweep->add_option("--out", out_path, "Output directory")->required();
  nsweep->add_flag("--resume", resume, "Reuse completed variant reports");
  nsweep->add_option("--jobs", jobs, "Variants trained concurrently")->capture_default_str();
  nsweep->add_flag("--quiet", quiet, "No progress output");

  auto* stats = app.add_subcommand("stats", "Feature size relative to text length");
  add_corpus_options(stats, data);

  try {
    std::vector<std::string> args = expand_config(raw_args);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);

    auto logger = [&](const std::string& s) { err << s << '\n'; };

    if (*ingest) {
      const Corpus corpus = load_corpus_files(data.fake_path, data.true_path);
      out << "records " << corpus.size() << "\n";
      out << "fake " << corpus.source_counts.at(kFakeLabel) << "\n";
      out << "true " << corpus.source_counts.at(kTrueLabel) << "\n";
      if (data.dedup) {
        PreprocessConfig plain;
        plain.include_title = data.include_title;
        out << "after_dedup " << dedup_by_vector(corpus, plain).size() << "\n";
      }
    } else if (*featurize) {
      const PreprocessConfig pc = make_preprocess(pre, data.include_title, data.standard_vector);
      const Corpus corpus = load_corpus_files(data.fake_path, data.true_path);
      const DesignMatrix m = featurize_corpus(corpus, pc);
      std::ostringstream csv;
      write_design_matrix(csv, m);
      write_atomic(out_path, csv.str());
      out << "rows " << m.rows() << "\nskipped " << m.skipped_ids.size() << "\n";
    } else if (*train_cmd) {
      ExperimentConfig cfg = make_experiment(data, tr);
      const PreparedData d = prepare_data(cfg);
      PreprocessConfig pc = preprocess_for({"", "", pre.n, pre.ssm}, cfg, d.standard_vector);
      const DesignMatrix m = featurize_corpus(d.train, pc);
      TrainConfig tc = cfg.train;
      tc.seed = d.seeds.shuffle;
      EpochCallback cb;
      if (!quiet) {
        cb = [&](std::size_t e, double loss) {
          if (e == 1 || e % 50 == 0 || e == tc.epochs) err << "epoch " << e << " loss " << loss << '\n';
        };
      }
      const TrainResult r = train(m, tc, d.seeds.init, kDefaultLayerDims, cb);
      write_atomic(model_path, serialize_model(r.model));
      if (!history_path.empty()) {
        std::string h = "epoch,loss\n";
        for (std::size_t e = 0; e < r.history.epoch_loss.size(); ++e) {
          h += std::to_string(e + 1) + "," + fmt17(r.history.epoch_loss[e]) + "\n";
        }
        write_atomic(history_path, h);
      }
      out << "train_rows " << m.rows() << "\nfinal_loss " << fmt17(r.history.epoch_loss.back()) << "\n";
    } else if (*evaluate) {
      if (!(threshold >= 0.0 && threshold <= 1.0)) throw Error(ErrorCode::BadThreshold, "threshold outside [0, 1]");
      ExperimentConfig cfg = make_experiment(data, tr);
      auto min = open_input(model_path);
      const MlpModel model = load_model(min);
      const PreparedData d = prepare_data(cfg);
      PreprocessConfig pc = preprocess_for({"", "", pre.n, pre.ssm}, cfg, d.standard_vector);
      const DesignMatrix m = featurize_corpus(d.test, pc);
      if (m.rows() == 0) throw Error(ErrorCode::EmptyInput, "no test rows survive featurization");
      const ConfusionMatrix cm = confusion(predict_all(model, m.features, threshold), m.labels);
      const MetricsReport rep = report(cm);
      VariantOutcome row;
      row.variant.name = std::to_string(pre.n) + "-SAPV" + (pre.ssm ? ", SSM" : "");
      row.metrics = rep;
      out << format_table1({row});
      if (!json_path.empty()) {
        nlohmann::ordered_json j;
        j["format"] = kReportFormat;
        j["experiment"] = "evaluate";
        j["model"] = model_path;
        j["config"] = config_json({row.variant.name, "", pre.n, pre.ssm}, cfg, d);
        j["split"] = split_json(cfg, d);
        j["confusion"] = {{cm.counts[0][0], cm.counts[0][1]}, {cm.counts[1][0], cm.counts[1][1]}};
        j["metrics"] = metrics_json(rep);
        write_atomic(json_path, j.dump(2) + "\n");
      }
    } else if (*predict_cmd) {
      if (text_opt->count() == 0 && file_opt->count() == 0) throw UsageError("give --text or --text-file");
      if (!(threshold >= 0.0 && threshold <= 1.0)) throw Error(ErrorCode::BadThreshold, "threshold outside [0, 1]");
      if (!text_file.empty()) {
        auto tin = open_input(text_file);
        text.assign(std::istreambuf_iterator<char>(tin), std::istreambuf_iterator<char>());
      }
      auto min = open_input(model_path);
      const MlpModel model = load_model(min);
      const PreprocessConfig pc = make_preprocess(pre, false, data.standard_vector);
      const FeatureVector f = extract(text, pc);
      const double p = forward_one(model, row_span(f));
      out << "label " << (p >= threshold ? 1 : 0) << "\nprobability " << fmt17(p) << "\n";
    } else if (*table1 || *nsweep) {
      ExperimentConfig cfg = make_experiment(data, *nsweep ? sweep_tr : tr);
      cfg.out_dir = out_path;
      cfg.resume = resume;
      cfg.jobs = jobs;
      if (!quiet) cfg.log = logger;
      if (*table1) {
        const auto rows = run_table1(cfg);
        out << format_table1(rows);
      } else {
        const auto result = run_nsweep(cfg, parse_n_values(n_values));
        out << format_sweep_table(result);
      }
    } else if (*stats) {
      const Corpus corpus = load_corpus_files(data.fake_path, data.true_path);
      const CompressionStats s = compression_stats(corpus, data.include_title);
      out << "records " << corpus.size() << "\n";
      out << "included " << s.included << "\nexcluded " << s.excluded << "\n";
      out << "mean_text_length " << fmt17(s.mean_text_length) << "\n";
      out << "mean_letter_count " << fmt17(s.mean_letter_count) << "\n";
      out << "mean_ratio " << fmt17(s.mean_ratio) << "\n";
    }
    return kExitOk;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::BadConfig:
      case ErrorCode::BadThreshold:
        return kExitUsage;
      case ErrorCode::SplitTooLarge:
        return kExitData;
      default:
        return is_data_error(e.code()) ? kExitData : kExitRuntime;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

inline int cli_main(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return cli_main(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace apvnet
