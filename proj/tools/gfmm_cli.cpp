// Command-line front end: train, predict, bench and verify.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gfmm/bench.hpp"
#include "gfmm/dataio.hpp"
#include "gfmm/predict.hpp"
#include "gfmm/train.hpp"
#include "gfmm/verify.hpp"

namespace fs = std::filesystem;

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> parse_gamma(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw CLI::ValidationError("--gamma", "'" + item + "' is not a number");
    out.push_back(v);
  }
  if (out.empty()) throw CLI::ValidationError("--gamma", "expects a value or a comma-separated list");
  return out;
}

const CLI::Validator kTheta = CLI::Validator(
    [](std::string& s) -> std::string {
      double v = 0.0;
      try {
        v = std::stod(s);
      } catch (const std::exception&) {
        return "theta must be a number";
      }
      if (!(v > 0.0 && v <= 1.0)) return "theta must be in (0, 1]";
      return {};
    },
    "(0,1]");

const CLI::Validator kMeasure = CLI::IsMember({"longest", "shortest", "mid-max", "mid-min"});
const CLI::Validator kAlgo = CLI::IsMember({"onln", "iol", "agglo-sm", "agglo-2"});

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

// ---------------------------------------------------------------------------

struct TrainArgs {
  std::string data;
  std::string algo = "iol";
  double theta = 0.1;
  std::string gamma = "1";
  double sigma = 0.0;
  std::string measure;
  bool accelerate = true;
  int epochs = 1;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<std::size_t> label_column;
};

int cmd_train(const TrainArgs& a) {
  const gfmm::Algorithm algo = gfmm::parse_algorithm(a.algo);
  gfmm::CsvOptions csv;
  csv.label_column = a.label_column;
  gfmm::Dataset ds = gfmm::load_csv(a.data, csv);
  print_warnings(ds.warnings);

  gfmm::HyperparamConfig cfg;
  cfg.theta = a.theta;
  cfg.gamma = parse_gamma(a.gamma);
  cfg.sigma = a.sigma;
  cfg.accelerated = a.accelerate;
  cfg.epochs = a.epochs;
  if (!a.measure.empty()) {
    if (gfmm::is_agglomerative(algo)) {
      cfg.measure = gfmm::parse_measure(a.measure);
    } else {
      std::cerr << "warning: --measure applies to agglomerative algorithms only; ignored for " << a.algo << '\n';
    }
  }

  // Presentation order is the file order unless a seed asks for a shuffle.
  std::vector<gfmm::Pattern> data = ds.patterns;
  if (a.seed) {
    std::mt19937_64 rng(*a.seed);
    std::shuffle(data.begin(), data.end(), rng);
  }

  const gfmm::TrainedModel model = gfmm::train(data, cfg, algo);
  gfmm::ModelMetadata meta{algo, ds.label_names, ds.normalization};
  gfmm::save_model(model, a.out, meta);
  std::cout << "algo=" << a.algo << " patterns=" << data.size() << " boxes=" << model.boxes.size()
            << " candidates=" << model.stats.candidates_considered << " seconds=" << model.stats.train_seconds
            << " model=" << a.out << '\n';
  return 0;
}

// ---------------------------------------------------------------------------

struct PredictArgs {
  std::string model;
  std::string data;
  std::string tie = "eq8";
  std::string out;
  std::optional<std::size_t> label_column;
};

int cmd_predict(const PredictArgs& a) {
  gfmm::ModelMetadata meta;
  const gfmm::TrainedModel model = gfmm::load_model(a.model, &meta);

  enum class Policy { Posterior, First, Random } policy = Policy::Posterior;
  std::uint64_t tie_seed = 0;
  if (a.tie == "first") {
    policy = Policy::First;
  } else if (a.tie.rfind("random:", 0) == 0) {
    policy = Policy::Random;
    const std::string seed = a.tie.substr(7);
    std::size_t used = 0;
    try {
      tie_seed = std::stoull(seed, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (seed.empty() || used != seed.size()) throw CLI::ValidationError("--tie", "random:SEED needs an integer seed");
  } else if (a.tie != "eq8") {
    throw CLI::ValidationError("--tie", "expected eq8, first or random:SEED");
  }

  gfmm::CsvOptions csv;
  csv.label_column = a.label_column;
  csv.known_labels = meta.label_names;
  if (meta.normalization) {
    csv.fixed_normalization = meta.normalization;
  } else {
    csv.normalize = false;
  }
  const gfmm::Dataset ds = gfmm::load_csv(a.data, csv);

  std::ofstream file;
  if (!a.out.empty()) {
    file.open(a.out);
    if (!file) throw std::runtime_error("cannot write " + a.out);
  }
  std::ostream& out = a.out.empty() ? std::cout : file;

  auto name_of = [&](gfmm::Label c) {
    return c < meta.label_names.size() ? meta.label_names[c] : std::to_string(c);
  };

  auto breaker = policy == Policy::Random ? gfmm::TieBreaker::random(tie_seed) : gfmm::TieBreaker::first_class();
  out << "row,predicted,score,tie_broken,actual\n";
  std::size_t hits = 0;
  for (std::size_t i = 0; i < ds.patterns.size(); ++i) {
    const auto& x = ds.patterns[i];
    const gfmm::Prediction p =
        policy == Policy::Posterior ? gfmm::predict_iol(model, x) : gfmm::predict_online_original(model, x, breaker);
    hits += p.label == x.label() ? 1 : 0;
    char score[32];
    std::snprintf(score, sizeof score, "%.17g", p.score);
    out << i << ',' << name_of(p.label) << ',' << score << ',' << (p.tie_broken ? 1 : 0) << ','
        << ds.label_names.at(x.label()) << '\n';
  }
  if (!ds.patterns.empty()) {
    std::cerr << "accuracy=" << static_cast<double>(hits) / static_cast<double>(ds.patterns.size()) << " ("
              << hits << "/" << ds.patterns.size() << ")\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct BenchArgs {
  std::string data;
  std::string protocol = "5x2cv";
  std::string algos = "onln,iol,agglo-sm,agglo-2";
  std::string measures = "longest";
  double theta = 0.1;
  std::string gamma = "1";
  double sigma = 0.0;
  std::uint64_t seed = 0;
  std::string report;
  std::string summary;
  int timing_repeats = 1;
  bool per_fold_normalization = false;
};

int cmd_bench(const BenchArgs& a) {
  gfmm::BenchConfig cfg;
  int repeats = 0, folds = 0;
  char tail[8] = {};
  if (std::sscanf(a.protocol.c_str(), "%dx%d%7s", &repeats, &folds, tail) != 3 || std::string(tail) != "cv" ||
      repeats < 1 || folds < 2) {
    throw CLI::ValidationError("--protocol", "expected RxKcv, e.g. 5x2cv");
  }
  cfg.repeats = repeats;
  cfg.folds = folds;
  cfg.algorithms.clear();
  for (const auto& s : split_list(a.algos)) cfg.algorithms.push_back(gfmm::parse_algorithm(s));
  cfg.measures.clear();
  for (const auto& s : split_list(a.measures)) cfg.measures.push_back(gfmm::parse_measure(s));
  if (cfg.algorithms.empty()) throw CLI::ValidationError("--algos", "empty list");
  if (cfg.measures.empty()) throw CLI::ValidationError("--measures", "empty list");
  cfg.hyper.theta = a.theta;
  cfg.hyper.gamma = parse_gamma(a.gamma);
  cfg.hyper.sigma = a.sigma;
  cfg.seed = a.seed;
  cfg.timing_repeats = a.timing_repeats;
  cfg.per_fold_normalization = a.per_fold_normalization;

  std::vector<fs::path> files;
  if (fs::is_directory(a.data)) {
    for (const auto& entry : fs::directory_iterator(a.data)) {
      if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
  } else {
    files.emplace_back(a.data);
  }
  if (files.empty()) throw std::runtime_error("no .csv files found in " + a.data);

  std::vector<gfmm::Dataset> datasets;
  for (const auto& f : files) {
    datasets.push_back(gfmm::load_csv(f));
    print_warnings(datasets.back().warnings);
  }

  std::cout << "dataset              algo      measure   speedup   cand_on      cand_off     ratio      accuracy\n";
  const auto result = gfmm::run_bench(datasets, cfg, [](const gfmm::BenchAggregate& g) {
    std::printf("%-20s %-9s %-9s %8.3f  %-12.1f %-12.1f %-10.6f %.4f\n", g.dataset.c_str(),
                std::string(gfmm::to_string(g.algorithm)).c_str(),
                g.measure ? std::string(gfmm::to_string(*g.measure)).c_str() : "-", g.speedup, g.mean_candidates_on,
                g.mean_candidates_off, g.candidate_ratio, g.mean_accuracy);
    std::fflush(stdout);
  });
  print_warnings(result.warnings);

  if (!a.report.empty()) {
    std::ofstream out(a.report);
    if (!out) throw std::runtime_error("cannot write " + a.report);
    gfmm::write_report_csv(out, result.records);
  }
  if (!a.summary.empty()) {
    std::ofstream out(a.summary);
    if (!out) throw std::runtime_error("cannot write " + a.summary);
    gfmm::write_summary_csv(out, result.aggregates);
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  double theta = 0.1;
  std::string gamma = "1";
  std::vector<std::string> measures;
  std::size_t dims = 0;
  std::string format = "text";
};

nlohmann::json report_json(const gfmm::OracleReport& r) {
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& s : r.violation_samples) samples.push_back(nlohmann::json::parse(s));
  return {{"trials", r.trials},
          {"seed", r.seed},
          {"filtered", r.filtered},
          {"violations", r.violations},
          {"case_coverage", r.case_coverage},
          {"case_filtered", r.case_filtered},
          {"violation_samples", samples}};
}

void print_report_text(const std::string& title, const gfmm::OracleReport& r) {
  std::cout << title << ": trials=" << r.trials << " filtered=" << r.filtered << " violations: " << r.violations
            << '\n';
  std::cout << "  coverage:";
  for (const auto& [k, v] : r.case_coverage) std::cout << ' ' << k << '=' << v;
  std::cout << "\n  filtered per case:";
  for (const auto& [k, v] : r.case_filtered) std::cout << ' ' << k << '=' << v;
  std::cout << '\n';
  for (const auto& s : r.violation_samples) std::cout << "  violation " << s << '\n';
}

int cmd_verify(const VerifyArgs& a) {
  std::vector<double> gamma = parse_gamma(a.gamma);
  if (a.dims > 0) {
    if (gamma.size() != 1 && gamma.size() != a.dims) {
      throw CLI::ValidationError("--dims", "gamma list length does not match --dims");
    }
    gamma = gfmm::broadcast_gamma(gamma, a.dims);
  }
  std::vector<gfmm::SimilarityMeasure> measures;
  if (a.measures.empty()) {
    measures = {gfmm::SimilarityMeasure::Longest, gfmm::SimilarityMeasure::Shortest, gfmm::SimilarityMeasure::MidMax,
                gfmm::SimilarityMeasure::MidMin};
  } else {
    for (const auto& m : a.measures) measures.push_back(gfmm::parse_measure(m));
  }

  std::uint64_t violations = 0;
  const auto l1 = gfmm::oracle_lemma1(a.trials, a.seed, a.theta, gamma);
  violations += l1.violations;
  std::vector<std::pair<gfmm::SimilarityMeasure, gfmm::OracleReport>> l2;
  for (auto m : measures) {
    l2.emplace_back(m, gfmm::oracle_lemma2(a.trials, a.seed, a.theta, gamma, m));
    violations += l2.back().second.violations;
  }

  if (a.format == "json") {
    nlohmann::json j;
    j["theta"] = a.theta;
    j["gamma"] = gamma;
    j["expansion"] = report_json(l1);
    for (const auto& [m, r] : l2) j["merge"][std::string(gfmm::to_string(m))] = report_json(r);
    j["violations"] = violations;
    std::cout << j.dump(2) << '\n';
  } else {
    print_report_text("expansion bound", l1);
    for (const auto& [m, r] : l2) print_report_text("merge bound (" + std::string(gfmm::to_string(m)) + ")", r);
    std::cout << "total violations: " << violations << '\n';
  }
  return violations == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"General fuzzy min-max hyperbox classifier"};
  app.require_subcommand(1);

  TrainArgs train;
  auto* t = app.add_subcommand("train", "Train a model and write it as JSON");
  t->add_option("--data", train.data, "Training CSV (label in the last column)")->required()->check(CLI::ExistingFile);
  t->add_option("--algo", train.algo, "onln | iol | agglo-sm | agglo-2")->check(kAlgo)->capture_default_str();
  t->add_option("--theta", train.theta, "Maximum hyperbox size")->check(kTheta)->capture_default_str();
  t->add_option("--gamma", train.gamma, "Sensitivity, one value or a comma-separated list")->capture_default_str();
  t->add_option("--sigma", train.sigma, "Minimum similarity for merging")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  t->add_option("--measure", train.measure, "longest | shortest | mid-max | mid-min")->check(kMeasure);
  t->add_flag("--accelerate,!--no-accelerate", train.accelerate, "Prune candidates with the membership bounds");
  t->add_option("--epochs", train.epochs, "Passes over the data (online algorithms)")->check(CLI::PositiveNumber)->capture_default_str();
  t->add_option("--seed", train.seed, "Shuffle the presentation order with this seed");
  t->add_option("--out", train.out, "Model output path")->required();
  t->add_option("--label-column", train.label_column, "Zero-based label column (default: last)");

  PredictArgs predict;
  auto* p = app.add_subcommand("predict", "Classify a CSV with a saved model");
  p->add_option("--model", predict.model, "Model file")->required()->check(CLI::ExistingFile);
  p->add_option("--data", predict.data, "CSV to classify")->required()->check(CLI::ExistingFile);
  p->add_option("--tie", predict.tie, "Tie policy: eq8 (cardinality-weighted posterior) | first | random:SEED")->capture_default_str();
  p->add_option("--out", predict.out, "Predictions CSV (default: stdout)");
  p->add_option("--label-column", predict.label_column, "Zero-based label column (default: last)");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Cross-validated accelerated vs plain comparison");
  b->add_option("--data", bench.data, "CSV file or directory of CSV files")->required()->check(CLI::ExistingPath);
  b->add_option("--protocol", bench.protocol, "Repeats x folds, e.g. 5x2cv")->capture_default_str();
  b->add_option("--algos", bench.algos, "Comma-separated algorithms")->capture_default_str();
  b->add_option("--measures", bench.measures, "Comma-separated measures (agglomerative only)")->capture_default_str();
  b->add_option("--theta", bench.theta, "Maximum hyperbox size")->check(kTheta)->capture_default_str();
  b->add_option("--gamma", bench.gamma, "Sensitivity")->capture_default_str();
  b->add_option("--sigma", bench.sigma, "Minimum similarity")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  b->add_option("--seed", bench.seed, "Fold plan seed")->capture_default_str();
  b->add_option("--report", bench.report, "Per-run report CSV");
  b->add_option("--summary", bench.summary, "Aggregate summary CSV");
  b->add_option("--timing-repeats", bench.timing_repeats, "Repeat each training run, keep the fastest")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  b->add_flag("--per-fold-normalization", bench.per_fold_normalization,
              "Fit min-max scaling on each training fold instead of the whole file");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Randomized checks of the candidate pruning bounds");
  v->add_option("--trials", verify.trials, "Trials per oracle")->check(CLI::PositiveNumber)->capture_default_str();
  v->add_option("--seed", verify.seed, "Base seed")->capture_default_str();
  v->add_option("--theta", verify.theta, "Maximum hyperbox size")->check(kTheta)->capture_default_str();
  v->add_option("--gamma", verify.gamma, "Sensitivity, one value or a comma-separated list")->capture_default_str();
  v->add_option("--measure", verify.measures, "Merge measures to check (default: all)")->check(kMeasure)->delimiter(',');
  v->add_option("--dims", verify.dims, "Dimensionality (broadcasts a single gamma)");
  v->add_option("--format", verify.format, "text | json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*t) return cmd_train(train);
    if (*p) return cmd_predict(predict);
    if (*b) return cmd_bench(bench);
    if (*v) return cmd_verify(verify);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
