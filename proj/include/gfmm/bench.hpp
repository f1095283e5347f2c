#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gfmm/core.hpp"
#include "gfmm/dataio.hpp"
#include "gfmm/train.hpp"

namespace gfmm {

// One (dataset, algorithm, config, repeat, fold) execution. `fold` names the
// fold used for training; the remaining folds form the test set.
struct RunRecord {
  std::string dataset;
  Algorithm algorithm = Algorithm::Onln;
  std::optional<SimilarityMeasure> measure;  // agglomerative only
  bool accelerated = false;
  int repeat = 0;
  int fold = 0;
  double train_seconds = 0.0;
  std::uint64_t candidates = 0;
  std::uint64_t boxes = 0;
  double accuracy = 0.0;
};

// Per (dataset, algorithm, measure) summary over all repeats and folds.
struct BenchAggregate {
  std::string dataset;
  Algorithm algorithm = Algorithm::Onln;
  std::optional<SimilarityMeasure> measure;
  double mean_seconds_on = 0.0;
  double mean_seconds_off = 0.0;
  double mean_candidates_on = 0.0;
  double mean_candidates_off = 0.0;
  // Mean over folds of time(off) / time(on).
  double speedup = 0.0;
  // mean_candidates_on / mean_candidates_off (NaN when the latter is 0).
  double candidate_ratio = 0.0;
  double mean_accuracy = 0.0;
};

struct BenchConfig {
  std::vector<Algorithm> algorithms{Algorithm::Onln, Algorithm::IOL, Algorithm::AggloSM, Algorithm::Agglo2};
  std::vector<SimilarityMeasure> measures{SimilarityMeasure::Longest};
  HyperparamConfig hyper;  // `accelerated` is ignored; both settings run
  int repeats = 5;
  int folds = 2;
  std::uint64_t seed = 0;
  // Each training run is repeated this many times; the minimum time is kept.
  int timing_repeats = 1;
  // Refit min-max scaling on each training fold instead of the whole file.
  bool per_fold_normalization = false;
};

struct BenchResult {
  std::vector<RunRecord> records;
  std::vector<BenchAggregate> aggregates;
  std::vector<std::string> warnings;
};

// Raised when accelerated and plain training disagree.
class EquivalenceBreach : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Progress callback, called after each finished (dataset, algo, measure) cell.
using BenchProgress = std::function<void(const BenchAggregate&)>;

BenchResult run_bench(const std::vector<Dataset>& datasets, const BenchConfig& config,
                      const BenchProgress& progress = {});

// Classifies with the policy the bench uses for `algo`: the cardinality
// tie-break for IOL models, lowest class id otherwise.
Label bench_predict(const TrainedModel& model, Algorithm algo, const Pattern& x);

void write_report_csv(std::ostream& out, const std::vector<RunRecord>& records);
void write_summary_csv(std::ostream& out, const std::vector<BenchAggregate>& aggregates);

}  // namespace gfmm
