#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gfmm/core.hpp"
#include "gfmm/train.hpp"

namespace gfmm {

// Raised for malformed input files; the message carries path and line.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Per-feature min-max scaling parameters.
struct Normalization {
  std::vector<double> min;
  std::vector<double> max;

  // Maps x into [0,1]; constant features map to 0. Values outside the
  // recorded range are clamped.
  double apply(std::size_t feature, double x) const;
};

struct Dataset {
  std::string name;
  std::vector<Pattern> patterns;
  std::size_t feature_count = 0;
  std::size_t class_count = 0;
  std::vector<std::string> label_names;  // index = label id
  std::optional<Normalization> normalization;
  // Unscaled feature values and labels in file order, kept so scaling can
  // be refitted on a subset (e.g. a training fold).
  std::vector<std::vector<double>> raw_features;
  std::vector<std::string> warnings;
};

enum class HeaderMode { Auto, Present, Absent };

struct CsvOptions {
  HeaderMode header = HeaderMode::Auto;
  // Column holding the class; nullopt means the last column.
  std::optional<std::size_t> label_column;
  bool normalize = true;
  // When set, apply these scaling parameters instead of fitting new ones.
  std::optional<Normalization> fixed_normalization;
  // Labels get dense ids in order of first appearance. Labels listed here
  // keep their positions; unseen ones are appended after them.
  std::vector<std::string> known_labels;
};

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options = {});

// Fits per-feature min-max parameters on the given rows.
Normalization fit_normalization(const std::vector<std::vector<double>>& rows, std::size_t feature_count);

// The patterns at `indices`, in the order given.
std::vector<Pattern> select(const Dataset& ds, const std::vector<std::size_t>& indices);

// Point patterns built from the raw values at `indices`, scaled with `norm`.
std::vector<Pattern> select_rescaled(const Dataset& ds, const std::vector<std::size_t>& indices,
                                     const Normalization& norm);

struct FoldPlan {
  int repeats = 0;
  int folds = 0;
  std::uint64_t seed = 0;
  bool stratified = true;
  std::vector<std::string> warnings;
  // assignments[r][f] lists the pattern indices of fold f in repeat r, ascending.
  std::vector<std::vector<std::vector<std::size_t>>> assignments;
};

FoldPlan make_fold_plan(const Dataset& ds, int repeats, int folds, std::uint64_t seed);

// Extra context stored next to a model so it can be applied to raw files.
struct ModelMetadata {
  std::optional<Algorithm> algorithm;
  std::vector<std::string> label_names;
  std::optional<Normalization> normalization;
};

constexpr int kModelFormatVersion = 1;

class ModelFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void save_model(const TrainedModel& model, const std::filesystem::path& path, const ModelMetadata& meta = {});
TrainedModel load_model(const std::filesystem::path& path, ModelMetadata* meta = nullptr);

std::string model_to_json(const TrainedModel& model, const ModelMetadata& meta = {});
TrainedModel model_from_json(const std::string& text, ModelMetadata* meta = nullptr);

}  // namespace gfmm
