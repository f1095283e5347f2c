#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gfmm {

using Label = std::uint32_t;

// Input pattern [X^l, X^u] with its class. A crisp point has lower == upper.
class Pattern {
 public:
  Pattern(std::vector<double> lower, std::vector<double> upper, Label label);

  std::span<const double> lower() const { return lower_; }
  std::span<const double> upper() const { return upper_; }
  Label label() const { return label_; }
  std::size_t dims() const { return lower_.size(); }

  bool operator==(const Pattern&) const = default;

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
  Label label_;
};

Pattern make_point_pattern(std::vector<double> coords, Label label);

// Axis-aligned box [V, W] of one class, with the number of training samples
// it has absorbed.
class Hyperbox {
 public:
  Hyperbox(std::vector<double> vmin, std::vector<double> wmax, Label label, std::uint64_t cardinality = 1);

  std::span<const double> vmin() const { return vmin_; }
  std::span<const double> wmax() const { return wmax_; }
  std::span<double> vmin() { return vmin_; }
  std::span<double> wmax() { return wmax_; }
  Label label() const { return label_; }
  std::uint64_t cardinality() const { return cardinality_; }
  std::size_t dims() const { return vmin_.size(); }

  void set_cardinality(std::uint64_t n);

  bool operator==(const Hyperbox&) const = default;

 private:
  std::vector<double> vmin_;
  std::vector<double> wmax_;
  Label label_;
  std::uint64_t cardinality_;
};

Hyperbox box_from_pattern(const Pattern& p);

// Throws std::domain_error naming `what` unless the box/pattern bounds are
// well formed: equal length n >= 1, lower <= upper, everything in [0,1].
void check_bounds(std::span<const double> lower, std::span<const double> upper, std::string_view what);

enum class SimilarityMeasure { Longest, Shortest, MidMax, MidMin };

std::string_view to_string(SimilarityMeasure m);
SimilarityMeasure parse_measure(std::string_view name);

struct HyperparamConfig {
  double theta = 0.1;
  std::vector<double> gamma{1.0};
  double sigma = 0.0;
  SimilarityMeasure measure = SimilarityMeasure::Longest;
  bool accelerated = true;
  int epochs = 1;

  double gamma_max() const;
  // Throws std::invalid_argument when theta, gamma, sigma or epochs are out
  // of range; `dims` > 0 additionally requires gamma.size() == dims.
  void validate(std::size_t dims = 0) const;

  bool operator==(const HyperparamConfig&) const = default;
};

// Broadcasts a single gamma value to n dimensions; leaves a full vector alone.
std::vector<double> broadcast_gamma(std::span<const double> gamma, std::size_t n);

struct TrainStats {
  std::uint64_t candidates_considered = 0;
  double train_seconds = 0.0;
  std::uint64_t boxes_created = 0;
  std::uint64_t merges_performed = 0;

  bool operator==(const TrainStats&) const = default;
};

struct TrainedModel {
  std::vector<Hyperbox> boxes;
  HyperparamConfig config;
  TrainStats stats;

  std::size_t dims() const { return boxes.empty() ? 0 : boxes.front().dims(); }
  // One past the largest label held by any box.
  std::size_t class_count() const;
};

}  // namespace gfmm
