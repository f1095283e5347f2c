#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "gfmm/core.hpp"

namespace gfmm {

// Fuzzy class outputs: scores[c] is the largest membership among boxes of
// class c (0 for classes without boxes).
struct ClassScores {
  std::vector<double> scores;
  Label winner = 0;
  // More than one class attains the top score.
  bool tie_broken = false;
};

ClassScores class_scores(const TrainedModel& model, const Pattern& x);

struct Prediction {
  Label label = 0;
  double score = 0.0;
  bool tie_broken = false;
};

// Cardinality-weighted posterior over the classes tied at the top
// membership b_win: P(c) = sum_{j in win, class c} n_j b_j / sum_{i in win} n_i b_i.
// Indexed by class id; classes outside the tie get 0. When every winning
// box has b = 0 the weights reduce to cardinalities alone.
std::vector<double> tie_posteriors(const TrainedModel& model, const Pattern& x);

// Classification with the cardinality tie-break used for IOL-GFMM models.
Prediction predict_iol(const TrainedModel& model, const Pattern& x);

// Tie handling for the original online classifier.
class TieBreaker {
 public:
  static TieBreaker first_class() { return TieBreaker(std::nullopt); }
  static TieBreaker random(std::uint64_t seed) { return TieBreaker(seed); }

  bool is_random() const { return engine_.has_value(); }
  // Picks among tied classes (sorted ascending).
  Label pick(std::span<const Label> tied);

 private:
  explicit TieBreaker(std::optional<std::uint64_t> seed);
  std::optional<std::mt19937_64> engine_;
};

Prediction predict_online_original(const TrainedModel& model, const Pattern& x, TieBreaker& tie);

}  // namespace gfmm
