#pragma once

#include <span>
#include <vector>

#include "gfmm/core.hpp"

namespace gfmm {

enum class OnlineVariant { Original, IOL };

// Lower bound on the membership of any hyperbox that can still be expanded
// to cover a pattern of width <= theta: 1 - theta * gamma_max.
struct CandidateFilterBound {
  double threshold;

  static CandidateFilterBound from(const HyperparamConfig& config);
  bool keeps(double membership) const { return membership >= threshold; }
};

struct ScoredCandidate {
  std::size_t box;
  double membership;
};

// Keeps the candidates whose membership reaches the bound, in input order.
std::vector<ScoredCandidate> lemma1_filter(std::span<const ScoredCandidate> candidates, CandidateFilterBound bound);

// Knobs that exist only for testing the equivalence auditor.
struct TrainOptions {
  // Added to the pruning threshold. Anything other than 0 breaks the lemma
  // guarantee; used to inject faults.
  double filter_bias = 0.0;
};

// Single-pass (x epochs) incremental training. With config.accelerated the
// same-class candidates are pruned by CandidateFilterBound before sorting.
// A gamma of length 1 is broadcast to the data dimensionality.
TrainedModel train_online(std::span<const Pattern> data, const HyperparamConfig& config, OnlineVariant variant,
                          const TrainOptions& options = {});

}  // namespace gfmm
