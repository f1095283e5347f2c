#pragma once

#include <span>

#include "gfmm/core.hpp"
#include "gfmm/online.hpp"

namespace gfmm {

// A same-class pair of hyperboxes, i < k by position in the current box list.
struct CandidatePair {
  std::size_t i;
  std::size_t k;
  double s;
};

// max(sigma, 1 - theta * gamma_max): no pair below it can merge within theta.
double lemma2_bound(const HyperparamConfig& config);

// Both learners start from one box per pattern and merge same-class pairs
// whose hull fits within theta and overlaps no box of another class. Pairs
// are taken by descending similarity; equal similarities go to the lower
// (i, k). With config.accelerated pairs below lemma2_bound are skipped,
// otherwise pairs below sigma.

// Full similarity matrix variant, maintained incrementally after each merge.
TrainedModel train_agglo_sm(std::span<const Pattern> data, const HyperparamConfig& config,
                            const TrainOptions& options = {});

// Cursor variant: each box in turn merges with its most similar admissible
// partner; repeats until a full sweep merges nothing.
TrainedModel train_agglo_2(std::span<const Pattern> data, const HyperparamConfig& config,
                           const TrainOptions& options = {});

}  // namespace gfmm
