#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gfmm/core.hpp"
#include "gfmm/online.hpp"
#include "gfmm/train.hpp"

namespace gfmm {

// Outcome of a randomized pruning-bound oracle.
//
// Positional cases are tallied per sampled dimension. For the expansion
// oracle the cases describe pattern X=[xl,xu] against box [v,w]:
//   1: xl<=v<=xu<=w   2: v<=xl<=w<=xu   3: xl<=v<=w<=xu
//   4: v<=xl<=xu<=w   5: v<=w<=xl<=xu   6: xl<=xu<=v<=w
// with 5.1/6.1 the sub-cases where the gap saturates the ramp (gap*gamma > 1)
// and 5.2/6.2 the linear ones. For the merge oracle they describe box i
// against box k:
//   1: vi<=vk<=wi<=wk  2: vk<=vi<=wk<=wi  3: vk<=wk<=vi<=wi
//   4: vi<=wi<=vk<=wk  5: vk<=vi<=wi<=wk  6: vi<=vk<=wk<=wi
struct OracleReport {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  // Trials whose score fell below the pruning bound.
  std::uint64_t filtered = 0;
  // Pruned trials that nevertheless satisfy the theta bound, plus dimensions
  // whose per-dimension score fell below 1 - theta*gamma_j while the hull
  // stayed within theta on that dimension.
  std::uint64_t violations = 0;
  std::map<std::string, std::uint64_t> case_coverage;
  // Per case: dimensions whose own score fell below 1 - theta*gamma_j.
  std::map<std::string, std::uint64_t> case_filtered;
  // Reproduction data (JSON text) for the first few violations.
  std::vector<std::string> violation_samples;
};

// Random (box, pattern) pairs with pattern widths <= theta; gamma.size() sets
// the dimensionality. Per-trial generators are seeded from (seed, trial), so
// results do not depend on evaluation order.
OracleReport oracle_lemma1(std::uint64_t trials, std::uint64_t seed, double theta, std::span<const double> gamma);

// Random same-class box pairs, both with widths <= theta.
OracleReport oracle_lemma2(std::uint64_t trials, std::uint64_t seed, double theta, std::span<const double> gamma,
                           SimilarityMeasure measure);

struct EquivalenceReport {
  bool passed = false;
  std::optional<std::string> divergence;
  std::uint64_t candidates_accelerated = 0;
  std::uint64_t candidates_plain = 0;
  TrainedModel accelerated;
  TrainedModel plain;
};

// Trains with acceleration on and off and compares the box sequences
// field by field. `accelerated_options` applies to the accelerated run only.
EquivalenceReport audit_equivalence(std::span<const Pattern> data, const HyperparamConfig& config, Algorithm algo,
                                    const TrainOptions& accelerated_options = {});

}  // namespace gfmm
