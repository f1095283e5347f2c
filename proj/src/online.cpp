#include "gfmm/online.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "gfmm/geometry.hpp"
#include "gfmm/kernels.hpp"
#include "training_common.hpp"

namespace gfmm {

CandidateFilterBound CandidateFilterBound::from(const HyperparamConfig& config) {
  return {1.0 - config.theta * config.gamma_max()};
}

std::vector<ScoredCandidate> lemma1_filter(std::span<const ScoredCandidate> candidates, CandidateFilterBound bound) {
  std::vector<ScoredCandidate> kept;
  for (const auto& c : candidates) {
    if (bound.keeps(c.membership)) kept.push_back(c);
  }
  return kept;
}

namespace {

bool wider_than(const Pattern& p, double theta) {
  for (std::size_t j = 0; j < p.dims(); ++j) {
    if (p.upper()[j] - p.lower()[j] > theta) return true;
  }
  return false;
}

class OnlineLearner {
 public:
  OnlineLearner(const HyperparamConfig& config, OnlineVariant variant, const TrainOptions& options)
      : config_(config), variant_(variant) {
    bound_ = CandidateFilterBound::from(config_);
    bound_.threshold += options.filter_bias;
  }

  void present(const Pattern& x) {
    const Label label = x.label();
    if (label >= members_.size()) members_.resize(label + 1);

    if (!boxes_.empty() && !wider_than(x, config_.theta) && walk(x)) return;

    members_[label].push_back(boxes_.size());
    boxes_.push_back(box_from_pattern(x));
    ++stats_.boxes_created;
  }

  TrainedModel finish(double seconds) && {
    stats_.train_seconds = seconds;
    return TrainedModel{std::move(boxes_), config_, stats_};
  }

 private:
  // Returns true when the pattern was absorbed by an existing box.
  bool walk(const Pattern& x) {
    const auto& same = members_[x.label()];
    scored_.clear();
    for (std::size_t id : same) {
      const Hyperbox& h = boxes_[id];
      const double b = membership_unchecked(x.lower(), x.upper(), h.vmin(), h.wmax(), config_.gamma);
      if (config_.accelerated && !bound_.keeps(b)) continue;
      scored_.push_back({id, b});
    }
    std::stable_sort(scored_.begin(), scored_.end(),
                     [](const ScoredCandidate& a, const ScoredCandidate& b) { return a.membership > b.membership; });

    for (const auto& c : scored_) {
      ++stats_.candidates_considered;
      Hyperbox& h = boxes_[c.box];
      if (c.membership == 1.0) {
        if (variant_ == OnlineVariant::IOL) h.set_cardinality(h.cardinality() + 1);
        return true;
      }
      if (!can_expand_bounds(h.vmin(), h.wmax(), x.lower(), x.upper(), config_.theta)) continue;

      hull_into(h.vmin(), h.wmax(), x.lower(), x.upper(), tmp_v_, tmp_w_);
      if (variant_ == OnlineVariant::Original) {
        for (auto& other : boxes_) {
          if (other.label() == x.label()) continue;
          const OverlapResult r = overlap_test_bounds(tmp_v_, tmp_w_, other.vmin(), other.wmax());
          if (r.overlaps()) contract_bounds(tmp_v_, tmp_w_, other.vmin(), other.wmax(), r.dim);
        }
      } else if (overlaps_other_class(boxes_, x.label(), tmp_v_, tmp_w_)) {
        continue;
      }
      std::copy(tmp_v_.begin(), tmp_v_.end(), h.vmin().begin());
      std::copy(tmp_w_.begin(), tmp_w_.end(), h.wmax().begin());
      h.set_cardinality(h.cardinality() + 1);
      return true;
    }
    return false;
  }

  HyperparamConfig config_;
  OnlineVariant variant_;
  CandidateFilterBound bound_;
  std::vector<Hyperbox> boxes_;
  std::vector<std::vector<std::size_t>> members_;
  std::vector<ScoredCandidate> scored_;
  std::vector<double> tmp_v_, tmp_w_;
  TrainStats stats_;
};

}  // namespace

TrainedModel train_online(std::span<const Pattern> data, const HyperparamConfig& config, OnlineVariant variant,
                          const TrainOptions& options) {
  const HyperparamConfig cfg = prepare_config(data, config);
  const auto start = std::chrono::steady_clock::now();
  OnlineLearner learner(cfg, variant, options);
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    for (const auto& x : data) learner.present(x);
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  return std::move(learner).finish(elapsed.count());
}

}  // namespace gfmm
