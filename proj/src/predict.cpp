#include "gfmm/predict.hpp"

#include <algorithm>
#include <stdexcept>

#include "gfmm/kernels.hpp"

namespace gfmm {

namespace {

void require_usable(const TrainedModel& model, const Pattern& x) {
  if (model.boxes.empty()) throw std::domain_error("model has no hyperboxes");
  if (x.dims() != model.dims()) {
    throw std::domain_error("pattern has " + std::to_string(x.dims()) + " dimensions, model has " +
                            std::to_string(model.dims()));
  }
  if (model.config.gamma.size() != model.dims()) throw std::domain_error("model gamma does not match box dimensions");
}

std::vector<double> box_memberships(const TrainedModel& model, const Pattern& x) {
  std::vector<double> b;
  b.reserve(model.boxes.size());
  for (const auto& h : model.boxes) {
    b.push_back(membership_unchecked(x.lower(), x.upper(), h.vmin(), h.wmax(), model.config.gamma));
  }
  return b;
}

std::vector<Label> top_classes(const std::vector<double>& scores, double top) {
  std::vector<Label> tied;
  for (Label c = 0; c < scores.size(); ++c) {
    if (scores[c] == top) tied.push_back(c);
  }
  return tied;
}

}  // namespace

ClassScores class_scores(const TrainedModel& model, const Pattern& x) {
  require_usable(model, x);
  ClassScores out;
  out.scores.assign(model.class_count(), 0.0);
  const auto b = box_memberships(model, x);
  for (std::size_t i = 0; i < b.size(); ++i) {
    double& s = out.scores[model.boxes[i].label()];
    s = std::max(s, b[i]);
  }
  double top = -1.0;
  for (Label c = 0; c < out.scores.size(); ++c) {
    if (out.scores[c] > top) {
      top = out.scores[c];
      out.winner = c;
    }
  }
  out.tie_broken = top_classes(out.scores, top).size() > 1;
  return out;
}

std::vector<double> tie_posteriors(const TrainedModel& model, const Pattern& x) {
  require_usable(model, x);
  const auto b = box_memberships(model, x);
  const double b_win = *std::max_element(b.begin(), b.end());

  std::vector<double> num(model.class_count(), 0.0);
  double den = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i] != b_win) continue;
    const double weight = static_cast<double>(model.boxes[i].cardinality()) * b[i];
    num[model.boxes[i].label()] += weight;
    den += weight;
  }
  if (den == 0.0) {
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (b[i] != b_win) continue;
      const double weight = static_cast<double>(model.boxes[i].cardinality());
      num[model.boxes[i].label()] += weight;
      den += weight;
    }
  }
  for (double& p : num) p /= den;
  return num;
}

Prediction predict_iol(const TrainedModel& model, const Pattern& x) {
  const ClassScores cs = class_scores(model, x);
  const double b_win = cs.scores[cs.winner];
  Prediction out{cs.winner, b_win, cs.tie_broken};
  if (!cs.tie_broken) return out;

  if (b_win == 1.0) {
    for (const auto& h : model.boxes) {
      if (h.cardinality() != 1) continue;
      if (membership_unchecked(x.lower(), x.upper(), h.vmin(), h.wmax(), model.config.gamma) == 1.0) {
        out.label = h.label();
        return out;
      }
    }
  }
  const auto p = tie_posteriors(model, x);
  Label best = 0;
  for (Label c = 1; c < p.size(); ++c) {
    if (p[c] > p[best]) best = c;
  }
  out.label = best;
  return out;
}

TieBreaker::TieBreaker(std::optional<std::uint64_t> seed) {
  if (seed) engine_.emplace(*seed);
}

Label TieBreaker::pick(std::span<const Label> tied) {
  if (tied.empty()) throw std::logic_error("no tied classes to pick from");
  if (!engine_) return tied.front();
  std::uniform_int_distribution<std::size_t> dist(0, tied.size() - 1);
  return tied[dist(*engine_)];
}

Prediction predict_online_original(const TrainedModel& model, const Pattern& x, TieBreaker& tie) {
  const ClassScores cs = class_scores(model, x);
  const double top = cs.scores[cs.winner];
  Prediction out{cs.winner, top, cs.tie_broken};
  if (cs.tie_broken) {
    const auto tied = top_classes(cs.scores, top);
    out.label = tie.pick(tied);
  }
  return out;
}

}  // namespace gfmm
