#include "gfmm/agglomerative.hpp"

#include <algorithm>
#include <chrono>

#include "gfmm/geometry.hpp"
#include "gfmm/kernels.hpp"
#include "training_common.hpp"

namespace gfmm {

double lemma2_bound(const HyperparamConfig& config) {
  return std::max(config.sigma, 1.0 - config.theta * config.gamma_max());
}

namespace {

using Clock = std::chrono::steady_clock;

double pair_threshold(const HyperparamConfig& cfg, const TrainOptions& options) {
  return cfg.accelerated ? lemma2_bound(cfg) + options.filter_bias : cfg.sigma;
}

// Boxes addressed by their initial index; merged-away boxes are marked dead
// so indices stay stable and their order is the list order. The bounds are
// mirrored in one contiguous array ([v, w] per box) for the similarity scans.
class BoxPool {
 public:
  explicit BoxPool(std::span<const Pattern> data) : dims_(data.front().dims()) {
    boxes_.reserve(data.size());
    bounds_.reserve(data.size() * 2 * dims_);
    for (const auto& p : data) {
      if (p.label() >= members_.size()) members_.resize(p.label() + 1);
      members_[p.label()].push_back(boxes_.size());
      boxes_.push_back(box_from_pattern(p));
      bounds_.insert(bounds_.end(), p.lower().begin(), p.lower().end());
      bounds_.insert(bounds_.end(), p.upper().begin(), p.upper().end());
    }
    alive_.assign(boxes_.size(), true);
  }

  std::span<const double> v(std::size_t id) const { return {bounds_.data() + id * 2 * dims_, dims_}; }
  std::span<const double> w(std::size_t id) const { return {bounds_.data() + id * 2 * dims_ + dims_, dims_}; }

  std::size_t size() const { return boxes_.size(); }
  bool alive(std::size_t id) const { return alive_[id]; }
  const Hyperbox& box(std::size_t id) const { return boxes_[id]; }
  const std::vector<std::size_t>& members(Label label) const { return members_[label]; }
  std::size_t class_count() const { return members_.size(); }

  bool hull_overlaps_other_class(Label label, std::span<const double> v, std::span<const double> w) const {
    for (Label c = 0; c < members_.size(); ++c) {
      if (c == label) continue;
      for (std::size_t id : members_[c]) {
        if (overlap_test_bounds(v, w, this->v(id), this->w(id)).overlaps()) return true;
      }
    }
    return false;
  }

  // Box i takes the hull [v,w] and absorbs the cardinality of k; k dies.
  void absorb(std::size_t i, std::size_t k, std::span<const double> v, std::span<const double> w) {
    Hyperbox& bi = boxes_[i];
    std::copy(v.begin(), v.end(), bi.vmin().begin());
    std::copy(w.begin(), w.end(), bi.wmax().begin());
    std::copy(v.begin(), v.end(), bounds_.begin() + static_cast<std::ptrdiff_t>(i * 2 * dims_));
    std::copy(w.begin(), w.end(), bounds_.begin() + static_cast<std::ptrdiff_t>(i * 2 * dims_ + dims_));
    bi.set_cardinality(bi.cardinality() + boxes_[k].cardinality());
    alive_[k] = false;
    auto& list = members_[boxes_[k].label()];
    list.erase(std::find(list.begin(), list.end(), k));
  }

  std::vector<Hyperbox> survivors() && {
    std::vector<Hyperbox> out;
    for (std::size_t id = 0; id < boxes_.size(); ++id) {
      if (alive_[id]) out.push_back(std::move(boxes_[id]));
    }
    return out;
  }

 private:
  std::size_t dims_;
  std::vector<Hyperbox> boxes_;
  std::vector<double> bounds_;
  std::vector<bool> alive_;
  std::vector<std::vector<std::size_t>> members_;
};

// Every live same-class box k != i whose similarity to i reaches the
// threshold, in list order.
void collect_partners(const BoxPool& pool, std::size_t i, const HyperparamConfig& cfg, double threshold,
                      std::vector<CandidatePair>& partners) {
  partners.clear();
  const double* vi = pool.v(i).data();
  const double* wi = pool.w(i).data();
  const double* gamma = cfg.gamma.data();
  const std::size_t n = cfg.gamma.size();
  detail::with_measure(cfg.measure, [&]<SimilarityMeasure M>() {
    for (std::size_t k : pool.members(pool.box(i).label())) {
      if (k == i) continue;
      const double s =
          detail::from_excess(detail::similarity_excess<M>(vi, wi, pool.v(k).data(), pool.w(k).data(), gamma, n));
      if (s >= threshold) partners.push_back({i, k, s});
    }
  });
}

// Tries to merge i with k; returns false when theta or the overlap veto
// rejects the pair.
bool try_merge(BoxPool& pool, std::size_t i, std::size_t k, double theta, std::vector<double>& v,
               std::vector<double>& w) {
  const Hyperbox& bi = pool.box(i);
  const Hyperbox& bk = pool.box(k);
  if (!can_expand_bounds(bi.vmin(), bi.wmax(), bk.vmin(), bk.wmax(), theta)) return false;
  hull_into(bi.vmin(), bi.wmax(), bk.vmin(), bk.wmax(), v, w);
  if (pool.hull_overlaps_other_class(bi.label(), v, w)) return false;
  pool.absorb(i, k, v, w);
  return true;
}

bool by_similarity_then_index(const CandidatePair& a, const CandidatePair& b) {
  if (a.s != b.s) return a.s > b.s;
  if (a.i != b.i) return a.i < b.i;
  return a.k < b.k;
}

// Per-class upper-triangular similarity matrix over the class's initial
// members, addressed by local index.
class ClassSimilarity {
 public:
  ClassSimilarity(std::vector<std::size_t> ids) : ids_(std::move(ids)), n_(ids_.size()), s_(n_ * (n_ - (n_ > 0)) / 2) {}

  std::size_t size() const { return n_; }
  std::size_t id(std::size_t local) const { return ids_[local]; }
  double& at(std::size_t a, std::size_t b) { return s_[index(a, b)]; }
  double at(std::size_t a, std::size_t b) const { return s_[index(a, b)]; }

 private:
  std::size_t index(std::size_t a, std::size_t b) const {
    if (a > b) std::swap(a, b);
    return a * n_ - a * (a + 1) / 2 + (b - a - 1);
  }

  std::vector<std::size_t> ids_;
  std::size_t n_;
  std::vector<double> s_;
};

double pair_similarity(const BoxPool& pool, std::size_t i, std::size_t k, const HyperparamConfig& cfg) {
  return similarity_unchecked(pool.v(i), pool.w(i), pool.v(k), pool.w(k), cfg.gamma, cfg.measure);
}

}  // namespace

TrainedModel train_agglo_sm(std::span<const Pattern> data, const HyperparamConfig& config,
                            const TrainOptions& options) {
  const HyperparamConfig cfg = prepare_config(data, config);
  const auto start = Clock::now();
  const double threshold = pair_threshold(cfg, options);

  BoxPool pool(data);
  TrainStats stats;
  stats.boxes_created = pool.size();

  std::vector<ClassSimilarity> matrices;
  std::vector<std::size_t> local_of(pool.size());
  for (Label c = 0; c < pool.class_count(); ++c) {
    matrices.emplace_back(pool.members(c));
    auto& m = matrices.back();
    for (std::size_t a = 0; a < m.size(); ++a) {
      local_of[m.id(a)] = a;
      for (std::size_t b = a + 1; b < m.size(); ++b) m.at(a, b) = pair_similarity(pool, m.id(a), m.id(b), cfg);
    }
  }

  std::vector<CandidatePair> pairs;
  std::vector<double> v, w;
  for (bool merged = true; merged;) {
    merged = false;
    pairs.clear();
    for (const auto& m : matrices) {
      for (std::size_t a = 0; a < m.size(); ++a) {
        if (!pool.alive(m.id(a))) continue;
        for (std::size_t b = a + 1; b < m.size(); ++b) {
          if (!pool.alive(m.id(b))) continue;
          const double s = m.at(a, b);
          if (s >= threshold) pairs.push_back({m.id(a), m.id(b), s});
        }
      }
    }
    std::sort(pairs.begin(), pairs.end(), by_similarity_then_index);

    for (const auto& p : pairs) {
      ++stats.candidates_considered;
      if (!try_merge(pool, p.i, p.k, cfg.theta, v, w)) continue;
      ++stats.merges_performed;
      auto& m = matrices[pool.box(p.i).label()];
      const std::size_t a = local_of[p.i];
      for (std::size_t b = 0; b < m.size(); ++b) {
        if (b != a && pool.alive(m.id(b))) m.at(a, b) = pair_similarity(pool, p.i, m.id(b), cfg);
      }
      merged = true;
      break;
    }
  }

  const std::chrono::duration<double> elapsed = Clock::now() - start;
  stats.train_seconds = elapsed.count();
  return TrainedModel{std::move(pool).survivors(), cfg, stats};
}

TrainedModel train_agglo_2(std::span<const Pattern> data, const HyperparamConfig& config,
                           const TrainOptions& options) {
  const HyperparamConfig cfg = prepare_config(data, config);
  const auto start = Clock::now();
  const double threshold = pair_threshold(cfg, options);

  BoxPool pool(data);
  TrainStats stats;
  stats.boxes_created = pool.size();

  std::vector<CandidatePair> partners;
  std::vector<double> v, w;
  for (bool merged_any = true; merged_any;) {
    merged_any = false;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (!pool.alive(i)) continue;
      collect_partners(pool, i, cfg, threshold, partners);
      std::stable_sort(partners.begin(), partners.end(),
                       [](const CandidatePair& a, const CandidatePair& b) { return a.s > b.s; });
      for (const auto& p : partners) {
        ++stats.candidates_considered;
        if (!try_merge(pool, i, p.k, cfg.theta, v, w)) continue;
        ++stats.merges_performed;
        merged_any = true;
        break;
      }
    }
  }

  const std::chrono::duration<double> elapsed = Clock::now() - start;
  stats.train_seconds = elapsed.count();
  return TrainedModel{std::move(pool).survivors(), cfg, stats};
}

}  // namespace gfmm
