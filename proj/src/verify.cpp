#include "gfmm/verify.hpp"

#include <algorithm>
#include <array>
#include <random>

#include <json.hpp>

#include "gfmm/agglomerative.hpp"
#include "gfmm/geometry.hpp"
#include "gfmm/kernels.hpp"

namespace gfmm {

namespace {

constexpr std::size_t kMaxSamples = 16;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t trial) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ trial));
}

class Sampler {
 public:
  Sampler(std::mt19937_64& rng, double theta, double gamma) : rng_(rng), theta_(std::min(theta, 1.0)), gamma_(gamma) {}

  double unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_); }
  int pick_case() { return std::uniform_int_distribution<int>(1, 6)(rng_); }

  // Gap between disjoint intervals: concentrated around theta and around the
  // ramp saturation point 1/gamma so both sides of each are exercised.
  double gap() {
    switch (std::uniform_int_distribution<int>(0, 2)(rng_)) {
      case 0:
        return std::min(1.0, 2.0 * theta_ * unit());
      case 1:
        return std::min(1.0, 2.0 / gamma_ * unit());
      default:
        return unit();
    }
  }

  // Width of an interval that must stay within theta; degenerate 30% of the time.
  double bounded_width() { return unit() < 0.3 ? 0.0 : theta_ * unit(); }

  double free_width() { return unit() < 0.5 ? bounded_width() : unit(); }

 private:
  std::mt19937_64& rng_;
  double theta_;
  double gamma_;
};

// Shrinks a relative layout to fit [0,1] if needed and places it at a random
// offset. Order between the coordinates is preserved.
void place(std::span<double* const> coords, double unit_draw) {
  double lo = *coords[0], hi = *coords[0];
  for (double* c : coords) {
    lo = std::min(lo, *c);
    hi = std::max(hi, *c);
  }
  double span = hi - lo;
  const double scale = span > 1.0 ? 1.0 / span : 1.0;
  span *= scale;
  const double offset = std::max(0.0, 1.0 - span) * unit_draw;
  for (double* c : coords) *c = std::clamp((*c - lo) * scale + offset, 0.0, 1.0);
}

nlohmann::json vec(std::span<const double> xs) { return nlohmann::json(std::vector<double>(xs.begin(), xs.end())); }

}  // namespace

OracleReport oracle_lemma1(std::uint64_t trials, std::uint64_t seed, double theta, std::span<const double> gamma) {
  if (gamma.empty()) throw std::invalid_argument("oracle needs at least one gamma");
  HyperparamConfig cfg;
  cfg.theta = theta;
  cfg.gamma.assign(gamma.begin(), gamma.end());
  cfg.validate(gamma.size());
  const double bound = CandidateFilterBound::from(cfg).threshold;
  const std::size_t n = gamma.size();

  OracleReport report;
  report.trials = trials;
  report.seed = seed;
  for (const char* key : {"1", "2", "3", "4", "5", "5.1", "5.2", "6", "6.1", "6.2"}) report.case_coverage[key] = 0;
  for (const char* key : {"1", "2", "3", "4", "5", "6"}) report.case_filtered[key] = 0;

  std::vector<double> xl(n), xu(n), v(n), w(n);
  std::vector<int> cases(n);
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto rng = trial_engine(seed, t);
    for (bool ok = false; !ok;) {
      for (std::size_t j = 0; j < n; ++j) {
        Sampler s(rng, theta, gamma[j]);
        const int c = s.pick_case();
        cases[j] = c;
        const double pw = s.bounded_width();
        double a = 0, b = 0, lo = 0, hi = 0;  // pattern [a,b], box [lo,hi]
        switch (c) {
          case 1:
            a = 0, b = pw, lo = s.unit() * pw, hi = b + s.gap();
            break;
          case 2:
            lo = 0, a = s.gap(), hi = a + s.unit() * pw, b = a + pw;
            break;
          case 3:
            a = 0, b = pw, lo = s.unit() * pw, hi = lo + s.unit() * (pw - lo);
            break;
          case 4:
            lo = 0, a = s.gap(), b = a + pw, hi = b + s.gap();
            break;
          case 5:
            lo = 0, hi = s.free_width(), a = hi + s.gap(), b = a + pw;
            break;
          default:
            a = 0, b = pw, lo = b + s.gap(), hi = lo + s.free_width();
            break;
        }
        const std::array<double*, 4> coords{&a, &b, &lo, &hi};
        place(coords, s.unit());
        xl[j] = a, xu[j] = b, v[j] = lo, w[j] = hi;
      }
      ok = true;
      for (std::size_t j = 0; j < n; ++j) ok = ok && (xu[j] - xl[j] <= theta);
    }

    for (std::size_t j = 0; j < n; ++j) {
      const std::string key = std::to_string(cases[j]);
      ++report.case_coverage[key];
      if (cases[j] == 5) ++report.case_coverage[(xu[j] - w[j]) * gamma[j] > 1.0 ? "5.1" : "5.2"];
      if (cases[j] == 6) ++report.case_coverage[(v[j] - xl[j]) * gamma[j] > 1.0 ? "6.1" : "6.2"];
    }

    const double b = membership_unchecked(xl, xu, v, w, gamma);
    bool violated = false;
    if (b < bound) {
      ++report.filtered;
      if (can_expand_bounds(v, w, xl, xu, theta)) violated = true;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (membership_dim(xl[j], xu[j], v[j], w[j], gamma[j]) < 1.0 - theta * gamma[j]) {
        ++report.case_filtered[std::to_string(cases[j])];
        if (std::max(w[j], xu[j]) - std::min(v[j], xl[j]) <= theta) violated = true;
      }
    }
    if (violated) {
      ++report.violations;
      if (report.violation_samples.size() < kMaxSamples) {
        nlohmann::json j{{"oracle", "lemma1"}, {"seed", seed}, {"trial", t},     {"theta", theta},
                         {"gamma", vec(gamma)}, {"xl", vec(xl)}, {"xu", vec(xu)}, {"v", vec(v)},
                         {"w", vec(w)},         {"membership", b}, {"bound", bound}};
        report.violation_samples.push_back(j.dump());
      }
    }
  }
  return report;
}

OracleReport oracle_lemma2(std::uint64_t trials, std::uint64_t seed, double theta, std::span<const double> gamma,
                           SimilarityMeasure measure) {
  if (gamma.empty()) throw std::invalid_argument("oracle needs at least one gamma");
  HyperparamConfig cfg;
  cfg.theta = theta;
  cfg.gamma.assign(gamma.begin(), gamma.end());
  cfg.sigma = 0.0;
  cfg.validate(gamma.size());
  const double bound = 1.0 - theta * cfg.gamma_max();
  const std::size_t n = gamma.size();

  OracleReport report;
  report.trials = trials;
  report.seed = seed;
  for (const char* key : {"1", "2", "3", "4", "5", "6"}) report.case_coverage[key] = report.case_filtered[key] = 0;

  std::vector<double> vi(n), wi(n), vk(n), wk(n);
  std::vector<int> cases(n);
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto rng = trial_engine(seed, t);
    for (bool ok = false; !ok;) {
      for (std::size_t j = 0; j < n; ++j) {
        Sampler s(rng, theta, gamma[j]);
        const int c = s.pick_case();
        cases[j] = c;
        double a0 = 0, a1 = 0, b0 = 0, b1 = 0;  // first box [a0,a1], second [b0,b1]
        const double wa = s.bounded_width();
        const double th = std::min(theta, 1.0);
        switch (c) {
          case 1:
          case 2:
            a0 = 0, a1 = wa, b0 = s.unit() * wa, b1 = a1 + s.unit() * (b0 + th - a1);
            break;
          case 3:
          case 4:
            b0 = 0, b1 = wa, a0 = b1 + s.gap(), a1 = a0 + s.bounded_width();
            break;
          default:
            b0 = 0, b1 = wa, a0 = s.unit() * wa, a1 = a0 + s.unit() * (b1 - a0);
            break;
        }
        const std::array<double*, 4> coords{&a0, &a1, &b0, &b1};
        place(coords, s.unit());
        // Layouts realise the odd cases with box i first; even cases swap.
        const bool first_is_i = c % 2 == 1;
        if (first_is_i) {
          vi[j] = a0, wi[j] = a1, vk[j] = b0, wk[j] = b1;
        } else {
          vk[j] = a0, wk[j] = a1, vi[j] = b0, wi[j] = b1;
        }
      }
      ok = true;
      for (std::size_t j = 0; j < n; ++j) ok = ok && (wi[j] - vi[j] <= theta) && (wk[j] - vk[j] <= theta);
    }

    for (std::size_t j = 0; j < n; ++j) ++report.case_coverage[std::to_string(cases[j])];

    const double s = similarity_unchecked(vi, wi, vk, wk, gamma, measure);
    bool violated = false;
    if (s < bound) {
      ++report.filtered;
      if (can_expand_bounds(vi, wi, vk, wk, theta)) violated = true;
    }
    for (std::size_t j = 0; j < n; ++j) {
      double sj;
      switch (measure) {
        case SimilarityMeasure::Longest:
          sj = longest_dim(vi[j], wi[j], vk[j], wk[j], gamma[j]);
          break;
        case SimilarityMeasure::Shortest:
          sj = shortest_dim(vi[j], wi[j], vk[j], wk[j], gamma[j]);
          break;
        default:
          sj = std::min(middle_dim(vi[j], wi[j], vk[j], wk[j], gamma[j]),
                        middle_dim(vk[j], wk[j], vi[j], wi[j], gamma[j]));
          break;
      }
      if (sj < 1.0 - theta * gamma[j]) {
        ++report.case_filtered[std::to_string(cases[j])];
        if (std::max(wi[j], wk[j]) - std::min(vi[j], vk[j]) <= theta) violated = true;
      }
    }
    if (violated) {
      ++report.violations;
      if (report.violation_samples.size() < kMaxSamples) {
        nlohmann::json j{{"oracle", "lemma2"},   {"measure", std::string(to_string(measure))},
                         {"seed", seed},         {"trial", t},
                         {"theta", theta},       {"gamma", vec(gamma)},
                         {"vi", vec(vi)},        {"wi", vec(wi)},
                         {"vk", vec(vk)},        {"wk", vec(wk)},
                         {"similarity", s},      {"bound", bound}};
        report.violation_samples.push_back(j.dump());
      }
    }
  }
  return report;
}

EquivalenceReport audit_equivalence(std::span<const Pattern> data, const HyperparamConfig& config, Algorithm algo,
                                    const TrainOptions& accelerated_options) {
  HyperparamConfig on = config;
  on.accelerated = true;
  HyperparamConfig off = config;
  off.accelerated = false;

  EquivalenceReport r;
  r.accelerated = train(data, on, algo, accelerated_options);
  r.plain = train(data, off, algo);
  r.candidates_accelerated = r.accelerated.stats.candidates_considered;
  r.candidates_plain = r.plain.stats.candidates_considered;
  r.divergence = first_box_difference(r.accelerated, r.plain);
  if (!r.divergence && r.candidates_accelerated > r.candidates_plain) {
    r.divergence = "accelerated run considered more candidates (" + std::to_string(r.candidates_accelerated) +
                   " > " + std::to_string(r.candidates_plain) + ")";
  }
  r.passed = !r.divergence.has_value();
  return r;
}

}  // namespace gfmm
