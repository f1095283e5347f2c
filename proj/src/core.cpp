#include "gfmm/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gfmm {

void check_bounds(std::span<const double> lower, std::span<const double> upper, std::string_view what) {
  if (lower.empty()) {
    throw std::domain_error(std::string(what) + ": needs at least one dimension");
  }
  if (lower.size() != upper.size()) {
    throw std::domain_error(std::string(what) + ": lower/upper length mismatch");
  }
  for (std::size_t j = 0; j < lower.size(); ++j) {
    const double lo = lower[j];
    const double hi = upper[j];
    if (!(lo >= 0.0 && lo <= 1.0) || !(hi >= 0.0 && hi <= 1.0)) {
      std::ostringstream os;
      os << what << ": coordinate " << j << " outside [0,1] (" << lo << ", " << hi << ")";
      throw std::domain_error(os.str());
    }
    if (lo > hi) {
      std::ostringstream os;
      os << what << ": lower > upper at dimension " << j;
      throw std::domain_error(os.str());
    }
  }
}

Pattern::Pattern(std::vector<double> lower, std::vector<double> upper, Label label)
    : lower_(std::move(lower)), upper_(std::move(upper)), label_(label) {
  check_bounds(lower_, upper_, "pattern");
}

Pattern make_point_pattern(std::vector<double> coords, Label label) {
  std::vector<double> upper = coords;
  return Pattern(std::move(coords), std::move(upper), label);
}

Hyperbox::Hyperbox(std::vector<double> vmin, std::vector<double> wmax, Label label, std::uint64_t cardinality)
    : vmin_(std::move(vmin)), wmax_(std::move(wmax)), label_(label), cardinality_(cardinality) {
  check_bounds(vmin_, wmax_, "hyperbox");
  if (cardinality_ == 0) {
    throw std::domain_error("hyperbox: cardinality must be >= 1");
  }
}

void Hyperbox::set_cardinality(std::uint64_t n) {
  if (n == 0) {
    throw std::domain_error("hyperbox: cardinality must be >= 1");
  }
  cardinality_ = n;
}

Hyperbox box_from_pattern(const Pattern& p) {
  return Hyperbox({p.lower().begin(), p.lower().end()}, {p.upper().begin(), p.upper().end()}, p.label(), 1);
}

std::string_view to_string(SimilarityMeasure m) {
  switch (m) {
    case SimilarityMeasure::Longest:
      return "longest";
    case SimilarityMeasure::Shortest:
      return "shortest";
    case SimilarityMeasure::MidMax:
      return "mid-max";
    case SimilarityMeasure::MidMin:
      return "mid-min";
  }
  return "?";
}

SimilarityMeasure parse_measure(std::string_view name) {
  for (auto m : {SimilarityMeasure::Longest, SimilarityMeasure::Shortest, SimilarityMeasure::MidMax,
                 SimilarityMeasure::MidMin}) {
    if (to_string(m) == name) return m;
  }
  throw std::invalid_argument("unknown similarity measure '" + std::string(name) + "'");
}

double HyperparamConfig::gamma_max() const {
  if (gamma.empty()) throw std::invalid_argument("gamma is empty");
  return *std::max_element(gamma.begin(), gamma.end());
}

void HyperparamConfig::validate(std::size_t dims) const {
  if (!(theta > 0.0 && theta <= 1.0)) {
    throw std::invalid_argument("theta must lie in (0,1]");
  }
  if (gamma.empty()) throw std::invalid_argument("gamma is empty");
  for (double g : gamma) {
    if (!(g > 0.0) || !std::isfinite(g)) throw std::invalid_argument("every gamma must be > 0");
  }
  if (!(sigma >= 0.0 && sigma <= 1.0)) {
    throw std::invalid_argument("sigma must lie in [0,1]");
  }
  if (epochs < 1) throw std::invalid_argument("epochs must be >= 1");
  if (dims > 0 && gamma.size() != dims) {
    throw std::invalid_argument("gamma has " + std::to_string(gamma.size()) + " entries, data has " +
                                std::to_string(dims) + " dimensions");
  }
}

std::vector<double> broadcast_gamma(std::span<const double> gamma, std::size_t n) {
  if (gamma.size() == 1) return std::vector<double>(n, gamma.front());
  return {gamma.begin(), gamma.end()};
}

std::size_t TrainedModel::class_count() const {
  std::size_t count = 0;
  for (const auto& b : boxes) count = std::max<std::size_t>(count, b.label() + 1);
  return count;
}

}  // namespace gfmm
