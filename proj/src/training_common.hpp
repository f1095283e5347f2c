#pragma once

// Helpers shared by the learners; not part of the public interface.

#include <algorithm>
#include <span>
#include <stdexcept>
#include <vector>

#include "gfmm/core.hpp"
#include "gfmm/geometry.hpp"

namespace gfmm {

// Validates the training set and returns the config with gamma broadcast to
// the data dimensionality.
inline HyperparamConfig prepare_config(std::span<const Pattern> data, const HyperparamConfig& config) {
  if (data.empty()) throw std::domain_error("training data is empty");
  const std::size_t n = data.front().dims();
  for (const auto& p : data) {
    if (p.dims() != n) throw std::domain_error("training patterns have inconsistent dimensionality");
  }
  HyperparamConfig cfg = config;
  cfg.gamma = broadcast_gamma(config.gamma, n);
  cfg.validate(n);
  return cfg;
}

inline void hull_into(std::span<const double> va, std::span<const double> wa, std::span<const double> vb,
                      std::span<const double> wb, std::vector<double>& v, std::vector<double>& w) {
  v.resize(va.size());
  w.resize(va.size());
  for (std::size_t j = 0; j < va.size(); ++j) {
    v[j] = std::min(va[j], vb[j]);
    w[j] = std::max(wa[j], wb[j]);
  }
}

// True if [v,w] overlaps any box whose label differs from `label`.
inline bool overlaps_other_class(const std::vector<Hyperbox>& boxes, Label label, std::span<const double> v,
                                 std::span<const double> w) {
  for (const auto& other : boxes) {
    if (other.label() == label) continue;
    if (overlap_test_bounds(v, w, other.vmin(), other.wmax()).overlaps()) return true;
  }
  return false;
}

}  // namespace gfmm
