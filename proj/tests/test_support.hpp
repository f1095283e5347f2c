#pragma once

// Shared fixtures for the unit and acceptance tests: synthetic data
// generators, bundled dataset lookup, and the cross-class overlap audit.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "gfmm/core.hpp"
#include "gfmm/dataio.hpp"
#include "gfmm/geometry.hpp"

namespace gfmm::testing {

inline std::filesystem::path data_dir() { return GFMM_DATA_DIR; }

inline std::vector<std::filesystem::path> bundled_datasets() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(data_dir())) {
    if (e.path().extension() == ".csv") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct SyntheticSpec {
  std::size_t samples = 100;
  std::size_t dims = 2;
  std::size_t classes = 2;
  // Snap coordinates to multiples of this step (0 = continuous). Coarse grids
  // produce exact ties and hulls landing exactly on theta.
  double grid = 0.0;
  // Cluster spread; small values give many same-class neighbours within theta.
  double spread = 0.05;
  // Fraction of patterns that are intervals (width <= max_width) rather than points.
  double interval_fraction = 0.0;
  double max_width = 0.1;
  // Fraction of patterns that duplicate an earlier one (same class).
  double duplicate_fraction = 0.0;
};

inline double snap(double x, double grid) {
  if (grid <= 0.0) return x;
  return std::clamp(std::round(x / grid) * grid, 0.0, 1.0);
}

// Gaussian clusters (two per class) clamped into the unit cube.
inline std::vector<Pattern> make_synthetic(const SyntheticSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, spec.spread);

  std::vector<std::vector<double>> centres(spec.classes * 2, std::vector<double>(spec.dims));
  for (auto& c : centres) {
    for (double& x : c) x = unit(rng);
  }

  std::vector<Pattern> out;
  out.reserve(spec.samples);
  for (std::size_t s = 0; s < spec.samples; ++s) {
    if (!out.empty() && unit(rng) < spec.duplicate_fraction) {
      out.push_back(out[std::uniform_int_distribution<std::size_t>(0, out.size() - 1)(rng)]);
      continue;
    }
    const Label label = static_cast<Label>(s % spec.classes);
    const auto& centre = centres[label * 2 + (unit(rng) < 0.5 ? 0 : 1)];
    std::vector<double> lo(spec.dims), hi(spec.dims);
    const bool interval = unit(rng) < spec.interval_fraction;
    for (std::size_t j = 0; j < spec.dims; ++j) {
      lo[j] = snap(std::clamp(centre[j] + noise(rng), 0.0, 1.0), spec.grid);
      hi[j] = lo[j];
      if (interval) hi[j] = std::min(1.0, snap(lo[j] + spec.max_width * unit(rng), spec.grid));
      if (hi[j] - lo[j] > spec.max_width) hi[j] = lo[j];
    }
    out.emplace_back(std::move(lo), std::move(hi), label);
  }
  return out;
}

// The i-th of the seeded synthetic sets used by the equivalence checks.
inline std::vector<Pattern> synthetic_case(std::uint64_t i) {
  std::mt19937_64 rng(0x5eed0000 + i);
  SyntheticSpec spec;
  spec.samples = std::uniform_int_distribution<std::size_t>(20, 160)(rng);
  spec.dims = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
  spec.classes = std::uniform_int_distribution<std::size_t>(2, 4)(rng);
  const double grids[] = {0.0, 0.0, 0.05, 0.1, 0.025};
  spec.grid = grids[i % 5];
  spec.spread = std::uniform_real_distribution<double>(0.01, 0.2)(rng);
  spec.interval_fraction = (i % 3 == 0) ? 0.3 : 0.0;
  spec.duplicate_fraction = (i % 4 == 0) ? 0.1 : 0.0;
  return make_synthetic(spec, 0xda7a0000 + i);
}

struct OverlapAudit {
  // Cross-class pairs (model indices) that overlap.
  std::vector<std::pair<std::size_t, std::size_t>> violations;
  // Coincident degenerate boxes of different classes; permitted, recorded.
  std::vector<std::pair<std::size_t, std::size_t>> exceptions;
};

inline bool coincident_points(const Hyperbox& a, const Hyperbox& b) {
  for (std::size_t j = 0; j < a.dims(); ++j) {
    if (a.vmin()[j] != a.wmax()[j] || b.vmin()[j] != b.wmax()[j] || a.vmin()[j] != b.vmin()[j]) return false;
  }
  return true;
}

inline OverlapAudit audit_cross_class_overlap(const std::vector<Hyperbox>& boxes) {
  OverlapAudit audit;
  for (std::size_t a = 0; a < boxes.size(); ++a) {
    for (std::size_t b = a + 1; b < boxes.size(); ++b) {
      if (boxes[a].label() == boxes[b].label()) continue;
      if (coincident_points(boxes[a], boxes[b])) {
        audit.exceptions.emplace_back(a, b);
      } else if (overlap_test(boxes[a], boxes[b]).dim != -1) {
        audit.violations.emplace_back(a, b);
      }
    }
  }
  return audit;
}

inline std::uint64_t total_cardinality(const std::vector<Hyperbox>& boxes) {
  std::uint64_t n = 0;
  for (const auto& h : boxes) n += h.cardinality();
  return n;
}

// Two random boxes that overlap under the strict four-case test. Each
// dimension is drawn from one of the four overlap layouts; a fraction of the
// coordinates is snapped to a coarse grid to produce ties and equal widths.
inline std::pair<Hyperbox, Hyperbox> random_overlapping_pair(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (;;) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    const double grid = unit(rng) < 0.3 ? 0.05 : 0.0;
    std::vector<double> va(n), wa(n), vb(n), wb(n);
    for (std::size_t j = 0; j < n; ++j) {
      double p[4];
      for (double& x : p) x = snap(unit(rng), grid);
      std::sort(p, p + 4);
      switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
        case 0:  // a starts first, b ends last
          va[j] = p[0], vb[j] = p[1], wa[j] = p[2], wb[j] = p[3];
          break;
        case 1:
          vb[j] = p[0], va[j] = p[1], wb[j] = p[2], wa[j] = p[3];
          break;
        case 2:  // b inside a, possibly degenerate
          va[j] = p[0], vb[j] = p[1], wb[j] = unit(rng) < 0.2 ? p[1] : p[2], wa[j] = p[3];
          break;
        default:
          vb[j] = p[0], va[j] = p[1], wa[j] = unit(rng) < 0.2 ? p[1] : p[2], wb[j] = p[3];
          break;
      }
    }
    if (overlap_test_bounds(va, wa, vb, wb).dim == -1) continue;  // coincident grid values
    return {Hyperbox(std::move(va), std::move(wa), 0), Hyperbox(std::move(vb), std::move(wb), 1)};
  }
}

// Independent scalar re-implementation of the kernels, written branch by
// branch from the piecewise definitions.
namespace reference {

inline double ramp(double z, double g) {
  const double zg = z * g;
  if (zg > 1.0) return 1.0;
  if (zg >= 0.0) return zg;
  return 0.0;
}

inline double membership(const std::vector<double>& xl, const std::vector<double>& xu, const std::vector<double>& v,
                         const std::vector<double>& w, const std::vector<double>& g) {
  double b = 1.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double above = 1.0 - ramp(xu[j] - w[j], g[j]);
    const double below = 1.0 - ramp(v[j] - xl[j], g[j]);
    if (above < b) b = above;
    if (below < b) b = below;
  }
  return b;
}

inline double longest(const std::vector<double>& va, const std::vector<double>& wa, const std::vector<double>& vb,
                      const std::vector<double>& wb, const std::vector<double>& g) {
  double s = 1.0;
  for (std::size_t j = 0; j < va.size(); ++j) {
    s = std::min(s, 1.0 - ramp(wb[j] - va[j], g[j]));
    s = std::min(s, 1.0 - ramp(wa[j] - vb[j], g[j]));
  }
  return s;
}

inline double shortest(const std::vector<double>& va, const std::vector<double>& wa, const std::vector<double>& vb,
                       const std::vector<double>& wb, const std::vector<double>& g) {
  double s = 1.0;
  for (std::size_t j = 0; j < va.size(); ++j) {
    s = std::min(s, 1.0 - ramp(vb[j] - wa[j], g[j]));
    s = std::min(s, 1.0 - ramp(va[j] - wb[j], g[j]));
  }
  return s;
}

inline double middle(const std::vector<double>& va, const std::vector<double>& wa, const std::vector<double>& vb,
                     const std::vector<double>& wb, const std::vector<double>& g) {
  double s = 1.0;
  for (std::size_t j = 0; j < va.size(); ++j) {
    s = std::min(s, 1.0 - ramp(wb[j] - wa[j], g[j]));
    s = std::min(s, 1.0 - ramp(va[j] - vb[j], g[j]));
  }
  return s;
}

}  // namespace reference

}  // namespace gfmm::testing
