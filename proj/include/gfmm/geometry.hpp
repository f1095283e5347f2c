#pragma once

#include <span>
#include <utility>

#include "gfmm/core.hpp"

namespace gfmm {

// Result of the four-case overlap scan. dim is -1 when the boxes do not
// overlap; otherwise it is the first dimension with the smallest overlap
// width delta.
struct OverlapResult {
  int dim = -1;
  double delta = 1.0;

  bool overlaps() const { return dim >= 0; }
};

// Hull of [v,w] and [xl,xu] fits within theta on every dimension.
inline bool can_expand_bounds(std::span<const double> v, std::span<const double> w, std::span<const double> xl,
                              std::span<const double> xu, double theta) {
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double hi = w[j] > xu[j] ? w[j] : xu[j];
    const double lo = v[j] < xl[j] ? v[j] : xl[j];
    if (!(hi - lo <= theta)) return false;
  }
  return true;
}

bool can_expand(const Hyperbox& h, const Pattern& p, double theta);
// Same bound for merging two boxes.
bool can_merge(const Hyperbox& a, const Hyperbox& b, double theta);

// Componentwise hull of h and p; label kept, cardinality + 1. Does not check
// the theta bound.
Hyperbox expand(const Hyperbox& h, const Pattern& p);

// Componentwise hull of two boxes, label of a, cardinalities summed.
Hyperbox merge(const Hyperbox& a, const Hyperbox& b);

OverlapResult overlap_test_bounds(std::span<const double> va, std::span<const double> wa, std::span<const double> vb,
                                  std::span<const double> wb);
OverlapResult overlap_test(const Hyperbox& a, const Hyperbox& b);

// Removes the overlap of a and b on dimension `dim` by the contraction rule
// matching the positional case found there. Throws std::logic_error if dim is
// out of range or no overlap case holds at dim.
void contract_bounds(std::span<double> va, std::span<double> wa, std::span<double> vb, std::span<double> wb, int dim);
std::pair<Hyperbox, Hyperbox> contract(const Hyperbox& a, const Hyperbox& b, int dim);

}  // namespace gfmm
