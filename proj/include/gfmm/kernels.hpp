#pragma once

#include <algorithm>
#include <span>

#include "gfmm/core.hpp"

namespace gfmm {

// Clamped linear decay: 0 below zero, z*g on [0,1], 1 above. Both ends of
// the middle branch are closed.
inline double ramp(double z, double g) {
  const double zg = z * g;
  if (zg > 1.0) return 1.0;
  if (zg >= 0.0) return zg;
  return 0.0;
}

// Membership of the interval [xl, xu] in [v, w] along one dimension.
inline double membership_dim(double xl, double xu, double v, double w, double g) {
  return std::min(1.0 - ramp(xu - w, g), 1.0 - ramp(v - xl, g));
}

namespace detail {

// Every kernel is a minimum of terms 1 - ramp(z_j, g_j). The ramp is
// monotone and so is 1 - x under rounding, so that minimum equals
// 1 - clamp(max_j z_j * g_j) bit for bit. Taking the maximum first keeps the
// inner loops free of branches; e starts at 0, which stands in for the lower
// clamp.
inline double from_excess(double e) { return 1.0 - std::min(1.0, e); }

inline double middle_excess(std::span<const double> va, std::span<const double> wa, std::span<const double> vb,
                            std::span<const double> wb, std::span<const double> gamma) {
  double e = 0.0;
  for (std::size_t j = 0; j < va.size(); ++j) e = std::max(e, std::max(wb[j] - wa[j], va[j] - vb[j]) * gamma[j]);
  return e;
}

inline double middle_unchecked(std::span<const double> va, std::span<const double> wa, std::span<const double> vb,
                               std::span<const double> wb, std::span<const double> gamma) {
  return from_excess(middle_excess(va, wa, vb, wb, gamma));
}

}  // namespace detail

// Inputs are assumed finite and dimension-consistent; the checked overloads
// below validate lengths.
inline double membership_unchecked(std::span<const double> xl, std::span<const double> xu,
                                   std::span<const double> v, std::span<const double> w,
                                   std::span<const double> gamma) {
  double e = 0.0;
  for (std::size_t j = 0; j < xl.size(); ++j) e = std::max(e, std::max(xu[j] - w[j], v[j] - xl[j]) * gamma[j]);
  return detail::from_excess(e);
}

double membership(std::span<const double> xl, std::span<const double> xu, const Hyperbox& h,
                  std::span<const double> gamma);
double membership(const Pattern& x, const Hyperbox& h, std::span<const double> gamma);

// Per-dimension similarity of box a=[va,wa] to box b=[vb,wb].
inline double longest_dim(double va, double wa, double vb, double wb, double g) {
  return std::min(1.0 - ramp(wb - va, g), 1.0 - ramp(wa - vb, g));
}
inline double shortest_dim(double va, double wa, double vb, double wb, double g) {
  return std::min(1.0 - ramp(vb - wa, g), 1.0 - ramp(va - wb, g));
}
// Asymmetric middle value s_ab; s_ba is obtained by swapping the boxes.
inline double middle_dim(double va, double wa, double vb, double wb, double g) {
  return std::min(1.0 - ramp(wb - wa, g), 1.0 - ramp(va - vb, g));
}

namespace detail {

// Excess of box b against box a for a fixed measure, on raw bound pointers
// of length n. Callers that compare one box against many can dispatch on the
// measure once and call this in the loop.
template <SimilarityMeasure M>
inline double similarity_excess(const double* va, const double* wa, const double* vb, const double* wb,
                                const double* gamma, std::size_t n) {
  double e = 0.0;
  if constexpr (M == SimilarityMeasure::Longest) {
    for (std::size_t j = 0; j < n; ++j) e = std::max(e, std::max(wb[j] - va[j], wa[j] - vb[j]) * gamma[j]);
  } else if constexpr (M == SimilarityMeasure::Shortest) {
    for (std::size_t j = 0; j < n; ++j) e = std::max(e, std::max(vb[j] - wa[j], va[j] - wb[j]) * gamma[j]);
  } else {
    double ab = 0.0, ba = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      ab = std::max(ab, std::max(wb[j] - wa[j], va[j] - vb[j]) * gamma[j]);
      ba = std::max(ba, std::max(wa[j] - wb[j], vb[j] - va[j]) * gamma[j]);
    }
    // MidMax = max(s_ab, s_ba) keeps the smaller excess; MidMin the larger.
    e = M == SimilarityMeasure::MidMax ? std::min(ab, ba) : std::max(ab, ba);
  }
  return e;
}

// Calls f with the measure as a compile-time constant.
template <typename F>
inline decltype(auto) with_measure(SimilarityMeasure measure, F&& f) {
  switch (measure) {
    case SimilarityMeasure::Longest:
      return f.template operator()<SimilarityMeasure::Longest>();
    case SimilarityMeasure::Shortest:
      return f.template operator()<SimilarityMeasure::Shortest>();
    case SimilarityMeasure::MidMax:
      return f.template operator()<SimilarityMeasure::MidMax>();
    case SimilarityMeasure::MidMin:
      break;
  }
  return f.template operator()<SimilarityMeasure::MidMin>();
}

}  // namespace detail

inline double similarity_unchecked(std::span<const double> va, std::span<const double> wa,
                                   std::span<const double> vb, std::span<const double> wb,
                                   std::span<const double> gamma, SimilarityMeasure measure) {
  return detail::with_measure(measure, [&]<SimilarityMeasure M>() {
    return detail::from_excess(
        detail::similarity_excess<M>(va.data(), wa.data(), vb.data(), wb.data(), gamma.data(), va.size()));
  });
}

double similarity(const Hyperbox& a, const Hyperbox& b, std::span<const double> gamma, SimilarityMeasure measure);

// The raw asymmetric middle similarity s_ab (not symmetrised).
double middle_similarity(const Hyperbox& a, const Hyperbox& b, std::span<const double> gamma);

}  // namespace gfmm
