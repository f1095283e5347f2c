#include "gfmm/kernels.hpp"

#include <stdexcept>

namespace gfmm {

namespace {

void require_dims(std::size_t a, std::size_t b, std::size_t gamma) {
  if (a != b || a != gamma) {
    throw std::domain_error("dimension mismatch (" + std::to_string(a) + ", " + std::to_string(b) + ", gamma " +
                            std::to_string(gamma) + ")");
  }
}

}  // namespace

double membership(std::span<const double> xl, std::span<const double> xu, const Hyperbox& h,
                  std::span<const double> gamma) {
  require_dims(xl.size(), h.dims(), gamma.size());
  if (xu.size() != xl.size()) throw std::domain_error("dimension mismatch in pattern bounds");
  return membership_unchecked(xl, xu, h.vmin(), h.wmax(), gamma);
}

double membership(const Pattern& x, const Hyperbox& h, std::span<const double> gamma) {
  return membership(x.lower(), x.upper(), h, gamma);
}

double similarity(const Hyperbox& a, const Hyperbox& b, std::span<const double> gamma, SimilarityMeasure measure) {
  require_dims(a.dims(), b.dims(), gamma.size());
  return similarity_unchecked(a.vmin(), a.wmax(), b.vmin(), b.wmax(), gamma, measure);
}

double middle_similarity(const Hyperbox& a, const Hyperbox& b, std::span<const double> gamma) {
  require_dims(a.dims(), b.dims(), gamma.size());
  return detail::middle_unchecked(a.vmin(), a.wmax(), b.vmin(), b.wmax(), gamma);
}

}  // namespace gfmm
