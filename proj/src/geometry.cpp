#include "gfmm/geometry.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace gfmm {

bool can_expand(const Hyperbox& h, const Pattern& p, double theta) {
  if (h.dims() != p.dims()) throw std::domain_error("dimension mismatch between hyperbox and pattern");
  return can_expand_bounds(h.vmin(), h.wmax(), p.lower(), p.upper(), theta);
}

bool can_merge(const Hyperbox& a, const Hyperbox& b, double theta) {
  if (a.dims() != b.dims()) throw std::domain_error("dimension mismatch between hyperboxes");
  return can_expand_bounds(a.vmin(), a.wmax(), b.vmin(), b.wmax(), theta);
}

namespace {

Hyperbox hull(std::span<const double> va, std::span<const double> wa, std::span<const double> vb,
              std::span<const double> wb, Label label, std::uint64_t cardinality) {
  if (va.size() != vb.size()) throw std::domain_error("dimension mismatch in hull");
  std::vector<double> v(va.size());
  std::vector<double> w(va.size());
  for (std::size_t j = 0; j < va.size(); ++j) {
    v[j] = std::min(va[j], vb[j]);
    w[j] = std::max(wa[j], wb[j]);
  }
  return Hyperbox(std::move(v), std::move(w), label, cardinality);
}

}  // namespace

Hyperbox expand(const Hyperbox& h, const Pattern& p) {
  return hull(h.vmin(), h.wmax(), p.lower(), p.upper(), h.label(), h.cardinality() + 1);
}

Hyperbox merge(const Hyperbox& a, const Hyperbox& b) {
  return hull(a.vmin(), a.wmax(), b.vmin(), b.wmax(), a.label(), a.cardinality() + b.cardinality());
}

OverlapResult overlap_test_bounds(std::span<const double> va, std::span<const double> wa, std::span<const double> vb,
                                  std::span<const double> wb) {
  OverlapResult r;
  double delta_old = 1.0;
  for (std::size_t j = 0; j < va.size(); ++j) {
    const double vi = va[j], wi = wa[j], vk = vb[j], wk = wb[j];
    double delta_new;
    if (vi < vk && vk < wi && wi < wk) {
      delta_new = std::min(wi - vk, delta_old);
    } else if (vk < vi && vi < wk && wk < wi) {
      delta_new = std::min(wk - vi, delta_old);
    } else if (vi < vk && vk <= wk && wk < wi) {
      delta_new = std::min(std::min(wk - vi, wi - vk), delta_old);
    } else if (vk < vi && vi <= wi && wi < wk) {
      delta_new = std::min(std::min(wi - vk, wk - vi), delta_old);
    } else {
      return OverlapResult{};
    }
    if (delta_new < delta_old) {
      r.dim = static_cast<int>(j);
      delta_old = delta_new;
    }
  }
  r.delta = delta_old;
  return r;
}

OverlapResult overlap_test(const Hyperbox& a, const Hyperbox& b) {
  if (a.dims() != b.dims()) throw std::domain_error("dimension mismatch between hyperboxes");
  return overlap_test_bounds(a.vmin(), a.wmax(), b.vmin(), b.wmax());
}

void contract_bounds(std::span<double> va, std::span<double> wa, std::span<double> vb, std::span<double> wb,
                     int dim) {
  if (dim < 0 || static_cast<std::size_t>(dim) >= va.size()) {
    throw std::logic_error("contract: dimension " + std::to_string(dim) + " out of range");
  }
  const auto d = static_cast<std::size_t>(dim);
  double& vi = va[d];
  double& wi = wa[d];
  double& vk = vb[d];
  double& wk = wb[d];
  if (vi < vk && vk < wi && wi < wk) {
    const double mid = (wi + vk) / 2;
    wi = mid;
    vk = mid;
  } else if (vk < vi && vi < wk && wk < wi) {
    const double mid = (wk + vi) / 2;
    wk = mid;
    vi = mid;
  } else if (vi < vk && vk <= wk && wk < wi) {
    if (wk - vi <= wi - vk) {
      vi = wk;
    } else {
      wi = vk;
    }
  } else if (vk < vi && vi <= wi && wi < wk) {
    if (wk - vi <= wi - vk) {
      wk = vi;
    } else {
      vk = wi;
    }
  } else {
    throw std::logic_error("contract: no overlap case holds at dimension " + std::to_string(dim));
  }
}

std::pair<Hyperbox, Hyperbox> contract(const Hyperbox& a, const Hyperbox& b, int dim) {
  if (a.dims() != b.dims()) throw std::domain_error("dimension mismatch between hyperboxes");
  std::vector<double> va(a.vmin().begin(), a.vmin().end()), wa(a.wmax().begin(), a.wmax().end());
  std::vector<double> vb(b.vmin().begin(), b.vmin().end()), wb(b.wmax().begin(), b.wmax().end());
  contract_bounds(va, wa, vb, wb, dim);
  return {Hyperbox(std::move(va), std::move(wa), a.label(), a.cardinality()),
          Hyperbox(std::move(vb), std::move(wb), b.label(), b.cardinality())};
}

}  // namespace gfmm
