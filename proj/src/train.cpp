#include "gfmm/train.hpp"

#include <sstream>
#include <stdexcept>

#include "gfmm/agglomerative.hpp"

namespace gfmm {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Onln:
      return "onln";
    case Algorithm::IOL:
      return "iol";
    case Algorithm::AggloSM:
      return "agglo-sm";
    case Algorithm::Agglo2:
      return "agglo-2";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  for (auto a : {Algorithm::Onln, Algorithm::IOL, Algorithm::AggloSM, Algorithm::Agglo2}) {
    if (to_string(a) == name) return a;
  }
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

bool is_agglomerative(Algorithm a) { return a == Algorithm::AggloSM || a == Algorithm::Agglo2; }

TrainedModel train(std::span<const Pattern> data, const HyperparamConfig& config, Algorithm algo,
                   const TrainOptions& options) {
  switch (algo) {
    case Algorithm::Onln:
      return train_online(data, config, OnlineVariant::Original, options);
    case Algorithm::IOL:
      return train_online(data, config, OnlineVariant::IOL, options);
    case Algorithm::AggloSM:
      return train_agglo_sm(data, config, options);
    case Algorithm::Agglo2:
      return train_agglo_2(data, config, options);
  }
  throw std::logic_error("unhandled algorithm");
}

namespace {

std::string describe(std::span<const double> xs) {
  std::ostringstream os;
  os.precision(17);
  os << '[';
  for (std::size_t j = 0; j < xs.size(); ++j) os << (j ? ", " : "") << xs[j];
  os << ']';
  return os.str();
}

}  // namespace

std::optional<std::string> first_box_difference(const TrainedModel& a, const TrainedModel& b) {
  const std::size_t n = std::min(a.boxes.size(), b.boxes.size());
  for (std::size_t i = 0; i < n; ++i) {
    const Hyperbox& x = a.boxes[i];
    const Hyperbox& y = b.boxes[i];
    std::ostringstream os;
    if (!std::equal(x.vmin().begin(), x.vmin().end(), y.vmin().begin(), y.vmin().end())) {
      os << "box " << i << " vmin " << describe(x.vmin()) << " vs " << describe(y.vmin());
    } else if (!std::equal(x.wmax().begin(), x.wmax().end(), y.wmax().begin(), y.wmax().end())) {
      os << "box " << i << " wmax " << describe(x.wmax()) << " vs " << describe(y.wmax());
    } else if (x.label() != y.label()) {
      os << "box " << i << " label " << x.label() << " vs " << y.label();
    } else if (x.cardinality() != y.cardinality()) {
      os << "box " << i << " cardinality " << x.cardinality() << " vs " << y.cardinality();
    }
    if (!os.str().empty()) return os.str();
  }
  if (a.boxes.size() != b.boxes.size()) {
    return "box count " + std::to_string(a.boxes.size()) + " vs " + std::to_string(b.boxes.size());
  }
  return std::nullopt;
}

}  // namespace gfmm
