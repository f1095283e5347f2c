#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "gfmm/core.hpp"
#include "gfmm/online.hpp"

namespace gfmm {

enum class Algorithm { Onln, IOL, AggloSM, Agglo2 };

std::string_view to_string(Algorithm a);
Algorithm parse_algorithm(std::string_view name);
bool is_agglomerative(Algorithm a);

TrainedModel train(std::span<const Pattern> data, const HyperparamConfig& config, Algorithm algo,
                   const TrainOptions& options = {});

// First field where two box sequences differ, or nullopt when identical.
std::optional<std::string> first_box_difference(const TrainedModel& a, const TrainedModel& b);

}  // namespace gfmm
