#include "gfmm/core.hpp"

#include <stdexcept>

#include "gtest/gtest.h"

namespace gfmm {
namespace {

TEST(PatternTest, PointPatternHasEqualBounds) {
  const Pattern p = make_point_pattern({0.5, 0.5}, 0);
  EXPECT_EQ(p.dims(), 2u);
  EXPECT_EQ(std::vector<double>(p.lower().begin(), p.lower().end()), (std::vector<double>{0.5, 0.5}));
  EXPECT_EQ(std::vector<double>(p.upper().begin(), p.upper().end()), (std::vector<double>{0.5, 0.5}));
  EXPECT_EQ(p.label(), 0u);
}

TEST(PatternTest, UnitCubeCornersAreValid) {
  const Pattern p = make_point_pattern({0.0, 1.0}, 2);
  EXPECT_EQ(p.lower()[0], 0.0);
  EXPECT_EQ(p.upper()[1], 1.0);
  EXPECT_EQ(p.label(), 2u);
}

TEST(PatternTest, RejectsOutOfRangeCoordinates) {
  EXPECT_THROW(make_point_pattern({1.2}, 0), std::domain_error);
  EXPECT_THROW(make_point_pattern({-0.1}, 0), std::domain_error);
  EXPECT_THROW(make_point_pattern({}, 0), std::domain_error);
}

TEST(PatternTest, RejectsInvertedOrMismatchedBounds) {
  EXPECT_THROW(Pattern({0.5}, {0.4}, 0), std::domain_error);
  EXPECT_THROW(Pattern({0.1, 0.2}, {0.3}, 0), std::domain_error);
}

TEST(HyperboxTest, FromPatternCopiesCoordinatesExactly) {
  const Pattern p({0.1, 0.2}, {0.1, 0.2}, 1);
  const Hyperbox h = box_from_pattern(p);
  EXPECT_EQ(h.vmin()[0], 0.1);
  EXPECT_EQ(h.vmin()[1], 0.2);
  EXPECT_EQ(h.wmax()[0], 0.1);
  EXPECT_EQ(h.wmax()[1], 0.2);
  EXPECT_EQ(h.label(), 1u);
  EXPECT_EQ(h.cardinality(), 1u);
}

TEST(HyperboxTest, FromIntervalPatternKeepsWidth) {
  const Hyperbox h = box_from_pattern(Pattern({0.1, 0.1}, {0.15, 0.15}, 0));
  for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(h.wmax()[j] - h.vmin()[j], 0.15 - 0.1);
  EXPECT_EQ(h.cardinality(), 1u);
}

TEST(HyperboxTest, RejectsZeroCardinality) {
  EXPECT_THROW(Hyperbox({0.1}, {0.2}, 0, 0), std::domain_error);
  Hyperbox h({0.1}, {0.2}, 0, 3);
  EXPECT_THROW(h.set_cardinality(0), std::domain_error);
  EXPECT_EQ(h.cardinality(), 3u);
}

TEST(HyperboxTest, RejectsInvalidBounds) {
  EXPECT_THROW(Hyperbox({0.3}, {0.2}, 0), std::domain_error);
  EXPECT_THROW(Hyperbox({0.3}, {1.5}, 0), std::domain_error);
}

TEST(HyperparamConfigTest, ValidatesRanges) {
  HyperparamConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.theta = 0.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.theta = 1.5;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.theta = 1.0;
  EXPECT_NO_THROW(cfg.validate());
  cfg.theta = 0.1;
  cfg.gamma = {1.0, -1.0};
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.gamma = {1.0, 2.0};
  EXPECT_THROW(cfg.validate(3), std::invalid_argument);
  EXPECT_NO_THROW(cfg.validate(2));
  cfg.sigma = 1.5;
  EXPECT_THROW(cfg.validate(2), std::invalid_argument);
  cfg.sigma = 0.0;
  cfg.epochs = 0;
  EXPECT_THROW(cfg.validate(2), std::invalid_argument);
}

TEST(HyperparamConfigTest, GammaMaxAndBroadcast) {
  HyperparamConfig cfg;
  cfg.gamma = {1.0, 4.0, 2.0};
  EXPECT_EQ(cfg.gamma_max(), 4.0);
  const std::vector<double> one{3.0};
  EXPECT_EQ(broadcast_gamma(one, 4), (std::vector<double>{3.0, 3.0, 3.0, 3.0}));
  EXPECT_EQ(broadcast_gamma(cfg.gamma, 3), cfg.gamma);
}

TEST(SimilarityMeasureTest, NamesRoundTrip) {
  for (auto m : {SimilarityMeasure::Longest, SimilarityMeasure::Shortest, SimilarityMeasure::MidMax,
                 SimilarityMeasure::MidMin}) {
    EXPECT_EQ(parse_measure(to_string(m)), m);
  }
  EXPECT_THROW(parse_measure("median"), std::invalid_argument);
}

TEST(TrainedModelTest, ClassCountIsOnePastLargestLabel) {
  TrainedModel m;
  EXPECT_EQ(m.class_count(), 0u);
  m.boxes.emplace_back(std::vector<double>{0.1}, std::vector<double>{0.2}, 0);
  m.boxes.emplace_back(std::vector<double>{0.3}, std::vector<double>{0.4}, 3);
  EXPECT_EQ(m.class_count(), 4u);
  EXPECT_EQ(m.dims(), 1u);
}

}  // namespace
}  // namespace gfmm
