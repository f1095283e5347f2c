#include "gfmm/dataio.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "gfmm/online.hpp"
#include "gfmm/predict.hpp"
#include "gtest/gtest.h"
#include "test_support.hpp"

namespace gfmm {
namespace {

namespace fs = std::filesystem;

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("gfmm_") + info->test_suite_name() + "_" + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path Write(const std::string& name, const std::string& text) const {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  fs::path dir_;
};

using CsvTest = TempDir;

TEST_F(CsvTest, MinMaxScalingPerFeature) {
  const Dataset ds = load_csv(Write("a.csv", "x,y,label\n1,10,a\n2,10,b\n3,10,a\n"));
  ASSERT_EQ(ds.patterns.size(), 3u);
  EXPECT_EQ(ds.feature_count, 2u);
  EXPECT_EQ(ds.class_count, 2u);
  EXPECT_EQ(ds.patterns[0].lower()[0], 0.0);
  EXPECT_EQ(ds.patterns[1].lower()[0], 0.5);
  EXPECT_EQ(ds.patterns[2].lower()[0], 1.0);
  for (const auto& p : ds.patterns) EXPECT_EQ(p.lower()[1], 0.0);  // constant feature
  EXPECT_EQ(ds.label_names, (std::vector<std::string>{"a", "b"}));
}

TEST_F(CsvTest, LabelsNumberedByFirstAppearance) {
  const Dataset ds = load_csv(Write("a.csv", "0.1,zebra\n0.2,ant\n0.3,zebra\n0.4,moth\n"));
  EXPECT_EQ(ds.label_names, (std::vector<std::string>{"zebra", "ant", "moth"}));
  EXPECT_EQ(ds.patterns[1].label(), 1u);
  EXPECT_EQ(ds.patterns[2].label(), 0u);
}

TEST_F(CsvTest, KnownLabelsKeepTheirIds) {
  CsvOptions opts;
  opts.known_labels = {"x", "y"};
  const Dataset ds = load_csv(Write("a.csv", "0.1,y\n0.2,z\n"), opts);
  EXPECT_EQ(ds.label_names, (std::vector<std::string>{"x", "y", "z"}));
  EXPECT_EQ(ds.patterns[0].label(), 1u);
  EXPECT_EQ(ds.patterns[1].label(), 2u);
}

TEST_F(CsvTest, LabelColumnCanBeFirst) {
  CsvOptions opts;
  opts.label_column = 0;
  const Dataset ds = load_csv(Write("a.csv", "k,0,5\nm,1,7\n"), opts);
  EXPECT_EQ(ds.feature_count, 2u);
  EXPECT_EQ(ds.patterns[1].lower()[1], 1.0);
  EXPECT_EQ(ds.label_names[1], "m");
}

TEST_F(CsvTest, OutOfRangeWithoutScalingIsRejected) {
  CsvOptions opts;
  opts.normalize = false;
  EXPECT_NO_THROW(load_csv(Write("ok.csv", "0.1,a\n1,b\n"), opts));
  EXPECT_THROW(load_csv(Write("bad.csv", "0.1,a\n1.5,b\n"), opts), std::domain_error);
}

TEST_F(CsvTest, ParseErrorsCarryTheLine) {
  try {
    load_csv(Write("bad.csv", "x,label\n0.1,a\nfoo,b\n"));
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find(":3"), std::string::npos) << e.what();
  }
  EXPECT_THROW(load_csv(Write("ragged.csv", "0.1,0.2,a\n0.1,b\n")), ParseError);
  EXPECT_THROW(load_csv(Write("nan.csv", "0.1,a\nnan,b\n")), ParseError);
  EXPECT_THROW(load_csv(dir_ / "missing.csv"), std::exception);
}

TEST_F(CsvTest, SingleClassWarns) {
  const Dataset ds = load_csv(Write("a.csv", "0.1,a\n0.2,a\n"));
  EXPECT_FALSE(ds.warnings.empty());
}

TEST_F(CsvTest, FixedNormalizationIsReused) {
  const Dataset train = load_csv(Write("train.csv", "0,a\n10,b\n"));
  CsvOptions opts;
  opts.fixed_normalization = train.normalization;
  const Dataset test = load_csv(Write("test.csv", "5,a\n20,b\n-3,a\n"), opts);
  EXPECT_EQ(test.patterns[0].lower()[0], 0.5);
  EXPECT_EQ(test.patterns[1].lower()[0], 1.0);  // clamped
  EXPECT_EQ(test.patterns[2].lower()[0], 0.0);
}

TEST_F(CsvTest, ScalingIsIdempotent) {
  const Dataset once = load_csv(Write("a.csv", "3,a\n7,b\n4.5,a\n"));
  std::ostringstream os;
  for (const auto& p : once.patterns) os << p.lower()[0] << "," << once.label_names[p.label()] << "\n";
  const Dataset twice = load_csv(Write("b.csv", os.str()));
  for (std::size_t i = 0; i < once.patterns.size(); ++i) {
    EXPECT_DOUBLE_EQ(once.patterns[i].lower()[0], twice.patterns[i].lower()[0]);
  }
}

TEST(BundledDataTest, BalanceScaleShape) {
  const Dataset ds = load_csv(testing::data_dir() / "balance_scale.csv");
  EXPECT_EQ(ds.patterns.size(), 625u);
  EXPECT_EQ(ds.feature_count, 4u);
  EXPECT_EQ(ds.class_count, 3u);
}

TEST(BundledDataTest, AllFilesLoad) {
  const auto files = testing::bundled_datasets();
  ASSERT_GE(files.size(), 7u);
  for (const auto& f : files) {
    const Dataset ds = load_csv(f);
    EXPECT_GT(ds.patterns.size(), 0u) << f;
    EXPECT_GE(ds.class_count, 2u) << f;
  }
}

Dataset Synthetic(std::size_t n, std::size_t classes) {
  Dataset ds;
  for (std::size_t i = 0; i < n; ++i) ds.patterns.push_back(make_point_pattern({0.5}, static_cast<Label>(i % classes)));
  ds.feature_count = 1;
  ds.class_count = classes;
  return ds;
}

TEST(FoldPlanTest, PartitionsEveryRepeat) {
  const Dataset ds = Synthetic(10, 2);
  const FoldPlan plan = make_fold_plan(ds, 3, 2, 7);
  ASSERT_EQ(plan.assignments.size(), 3u);
  for (const auto& rep : plan.assignments) {
    ASSERT_EQ(rep.size(), 2u);
    EXPECT_EQ(rep[0].size(), 5u);
    EXPECT_EQ(rep[1].size(), 5u);
    std::set<std::size_t> all;
    for (const auto& fold : rep) {
      EXPECT_TRUE(std::is_sorted(fold.begin(), fold.end()));
      all.insert(fold.begin(), fold.end());
    }
    EXPECT_EQ(all.size(), 10u);
  }
  EXPECT_TRUE(plan.stratified);
}

TEST(FoldPlanTest, DeterministicAndSeedSensitive) {
  const Dataset ds = load_csv(testing::data_dir() / "iris.csv");
  const FoldPlan a = make_fold_plan(ds, 5, 2, 123);
  EXPECT_EQ(a.assignments, make_fold_plan(ds, 5, 2, 123).assignments);
  EXPECT_NE(a.assignments, make_fold_plan(ds, 5, 2, 124).assignments);
  EXPECT_NE(a.assignments[0], a.assignments[1]);
}

TEST(FoldPlanTest, StratifiedWithinOne) {
  const Dataset ds = load_csv(testing::data_dir() / "glass_like.csv");
  const FoldPlan plan = make_fold_plan(ds, 2, 3, 1);
  ASSERT_TRUE(plan.stratified);
  for (const auto& rep : plan.assignments) {
    std::vector<std::map<Label, int>> counts(rep.size());
    for (std::size_t f = 0; f < rep.size(); ++f) {
      for (std::size_t i : rep[f]) ++counts[f][ds.patterns[i].label()];
    }
    for (Label c = 0; c < ds.class_count; ++c) {
      int lo = 1 << 30, hi = 0;
      for (auto& m : counts) lo = std::min(lo, m[c]), hi = std::max(hi, m[c]);
      EXPECT_LE(hi - lo, 1) << "class " << c;
    }
  }
}

TEST(FoldPlanTest, TinyClassFallsBackToPlainSplit) {
  Dataset ds = Synthetic(9, 2);
  ds.patterns.push_back(make_point_pattern({0.5}, 2));
  ds.class_count = 3;
  const FoldPlan plan = make_fold_plan(ds, 1, 2, 0);
  EXPECT_FALSE(plan.stratified);
  EXPECT_FALSE(plan.warnings.empty());
}

TEST(FoldPlanTest, InvalidArguments) {
  const Dataset ds = Synthetic(4, 2);
  EXPECT_THROW(make_fold_plan(ds, 1, 1, 0), std::invalid_argument);
  EXPECT_THROW(make_fold_plan(ds, 0, 2, 0), std::invalid_argument);
  EXPECT_THROW(make_fold_plan(ds, 1, 5, 0), std::domain_error);
}

using ModelIoTest = TempDir;

TrainedModel TrainedOnIris() {
  const Dataset ds = load_csv(testing::data_dir() / "iris.csv");
  HyperparamConfig cfg;
  cfg.theta = 0.2;
  cfg.gamma = {1.0, 2.0, 3.0, 4.0};
  return train_online(ds.patterns, cfg, OnlineVariant::IOL);
}

TEST_F(ModelIoTest, RoundTripIsExact) {
  const TrainedModel m = TrainedOnIris();
  ModelMetadata meta;
  meta.algorithm = Algorithm::IOL;
  meta.label_names = {"a", "b", "c"};
  meta.normalization = Normalization{{0.0, 1.0}, {2.0, 3.0}};
  const fs::path p = dir_ / "model.json";
  save_model(m, p, meta);
  ModelMetadata back;
  const TrainedModel r = load_model(p, &back);
  EXPECT_EQ(r.boxes, m.boxes);
  EXPECT_EQ(r.config, m.config);
  EXPECT_EQ(r.stats, m.stats);
  EXPECT_EQ(back.algorithm, Algorithm::IOL);
  EXPECT_EQ(back.label_names, meta.label_names);
  ASSERT_TRUE(back.normalization.has_value());
  EXPECT_EQ(back.normalization->max, meta.normalization->max);
}

TEST_F(ModelIoTest, MissingFieldIsNamed) {
  auto j = nlohmann::json::parse(model_to_json(TrainedOnIris()));
  j["boxes"][0].erase("v");
  try {
    model_from_json(j.dump());
    FAIL() << "expected ModelFormatError";
  } catch (const ModelFormatError& e) {
    EXPECT_NE(std::string(e.what()).find("'v'"), std::string::npos) << e.what();
  }
}

TEST_F(ModelIoTest, RejectsBadDocuments) {
  auto j = nlohmann::json::parse(model_to_json(TrainedOnIris()));
  auto version = j;
  version["format_version"] = kModelFormatVersion + 1;
  EXPECT_THROW(model_from_json(version.dump()), ModelFormatError);
  auto type = j;
  type["config"]["theta"] = "wide";
  EXPECT_THROW(model_from_json(type.dump()), ModelFormatError);
  auto range = j;
  range["boxes"][0]["v"][0] = 1.5;
  EXPECT_THROW(model_from_json(range.dump()), std::exception);
  EXPECT_THROW(model_from_json("{not json"), std::exception);
}

TEST_F(ModelIoTest, EmptyModelLoadsButCannotPredict) {
  TrainedModel empty;
  empty.config.theta = 0.1;
  const fs::path p = dir_ / "empty.json";
  save_model(empty, p);
  const TrainedModel r = load_model(p);
  EXPECT_TRUE(r.boxes.empty());
  EXPECT_THROW(predict_iol(r, make_point_pattern({0.5}, 0)), std::domain_error);
}

}  // namespace
}  // namespace gfmm
