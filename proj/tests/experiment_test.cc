#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "fedchain/common/error.h"
#include "fedchain/experiment/ground_truth.h"
#include "fedchain/experiment/optdigits.h"
#include "fedchain/experiment/partition.h"
#include "fedchain/experiment/stats.h"
#include "fedchain/experiment/suite.h"
#include "test_util.h"

namespace fedchain::experiment {
namespace {

std::multiset<std::pair<std::vector<double>, int>> Rows(const model::Dataset& d) {
  std::multiset<std::pair<std::vector<double>, int>> out;
  for (std::size_t r = 0; r < d.size(); ++r) {
    out.emplace(std::vector<double>(d.row(r).begin(), d.row(r).end()), d.label(r));
  }
  return out;
}

std::string Line(int last_pixel, int label) {
  std::string s;
  for (int i = 0; i < 63; ++i) s += "0,";
  return s + std::to_string(last_pixel) + "," + std::to_string(label);
}

TEST(Optdigits, ParsesAndScales) {
  std::istringstream in(Line(16, 7) + "\n" + Line(8, 0) + "\r\n\n");
  const model::Dataset d = ParseOptdigits(in);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d.label(0), 7);
  EXPECT_EQ(d.row(0)[63], 1.0);
  EXPECT_EQ(d.row(1)[63], 0.5);
  for (double x : d.features()) {
    EXPECT_GE(x, 0.0);
    EXPECT_LE(x, 1.0);
  }
}

TEST(Optdigits, ErrorsCarryLineNumbers) {
  auto error_of = [](const std::string& text) {
    std::istringstream in(text);
    try {
      ParseOptdigits(in, "f");
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(error_of(Line(1, 1) + "\n" + Line(17, 1)).find("f:2:"), std::string::npos);
  EXPECT_NE(error_of(Line(1, 10)).find("label"), std::string::npos);
  EXPECT_NE(error_of(Line(1, 1) + ",3").find("expected 65"), std::string::npos);
  EXPECT_NE(error_of("1,2,x").find("not an integer"), std::string::npos);
  EXPECT_NE(error_of("").find("no data"), std::string::npos);
  EXPECT_NE(error_of("\n\n").find("no data"), std::string::npos);
}

TEST(Optdigits, BundledFileHasAllInstances) {
  const model::Dataset d = LoadOptdigits(FEDCHAIN_TEST_DATA);
  EXPECT_EQ(d.size(), 5620u);
  std::map<int, int> counts;
  for (int l : d.labels()) ++counts[l];
  EXPECT_EQ(counts.size(), 10u);
  EXPECT_EQ(counts[0], 554);
  EXPECT_THROW(LoadOptdigits("/nonexistent/optdigits.csv"), Error);
}

TEST(Optdigits, WriteReloadsBitIdentically) {
  const model::Dataset d = LoadOptdigits(FEDCHAIN_TEST_DATA);
  std::vector<std::size_t> idx(50);
  std::iota(idx.begin(), idx.end(), std::size_t{100});
  const model::Dataset sub = d.Subset(idx);
  std::stringstream ss;
  WriteOptdigits(ss, sub);
  EXPECT_EQ(ParseOptdigits(ss), sub);
  std::stringstream sink;
  EXPECT_THROW(WriteOptdigits(sink, testing::RandomDataset(1, 2)), InvalidArgument);
}

TEST(Split, HundredRowsNineOwners) {
  const model::Dataset d = testing::RandomDataset(1, 100);
  const OwnerSplit s = SplitOwners(d, SplitConfig{0.8, 9, 3});
  EXPECT_EQ(s.test.size(), 20u);
  std::size_t total = 0;
  for (const auto& o : s.owners) {
    EXPECT_TRUE(o.size() == 8 || o.size() == 9);
    total += o.size();
  }
  EXPECT_EQ(total, 80u);
}

TEST(Split, DeterministicPartition) {
  const model::Dataset d = testing::RandomDataset(2, 137);
  const OwnerSplit a = SplitOwners(d, SplitConfig{0.8, 9, 3});
  const OwnerSplit b = SplitOwners(d, SplitConfig{0.8, 9, 3});
  EXPECT_EQ(a.owners, b.owners);
  EXPECT_EQ(a.test, b.test);
  EXPECT_NE(SplitOwners(d, SplitConfig{0.8, 9, 4}).test, a.test);

  auto all = Rows(a.test);
  for (const auto& o : a.owners) {
    const auto r = Rows(o);
    all.insert(r.begin(), r.end());
  }
  EXPECT_EQ(all, Rows(d));
  EXPECT_THROW(SplitOwners(testing::RandomDataset(3, 10), SplitConfig{0.8, 9, 1}),
               InvalidArgument);
}

TEST(Noise, ZeroSigmaOrFirstOwnerUnchanged) {
  const model::Dataset d = testing::RandomDataset(4, 30);
  EXPECT_EQ(AddNoise(d, 5, NoiseConfig{0.0, 1}), d);
  EXPECT_EQ(AddNoise(d, 0, NoiseConfig{0.5, 1}), d);
  const model::Dataset n = AddNoise(d, 3, NoiseConfig{0.1, 1});
  EXPECT_EQ(n.labels(), d.labels());
  EXPECT_NE(n.features(), d.features());
  EXPECT_EQ(AddNoise(d, 3, NoiseConfig{0.1, 1}), n);
}

TEST(Noise, StandardDeviationIsSigmaTimesIndex) {
  // 10^4 entries: sigma 0.5, owner 8 -> std 4.
  const model::Dataset d(64, 10, std::vector<double>(64 * 157, 0.0),
                         std::vector<int>(157, 0));
  const model::Dataset n = AddNoise(d, 8, NoiseConfig{0.5, 9});
  double sum = 0.0, sq = 0.0;
  const std::size_t count = 10000;
  for (std::size_t k = 0; k < count; ++k) {
    sum += n.features()[k];
    sq += n.features()[k] * n.features()[k];
  }
  const double mean = sum / count;
  const double sd = std::sqrt(sq / count - mean * mean);
  EXPECT_NEAR(sd, 4.0, 0.2);
}

TEST(Stats, Cosine) {
  const std::vector<double> v{1.0, -2.0, 3.0}, neg{-1.0, 2.0, -3.0};
  EXPECT_NEAR(CosineSimilarity(v, v), 1.0, 1e-15);
  EXPECT_NEAR(CosineSimilarity(v, neg), -1.0, 1e-15);
  EXPECT_EQ(CosineSimilarity(std::vector<double>{1, 0}, std::vector<double>{0, 1}), 0.0);
  EXPECT_THROW(CosineSimilarity(std::vector<double>{0, 0}, v), InvalidArgument);
  EXPECT_THROW(CosineSimilarity(std::vector<double>{1}, v), InvalidArgument);
}

TEST(Stats, SpearmanWithTies) {
  EXPECT_EQ(AverageRanks(std::vector<double>{10, 20, 20, 5}),
            (std::vector<double>{2, 3.5, 3.5, 1}));
  const std::vector<double> x{1, 2, 3, 4, 5};
  EXPECT_NEAR(SpearmanRho(x, std::vector<double>{2, 4, 6, 8, 100}), 1.0, 1e-15);
  EXPECT_NEAR(SpearmanRho(x, std::vector<double>{5, 4, 3, 2, 1}), -1.0, 1e-15);
  EXPECT_EQ(SpearmanRho(x, std::vector<double>{1, 1, 1, 1, 1}), 0.0);
  // Hand value: ranks of y are {1,3,2,5,4}, sum d^2 = 4, rho = 1 - 6*4/120.
  EXPECT_NEAR(SpearmanRho(x, std::vector<double>{1, 3, 2, 5, 4}), 0.8, 1e-15);
}

TEST(GroundTruth, SingleOwnerIsItsOwnGain) {
  const auto test = testing::ClusteredDataset(1, 80);
  const model::UtilityEvaluator eval(test);
  const std::vector<model::Dataset> owners{testing::ClusteredDataset(2, 40)};
  const model::TrainConfig cfg{0.5, 1, 0};
  const GroundTruthResult gt = GroundTruthShapley(owners, eval, cfg, 3);
  model::WeightVector w(model::ShapeFor(test));
  for (int i = 0; i < 3; ++i) w = model::TrainLocal(w, owners[0], cfg);
  EXPECT_DOUBLE_EQ(gt.values[0], eval(w) - eval(model::WeightVector(model::ShapeFor(test))));
  EXPECT_EQ(gt.models_trained, 1u);
}

TEST(GroundTruth, IdenticalOwnersGetEqualValues) {
  const auto test = testing::ClusteredDataset(1, 80);
  const model::UtilityEvaluator eval(test);
  const auto d = testing::ClusteredDataset(2, 30);
  const std::vector<model::Dataset> owners{d, d, testing::ClusteredDataset(3, 30, 64, 10, 1.0)};
  const GroundTruthResult gt = GroundTruthShapley(owners, eval, model::TrainConfig{0.5, 1, 0}, 2);
  EXPECT_NEAR(gt.values[0], gt.values[1], 1e-9);
  EXPECT_EQ(gt.models_trained, 7u);
  const double sum = gt.values[0] + gt.values[1] + gt.values[2];
  EXPECT_NEAR(sum, gt.utilities.At(7) - gt.utilities.At(0), 1e-12);
}

TEST(GroundTruth, ThreadCountDoesNotChangeValues) {
  const auto test = testing::ClusteredDataset(1, 60);
  const model::UtilityEvaluator eval(test);
  std::vector<model::Dataset> owners;
  for (int i = 0; i < 4; ++i) owners.push_back(testing::ClusteredDataset(10 + i, 20));
  const auto a = GroundTruthShapley(owners, eval, model::TrainConfig{0.5, 1, 0}, 2, 1);
  const auto b = GroundTruthShapley(owners, eval, model::TrainConfig{0.5, 1, 0}, 2, 3);
  EXPECT_EQ(a.values, b.values);
  EXPECT_THROW(GroundTruthShapley({}, eval, model::TrainConfig{}, 1), InvalidArgument);
}

SuiteConfig TinySuite() {
  SuiteConfig c;
  c.num_owners = 4;
  c.groups = {2, 3, 4};
  c.sigmas = {0.0, 0.3};
  c.rounds = 2;
  c.max_rows = 300;
  c.num_miners = 2;
  return c;
}

TEST(Suite, ReportShapeCountsAndFiles) {
  const model::Dataset data = LoadOptdigits(FEDCHAIN_TEST_DATA);
  const ExperimentReport r = RunExperimentSuite(TinySuite(), data);
  EXPECT_EQ(r.dataset_rows, 300u);
  EXPECT_EQ(r.test_rows, 60u);
  ASSERT_EQ(r.results.size(), 2u);
  for (const SigmaResult& sr : r.results) {
    EXPECT_EQ(sr.ground_truth.size(), 4u);
    EXPECT_EQ(sr.ground_truth_models, 15u);
    ASSERT_EQ(sr.runs.size(), 3u);
    for (const GroupRun& run : sr.runs) {
      EXPECT_EQ(run.models_per_round, 4u);
      EXPECT_EQ(run.models_trained, 8u);
      EXPECT_GE(run.similarity, -1.0);
      EXPECT_LE(run.similarity, 1.0);
    }
  }
  const auto dir = std::filesystem::temp_directory_path() / "fedchain_suite_test";
  std::filesystem::remove_all(dir);
  WriteReportFiles(r, dir);
  for (const char* f : {"report.json", "fig1.csv", "fig2.csv", "table1.csv", "audit.ndjson"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
  }
  std::ifstream t1(dir / "table1.csv");
  const std::size_t lines =
      std::count(std::istreambuf_iterator<char>(t1), std::istreambuf_iterator<char>(), '\n');
  EXPECT_EQ(lines, 1u + 2 * (3 + 1));  // header + per sigma: 3 GroupSV + NativeSV
  std::filesystem::remove_all(dir);
}

TEST(Suite, ReproducibleExceptTimings) {
  const model::Dataset data = LoadOptdigits(FEDCHAIN_TEST_DATA);
  const auto a = ReportToJson(RunExperimentSuite(TinySuite(), data), false);
  const auto b = ReportToJson(RunExperimentSuite(TinySuite(), data), false);
  EXPECT_EQ(a, b);
}

TEST(Suite, RejectsBadConfig) {
  SuiteConfig c = TinySuite();
  c.groups = {5};
  EXPECT_THROW(c.Validate(), InvalidArgument);
  c = TinySuite();
  c.num_owners = 13;
  EXPECT_THROW(c.Validate(), InvalidArgument);
  c = TinySuite();
  c.sigmas = {-0.1};
  EXPECT_THROW(c.Validate(), InvalidArgument);
}

TEST(Suite, InvariantCheckerFlagsViolations) {
  ExperimentReport r;
  r.config = TinySuite();
  r.config.num_owners = 2;
  r.config.rounds = 1;
  SigmaResult sr;
  sr.sigma = 0.0;
  sr.ground_truth = {0.5, -0.01};
  sr.ground_truth_models = 3;
  GroupRun run;
  run.num_groups = 2;
  run.similarity = 0.9;
  run.models_trained = 3;  // should be 2 for one round of two owners
  run.models_per_round = 3;
  sr.runs.push_back(run);
  r.results.push_back(sr);
  const auto v = CheckReportInvariants(r);
  ASSERT_EQ(v.size(), 2u);
  EXPECT_NE(v[0].find("trained 3 local models"), std::string::npos);
  EXPECT_NE(v[1].find("|v_0|"), std::string::npos);
}

}  // namespace
}  // namespace fedchain::experiment
