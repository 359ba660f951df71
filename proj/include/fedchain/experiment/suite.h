#ifndef FEDCHAIN_EXPERIMENT_SUITE_H_
#define FEDCHAIN_EXPERIMENT_SUITE_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "fedchain/chain/json_io.h"
#include "fedchain/chain/protocol.h"
#include "fedchain/chain/transaction.h"
#include "fedchain/model/dataset.h"
#include "fedchain/experiment/partition.h"
#include "fedchain/model/logistic.h"

namespace fedchain::experiment {

struct SuiteConfig {
  std::filesystem::path data_path;
  std::size_t num_owners = 9;
  std::vector<std::uint32_t> groups{2, 3, 4, 5, 6, 7, 8, 9};
  std::vector<double> sigmas{0.0, 0.05, 0.1, 0.2, 0.5};
  std::int64_t rounds = 20;
  // Permutation seed e; every other stream (split, noise, keys, leader
  // selection) is derived from it.
  std::uint64_t seed = 1;
  model::TrainConfig train{1.5, 1, 0};
  std::size_t num_miners = 3;
  chain::BaselinePolicy baseline = chain::BaselinePolicy::kInitialModel;
  // 0 keeps every row; otherwise a seeded subset of this many rows is used.
  std::size_t max_rows = 0;
  // Worker threads for ground-truth retraining. Timings are only comparable
  // between methods when this is 1.
  int ground_truth_threads = 1;

  void Validate() const;
};

struct GroupRun {
  std::uint32_t num_groups = 0;
  std::vector<double> totals;  // per owner, roster order
  double similarity = 0.0;     // cosine against the ground truth
  double seconds = 0.0;        // owner training + accepted contract execution
  std::size_t models_trained = 0;
  std::size_t models_per_round = 0;
  std::size_t rejections = 0;
  std::string state_digest;
  std::vector<chain::AuditEvent> audit;
};

struct SigmaResult {
  double sigma = 0.0;
  std::vector<double> ground_truth;
  double ground_truth_seconds = 0.0;
  std::size_t ground_truth_models = 0;
  // Spearman rho between ground-truth values and owner index.
  double ground_truth_rho = 0.0;
  std::vector<GroupRun> runs;  // one per entry of SuiteConfig::groups
  // Spearman rho between similarity and number of groups.
  double similarity_trend = 0.0;
};

struct ExperimentReport {
  SuiteConfig config;
  std::size_t dataset_rows = 0;
  std::size_t test_rows = 0;
  std::vector<std::size_t> owner_rows;
  std::vector<SigmaResult> results;

  const SigmaResult* ForSigma(double sigma) const;
};

// Row sampling, owner split and per-owner noise exactly as the suite does
// them for `sigma`.
OwnerSplit PrepareOwners(const SuiteConfig& config, const model::Dataset& full, double sigma);

// The protocol scenario the suite runs for `num_groups`, all miners honest.
chain::Scenario MakeScenario(const SuiteConfig& config, const OwnerSplit& split,
                             std::uint32_t num_groups);

// The dataset is loaded from config.data_path.
ExperimentReport RunExperimentSuite(const SuiteConfig& config);
ExperimentReport RunExperimentSuite(const SuiteConfig& config, const model::Dataset& data);

// Violated invariants, one message each; empty when the report is sound.
// Covers similarity range, model counts, the trend properties and runtime.
std::vector<std::string> CheckReportInvariants(const ExperimentReport& report);

// `with_timing = false` drops wall-clock fields so two runs can be compared.
nlohmann::json ReportToJson(const ExperimentReport& report, bool with_timing = true);

// report.json, fig1.csv, fig2.csv, table1.csv and audit.ndjson.
void WriteReportFiles(const ExperimentReport& report, const std::filesystem::path& dir);

}  // namespace fedchain::experiment

#endif  // FEDCHAIN_EXPERIMENT_SUITE_H_
