// Command-line driver: experiment suite, ground truth, single protocol runs,
// replay verification and the Byzantine-leader demo.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>

#include "CLI11.hpp"
#include "json.hpp"

#include "fedchain/chain/json_io.h"
#include "fedchain/chain/protocol.h"
#include "fedchain/experiment/ground_truth.h"
#include "fedchain/experiment/optdigits.h"
#include "fedchain/experiment/stats.h"
#include "fedchain/experiment/suite.h"

namespace fs = std::filesystem;
using namespace fedchain;

namespace {

// Flags shared by every subcommand that builds owners from the dataset.
struct CommonFlags {
  experiment::SuiteConfig cfg;
  std::string baseline = "initial";

  CommonFlags() { cfg.data_path = FEDCHAIN_DEFAULT_DATA; }

  void Attach(CLI::App* app) {
    app->add_option("--data", cfg.data_path, "optdigits CSV (64 pixels + label per line)");
    app->add_option("--owners", cfg.num_owners, "number of data owners")->capture_default_str();
    app->add_option("--rounds", cfg.rounds, "federated rounds R")->capture_default_str();
    app->add_option("--seed", cfg.seed, "permutation seed e; other streams derive from it")
        ->capture_default_str();
    app->add_option("--lr", cfg.train.learning_rate, "learning rate")->capture_default_str();
    app->add_option("--epochs", cfg.train.local_epochs, "local epochs E")->capture_default_str();
    app->add_option("--miners", cfg.num_miners, "number of miners")->capture_default_str();
    app->add_option("--baseline", baseline, "empty-coalition model: initial | previous-global")
        ->capture_default_str();
    app->add_option("--max-rows", cfg.max_rows, "use a seeded subset of rows (0 = all)")
        ->capture_default_str();
    app->add_option("--threads", cfg.ground_truth_threads,
                    "ground-truth worker threads (1 keeps timings comparable)")
        ->capture_default_str();
  }

  void Finish() { cfg.baseline = chain::BaselinePolicyFromString(baseline); }
};

int CmdRun(CommonFlags& f, const fs::path& out) {
  f.Finish();
  const experiment::ExperimentReport report = experiment::RunExperimentSuite(f.cfg);
  experiment::WriteReportFiles(report, out);
  for (const auto& sr : report.results) {
    std::cout << "sigma " << sr.sigma << ": ground-truth rho " << sr.ground_truth_rho
              << ", similarity trend " << sr.similarity_trend << ", NativeSV "
              << sr.ground_truth_seconds << " s\n";
    for (const auto& run : sr.runs) {
      std::cout << "  m=" << run.num_groups << " similarity " << run.similarity << ", "
                << run.seconds << " s\n";
    }
  }
  const auto violations = experiment::CheckReportInvariants(report);
  for (const auto& v : violations) std::cerr << "invariant violated: " << v << '\n';
  std::cout << "wrote " << out.string() << '\n';
  return violations.empty() ? EXIT_SUCCESS : EXIT_FAILURE;
}

int CmdGroundTruth(CommonFlags& f, double sigma) {
  f.Finish();
  f.cfg.Validate();
  const auto split = experiment::PrepareOwners(f.cfg, experiment::LoadOptdigits(f.cfg.data_path),
                                               sigma);
  const model::UtilityEvaluator eval(split.test);
  const auto gt = experiment::GroundTruthShapley(split.owners, eval, f.cfg.train, f.cfg.rounds,
                                                 f.cfg.ground_truth_threads);
  std::vector<double> idx(gt.values.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<double>(i);
  nlohmann::json doc = {{"sigma", sigma},
                        {"values", gt.values},
                        {"sum", std::accumulate(gt.values.begin(), gt.values.end(), 0.0)},
                        {"u_empty", gt.utilities.At(0)},
                        {"u_all", gt.utilities.At(static_cast<shapley::CoalitionMask>(
                                      gt.utilities.size() - 1))},
                        {"models_trained", gt.models_trained},
                        {"seconds", gt.seconds}};
  if (idx.size() > 1) doc["rho_vs_index"] = experiment::SpearmanRho(gt.values, idx);
  std::cout << doc.dump(2) << '\n';
  return EXIT_SUCCESS;
}

void ExportRun(const chain::ProtocolResult& res, const model::Dataset& test, const fs::path& out) {
  fs::create_directories(out);
  chain::WriteBlocksFile(out / "blocks.json", res.blocks);
  std::ofstream audit(out / "audit.ndjson");
  chain::WriteAudit(audit, res.audit);
  std::ofstream test_csv(out / "test_set.csv");
  experiment::WriteOptdigits(test_csv, test);
  std::ofstream ledger(out / "ledger.json");
  ledger << nlohmann::json(res.state.ledger).dump(2) << '\n';
}

int CmdSimulate(CommonFlags& f, std::uint32_t groups, double sigma, const fs::path& out) {
  f.Finish();
  f.cfg.Validate();
  const auto split = experiment::PrepareOwners(f.cfg, experiment::LoadOptdigits(f.cfg.data_path),
                                               sigma);
  const auto res = chain::RunProtocol(experiment::MakeScenario(f.cfg, split, groups));
  ExportRun(res, split.test, out);
  std::cout << "blocks " << res.blocks.size() << ", final state "
            << ToHex(res.state.StateDigest()) << '\n';
  for (const auto& [owner, total] : res.state.ledger.totals) {
    std::cout << "  owner " << owner << ": " << total << '\n';
  }
  std::cout << "wrote " << out.string() << '\n';
  return EXIT_SUCCESS;
}

int CmdVerifyReplay(const fs::path& blocks_path, const fs::path& test_path) {
  const auto blocks = chain::ReadBlocksFile(blocks_path);
  const auto test = experiment::LoadOptdigits(test_path);
  const auto replay = chain::ReplayChain(blocks, test);
  if (!replay.ok) {
    std::cout << "MISMATCH at height " << replay.failed_height << ": " << replay.failure << '\n';
    return EXIT_FAILURE;
  }
  std::cout << "OK: " << replay.blocks_checked << " blocks, every state digest reproduced; final "
            << ToHex(replay.state.StateDigest()) << '\n';
  return EXIT_SUCCESS;
}

int CmdTamperDemo(CommonFlags& f, std::uint32_t groups, double sigma, std::size_t byzantine,
                  double delta, const std::string& kind, std::uint64_t forced_round,
                  const fs::path& out) {
  f.Finish();
  f.cfg.Validate();
  if (byzantine >= f.cfg.num_miners) throw InvalidArgument("need at least one honest miner");
  const auto split = experiment::PrepareOwners(f.cfg, experiment::LoadOptdigits(f.cfg.data_path),
                                               sigma);
  chain::Scenario honest = experiment::MakeScenario(f.cfg, split, groups);
  chain::Scenario attacked = honest;
  for (std::size_t k = 0; k < byzantine; ++k) attacked.miners.honest[k] = false;
  if (kind == "inflate") {
    attacked.byzantine_tamper = {chain::TamperKind::kInflateOwnContribution, delta};
  } else if (kind == "corrupt") {
    attacked.byzantine_tamper = {chain::TamperKind::kCorruptGlobalModel, delta};
  } else {
    throw InvalidArgument("tamper kind must be inflate or corrupt");
  }
  if (byzantine > 0) attacked.forced_leaders[forced_round + 1] = attacked.miners.miners[0];

  const auto a = chain::RunProtocol(honest);
  const auto b = chain::RunProtocol(attacked);
  chain::WriteAudit(std::cout, b.audit);
  const bool same = a.state.ledger == b.state.ledger && a.state.StateDigest() == b.state.StateDigest();
  std::cout << "rejections " << b.stats.rejections << "; ledger "
            << (same ? "identical to" : "DIFFERS from") << " the all-honest run\n";
  if (!out.empty()) ExportRun(b, split.test, out);
  return same ? EXIT_SUCCESS : EXIT_FAILURE;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Blockchain-mediated federated learning with group-based Shapley values"};
  app.require_subcommand(1);

  CommonFlags run_flags, gt_flags, sim_flags, tamper_flags;
  run_flags.cfg.groups = {2, 3, 4, 5, 6, 7, 8, 9};

  fs::path run_out = "results";
  auto* run = app.add_subcommand("run", "full suite: ground truth, GroupSV per m, reports");
  run_flags.Attach(run);
  run->add_option("--groups", run_flags.cfg.groups, "grid of group counts m")
      ->delimiter(',')
      ->capture_default_str();
  run->add_option("--sigma", run_flags.cfg.sigmas, "grid of noise levels")
      ->delimiter(',')
      ->capture_default_str();
  run->add_option("--out", run_out, "output directory")->capture_default_str();

  double gt_sigma = 0.0;
  auto* gt = app.add_subcommand("ground-truth", "exact Shapley values by full retraining");
  gt_flags.Attach(gt);
  gt->add_option("--sigma", gt_sigma, "noise level")->capture_default_str();

  std::uint32_t sim_groups = 3;
  double sim_sigma = 0.0;
  fs::path sim_out = "chain";
  auto* sim = app.add_subcommand("simulate", "one protocol run; exports blocks and audit log");
  sim_flags.Attach(sim);
  sim->add_option("--groups", sim_groups, "number of groups m")->capture_default_str();
  sim->add_option("--sigma", sim_sigma, "noise level")->capture_default_str();
  sim->add_option("--out", sim_out, "output directory")->capture_default_str();

  fs::path replay_blocks, replay_test;
  auto* replay = app.add_subcommand("verify-replay", "re-execute an exported block sequence");
  replay->add_option("--blocks", replay_blocks, "blocks.json")->required();
  replay->add_option("--test", replay_test, "test set CSV committed in the config block")
      ->required();

  std::uint32_t tamper_groups = 3;
  double tamper_sigma = 0.0, tamper_delta = 0.1;
  std::size_t tamper_byzantine = 1;
  std::string tamper_kind = "inflate";
  std::uint64_t tamper_round = 1;
  fs::path tamper_out;
  auto* tamper = app.add_subcommand("tamper-demo", "Byzantine leader against honest miners");
  tamper_flags.cfg.num_miners = 9;
  tamper_flags.cfg.rounds = 3;
  tamper_flags.Attach(tamper);
  tamper->add_option("--groups", tamper_groups, "number of groups m")->capture_default_str();
  tamper->add_option("--sigma", tamper_sigma, "noise level")->capture_default_str();
  tamper->add_option("--byzantine", tamper_byzantine, "dishonest miners (ids 0..k-1)")
      ->capture_default_str();
  tamper->add_option("--delta", tamper_delta, "tamper magnitude")->capture_default_str();
  tamper->add_option("--kind", tamper_kind, "inflate | corrupt")->capture_default_str();
  tamper->add_option("--forced-round", tamper_round, "round whose first leader is miner 0")
      ->capture_default_str();
  tamper->add_option("--out", tamper_out, "export the attacked chain here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return CmdRun(run_flags, run_out);
    if (*gt) return CmdGroundTruth(gt_flags, gt_sigma);
    if (*sim) return CmdSimulate(sim_flags, sim_groups, sim_sigma, sim_out);
    if (*replay) return CmdVerifyReplay(replay_blocks, replay_test);
    if (*tamper) {
      return CmdTamperDemo(tamper_flags, tamper_groups, tamper_sigma, tamper_byzantine,
                           tamper_delta, tamper_kind, tamper_round, tamper_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return EXIT_SUCCESS;
}
