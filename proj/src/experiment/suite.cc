#include "fedchain/experiment/suite.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "fedchain/chain/protocol.h"
#include "fedchain/common/error.h"
#include "fedchain/common/rng.h"
#include "fedchain/experiment/ground_truth.h"
#include "fedchain/experiment/optdigits.h"
#include "fedchain/experiment/partition.h"
#include "fedchain/experiment/stats.h"

namespace fedchain::experiment {

namespace {

// Sub-streams of the suite seed.
enum Stream : std::uint64_t { kSplit = 1, kNoise = 2, kKeys = 3, kLeader = 4, kRows = 5 };

std::uint64_t SubSeed(std::uint64_t seed, Stream s) { return DeriveSeed({seed, s}); }

constexpr double kZeroNoiseBound = 0.02;
constexpr double kQualityRhoBound = -0.8;
constexpr double kMinSimilarityAtNine = 0.85;
constexpr double kRuntimeFactor = 2.0;

model::Dataset SampleRows(const model::Dataset& data, std::size_t rows, std::uint64_t seed) {
  if (rows == 0 || rows >= data.size()) return data;
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  SplitMix64 rng(seed);
  for (std::size_t i = order.size(); i-- > 1;) std::swap(order[i], order[rng.Uniform(i + 1)]);
  order.resize(rows);
  std::sort(order.begin(), order.end());
  return data.Subset(order);
}

GroupRun RunGroups(const SuiteConfig& cfg, const OwnerSplit& split, std::uint32_t m,
                   const std::vector<double>& ground_truth) {
  const chain::Scenario sc = MakeScenario(cfg, split, m);
  const chain::ProtocolResult res = chain::RunProtocol(sc);
  GroupRun run;
  run.num_groups = m;
  for (OwnerId o = 0; o < split.owners.size(); ++o) {
    run.totals.push_back(res.state.ledger.totals.at(o));
  }
  run.similarity = CosineSimilarity(run.totals, ground_truth);
  run.seconds = res.stats.train_seconds + res.stats.contract_seconds;
  run.models_trained = res.stats.models_trained;
  run.models_per_round =
      cfg.rounds > 0 ? res.stats.models_trained / static_cast<std::size_t>(cfg.rounds) : 0;
  run.rejections = res.stats.rejections;
  run.state_digest = ToHex(res.state.StateDigest());
  run.audit = res.audit;
  return run;
}

std::vector<double> Indices(std::size_t n) {
  std::vector<double> x(n);
  std::iota(x.begin(), x.end(), 0.0);
  return x;
}

std::string Num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

void SuiteConfig::Validate() const {
  if (num_owners < 1 || num_owners > static_cast<std::size_t>(kMaxGroundTruthOwners)) {
    throw InvalidArgument("owners must be in 1.." + std::to_string(kMaxGroundTruthOwners));
  }
  if (groups.empty() || sigmas.empty()) throw InvalidArgument("empty group or sigma grid");
  for (std::uint32_t m : groups) {
    if (m < 1 || m > num_owners) {
      throw InvalidArgument("group count " + std::to_string(m) + " outside 1..owners");
    }
  }
  for (double s : sigmas) {
    if (!(s >= 0.0)) throw InvalidArgument("sigma must be non-negative");
  }
  if (rounds < 1) throw InvalidArgument("the suite needs at least one round");
  if (num_miners < 1) throw InvalidArgument("need at least one miner");
  train.Validate();
}

const SigmaResult* ExperimentReport::ForSigma(double sigma) const {
  for (const SigmaResult& r : results) {
    if (r.sigma == sigma) return &r;
  }
  return nullptr;
}

OwnerSplit PrepareOwners(const SuiteConfig& config, const model::Dataset& full, double sigma) {
  const model::Dataset data = SampleRows(full, config.max_rows, SubSeed(config.seed, kRows));
  OwnerSplit split =
      SplitOwners(data, SplitConfig{0.8, config.num_owners, SubSeed(config.seed, kSplit)});
  for (std::size_t i = 0; i < split.owners.size(); ++i) {
    split.owners[i] =
        AddNoise(split.owners[i], i, NoiseConfig{sigma, SubSeed(config.seed, kNoise)});
  }
  return split;
}

chain::Scenario MakeScenario(const SuiteConfig& config, const OwnerSplit& split,
                             std::uint32_t num_groups) {
  chain::Scenario sc;
  sc.owner_data = split.owners;
  sc.test_set = split.test;
  sc.params.train = config.train;
  sc.params.rounds = config.rounds;
  sc.params.permutation_seed = config.seed;
  sc.params.num_groups = num_groups;
  sc.params.baseline = config.baseline;
  sc.miners = chain::MinerSet::AllHonest(config.num_miners, SubSeed(config.seed, kLeader));
  sc.key_seed = SubSeed(config.seed, kKeys);
  return sc;
}

ExperimentReport RunExperimentSuite(const SuiteConfig& config) {
  return RunExperimentSuite(config, LoadOptdigits(config.data_path));
}

ExperimentReport RunExperimentSuite(const SuiteConfig& config, const model::Dataset& full) {
  config.Validate();
  ExperimentReport report;
  report.config = config;

  for (double sigma : config.sigmas) {
    const OwnerSplit split = PrepareOwners(config, full, sigma);
    const model::UtilityEvaluator eval(split.test);
    if (report.results.empty()) {
      report.test_rows = split.test.size();
      report.dataset_rows = split.test.size();
      for (const auto& o : split.owners) {
        report.owner_rows.push_back(o.size());
        report.dataset_rows += o.size();
      }
    }
    SigmaResult sr;
    sr.sigma = sigma;
    const std::size_t n = split.owners.size();
    try {
      const GroundTruthResult gt = GroundTruthShapley(split.owners, eval, config.train,
                                                      config.rounds, config.ground_truth_threads);
      sr.ground_truth = gt.values;
      sr.ground_truth_seconds = gt.seconds;
      sr.ground_truth_models = gt.models_trained;
      sr.ground_truth_rho = n > 1 ? SpearmanRho(sr.ground_truth, Indices(n)) : 0.0;

      std::vector<double> ms, sims;
      for (std::uint32_t m : config.groups) {
        sr.runs.push_back(RunGroups(config, split, m, sr.ground_truth));
        ms.push_back(m);
        sims.push_back(sr.runs.back().similarity);
      }
      sr.similarity_trend = ms.size() > 1 ? SpearmanRho(sims, ms) : 0.0;
    } catch (const Error& e) {
      throw Error("sigma " + Num(sigma) + ": " + e.what());
    }
    report.results.push_back(std::move(sr));
  }
  return report;
}

std::vector<std::string> CheckReportInvariants(const ExperimentReport& report) {
  std::vector<std::string> bad;
  const std::size_t n = report.config.num_owners;
  const std::size_t native_models = (std::size_t{1} << n) - 1;
  for (const SigmaResult& sr : report.results) {
    const std::string at = "sigma " + Num(sr.sigma) + ": ";
    if (sr.ground_truth_models != native_models) {
      bad.push_back(at + "ground truth trained " + std::to_string(sr.ground_truth_models) +
                    " models, expected " + std::to_string(native_models));
    }
    for (const GroupRun& run : sr.runs) {
      const std::string atm = at + "m=" + std::to_string(run.num_groups) + ": ";
      if (!(run.similarity >= -1.0 && run.similarity <= 1.0)) {
        bad.push_back(atm + "similarity " + Num(run.similarity) + " outside [-1, 1]");
      }
      if (run.models_per_round != n ||
          run.models_trained != n * static_cast<std::size_t>(report.config.rounds)) {
        bad.push_back(atm + "trained " + std::to_string(run.models_trained) +
                      " local models, expected " + std::to_string(n) + " per round");
      }
    }
    if (sr.sigma == 0.0) {
      for (std::size_t i = 0; i < sr.ground_truth.size(); ++i) {
        if (std::abs(sr.ground_truth[i]) > kZeroNoiseBound) {
          bad.push_back(at + "ground truth |v_" + std::to_string(i) + "| = " +
                        Num(std::abs(sr.ground_truth[i])) + " exceeds " + Num(kZeroNoiseBound));
        }
      }
      if (sr.runs.size() > 1 && sr.similarity_trend > 0.0) {
        bad.push_back(at + "similarity rises with m (rho " + Num(sr.similarity_trend) + ")");
      }
    }
    if (sr.sigma == 0.5 && n == 9 && sr.ground_truth_rho > kQualityRhoBound) {
      bad.push_back(at + "ground truth rho vs owner index " + Num(sr.ground_truth_rho) +
                    " above " + Num(kQualityRhoBound));
    }
    if (sr.sigma >= 0.2) {
      if (sr.runs.size() > 1 && !(sr.similarity_trend > 0.0)) {
        bad.push_back(at + "similarity does not rise with m (rho " +
                      Num(sr.similarity_trend) + ")");
      }
      for (const GroupRun& run : sr.runs) {
        if (run.num_groups == 9 && run.similarity < kMinSimilarityAtNine) {
          bad.push_back(at + "similarity at m=9 is " + Num(run.similarity) + ", below " +
                        Num(kMinSimilarityAtNine));
        }
      }
    }
    if (report.config.ground_truth_threads == 1 && n == 9) {
      for (const GroupRun& run : sr.runs) {
        if (run.num_groups == 9 && run.seconds * kRuntimeFactor > sr.ground_truth_seconds) {
          bad.push_back(at + "GroupSV(m=9) took " + Num(run.seconds) + " s, NativeSV " +
                        Num(sr.ground_truth_seconds) + " s");
        }
      }
    }
  }
  return bad;
}

nlohmann::json ReportToJson(const ExperimentReport& report, bool with_timing) {
  const SuiteConfig& c = report.config;
  nlohmann::json config = {
      {"data", c.data_path.string()},
      {"owners", c.num_owners},
      {"groups", c.groups},
      {"sigmas", c.sigmas},
      {"rounds", c.rounds},
      {"seed", c.seed},
      {"learning_rate", c.train.learning_rate},
      {"local_epochs", c.train.local_epochs},
      {"miners", c.num_miners},
      {"baseline", std::string(chain::ToString(c.baseline))},
      {"max_rows", c.max_rows},
  };
  if (with_timing) config["ground_truth_threads"] = c.ground_truth_threads;

  nlohmann::json results = nlohmann::json::array();
  for (const SigmaResult& sr : report.results) {
    nlohmann::json runs = nlohmann::json::array();
    for (const GroupRun& run : sr.runs) {
      nlohmann::json r = {{"groups", run.num_groups},
                          {"totals", run.totals},
                          {"similarity", run.similarity},
                          {"models_trained", run.models_trained},
                          {"models_per_round", run.models_per_round},
                          {"rejections", run.rejections},
                          {"state_digest", run.state_digest}};
      if (with_timing) r["seconds"] = run.seconds;
      runs.push_back(std::move(r));
    }
    nlohmann::json s = {{"sigma", sr.sigma},
                        {"ground_truth", sr.ground_truth},
                        {"ground_truth_models", sr.ground_truth_models},
                        {"ground_truth_rho", sr.ground_truth_rho},
                        {"similarity_trend", sr.similarity_trend},
                        {"groupsv", std::move(runs)}};
    if (with_timing) s["ground_truth_seconds"] = sr.ground_truth_seconds;
    results.push_back(std::move(s));
  }
  nlohmann::json doc = {{"config", std::move(config)},
                        {"dataset_rows", report.dataset_rows},
                        {"test_rows", report.test_rows},
                        {"owner_rows", report.owner_rows},
                        {"results", std::move(results)}};
  if (with_timing) doc["violations"] = CheckReportInvariants(report);
  return doc;
}

void WriteReportFiles(const ExperimentReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream out(dir / name);
    if (!out) throw Error("cannot write " + (dir / name).string());
    return out;
  };

  open("report.json") << ReportToJson(report).dump(2) << '\n';

  {
    std::ofstream f1 = open("fig1.csv");
    f1 << "sigma,owner,ground_truth";
    for (std::uint32_t m : report.config.groups) f1 << ",groupsv_m" << m;
    f1 << '\n';
    for (const SigmaResult& sr : report.results) {
      for (std::size_t i = 0; i < sr.ground_truth.size(); ++i) {
        f1 << Num(sr.sigma) << ',' << i << ',' << Num(sr.ground_truth[i]);
        for (const GroupRun& run : sr.runs) f1 << ',' << Num(run.totals[i]);
        f1 << '\n';
      }
    }
  }
  {
    std::ofstream f2 = open("fig2.csv");
    f2 << "sigma,groups,similarity\n";
    for (const SigmaResult& sr : report.results) {
      for (const GroupRun& run : sr.runs) {
        f2 << Num(sr.sigma) << ',' << run.num_groups << ',' << Num(run.similarity) << '\n';
      }
    }
  }
  {
    std::ofstream t1 = open("table1.csv");
    t1 << "sigma,method,groups,seconds,models_trained,models_per_round\n";
    for (const SigmaResult& sr : report.results) {
      for (const GroupRun& run : sr.runs) {
        t1 << Num(sr.sigma) << ",GroupSV," << run.num_groups << ',' << Num(run.seconds) << ','
           << run.models_trained << ',' << run.models_per_round << '\n';
      }
      t1 << Num(sr.sigma) << ",NativeSV," << report.config.num_owners << ','
         << Num(sr.ground_truth_seconds) << ',' << sr.ground_truth_models << ",\n";
    }
  }
  {
    std::ofstream audit = open("audit.ndjson");
    for (const SigmaResult& sr : report.results) {
      for (const GroupRun& run : sr.runs) {
        for (const chain::AuditEvent& e : run.audit) {
          nlohmann::json j = e;
          j["sigma"] = sr.sigma;
          j["groups"] = run.num_groups;
          audit << j.dump() << '\n';
        }
      }
    }
  }
}

}  // namespace fedchain::experiment
