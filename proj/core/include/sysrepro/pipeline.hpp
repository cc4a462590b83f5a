#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sysrepro/catalog.hpp"
#include "sysrepro/error.hpp"
#include "sysrepro/harness.hpp"
#include "sysrepro/locate.hpp"
#include "sysrepro/metrics.hpp"
#include "sysrepro/miner.hpp"
#include "sysrepro/ranking.hpp"
#include "sysrepro/report.hpp"
#include "sysrepro/scenario.hpp"
#include "sysrepro/source_index.hpp"
#include "sysrepro/testcase.hpp"

namespace sysrepro {

enum class MinerMode { apriori, by_count };

inline constexpr int kDefaultDerivedN = 10;
inline constexpr int kDefaultRandomBudgetRuns = 120;

struct PipelineConfig {
  std::filesystem::path report;
  std::filesystem::path src;
  std::filesystem::path man_dir;
  std::filesystem::path scenario;
  std::optional<std::filesystem::path> tsl;
  std::vector<std::string> known_commands;

  int n_derived = kDefaultDerivedN;
  int top_files = kDefaultTopFiles;
  int top_n = kDefaultRecallK;
  int max_attempts = kDefaultMaxAttempts;
  std::optional<std::uint64_t> seed;

  RankScheme scheme = RankScheme::structured;
  MinerMode miner = MinerMode::apriori;
  bool subject_transaction = false;
  bool random_baseline = false;
  int random_budget_runs = kDefaultRandomBudgetRuns;
  std::optional<double> perturb_fraction;

  /// Throws ConfigError for non-positive integers or a stochastic mode
  /// without a seed.
  void validate() const;
};

/// Inputs already loaded in memory; the catalog and index are borrowed.
struct PipelineInputs {
  BugReport report;
  const SyscallCatalog* catalog = nullptr;
  const SourceIndex* index = nullptr;
  std::optional<Scenario> scenario;
  std::optional<TslSpec> tsl;
  std::vector<std::string> known_commands;
};

struct PipelineResult {
  BugReport report;
  KeySystemCalls keys;
  RankedFiles files;
  PairRanking ranking;
  LocateResult located;
  std::vector<TestCase> tests;
  std::optional<ReproResult> repro;
};

KeySystemCalls stage_extract(const BugReport& report, const SyscallCatalog& catalog,
                             const PipelineConfig& config);
RankedFiles stage_rank(const BugReport& report, const KeySystemCalls& keys,
                       const SourceIndex& index, const PipelineConfig& config);
PairRanking stage_mine(const KeySystemCalls& keys, const PipelineConfig& config);
LocateResult stage_locate(const PairRanking& ranking, const RankedFiles& files,
                          const SourceIndex& index, const SyscallCatalog& catalog,
                          const PipelineConfig& config);
std::vector<TestCase> stage_tests(const BugReport& report, const std::optional<TslSpec>& tsl,
                                  const std::vector<std::string>& known_commands);
ReproResult stage_reproduce(const Scenario& scenario, const LocateResult& located,
                            bool enumerate_all, const std::vector<TestCase>& tests,
                            const PipelineConfig& config);

/// All stages in order. The report is perturbed first when the config asks
/// for it; reproduction runs only when a scenario is present.
PipelineResult run_pipeline(const PipelineInputs& inputs, const PipelineConfig& config);

/// Loads everything named by `config` and runs the stages.
PipelineResult run_pipeline(const PipelineConfig& config);

}  // namespace sysrepro
