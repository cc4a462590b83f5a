#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sysrepro/catalog.hpp"
#include "sysrepro/metrics.hpp"
#include "sysrepro/pipeline.hpp"
#include "sysrepro/scenario.hpp"
#include "sysrepro/source_index.hpp"
#include "sysrepro/testcase.hpp"

namespace sysrepro {

/// One fixture: report, source tree, scenario, optional TSL spec and
/// ground truth, described by `<dir>/bundle.json`.
struct Bundle {
  std::string id;
  std::filesystem::path dir;
  std::vector<std::string> known_commands;
  BugReport report;
  SourceIndex index;
  Scenario scenario;
  std::optional<TslSpec> tsl;
  std::optional<GroundTruth> truth;
};

Bundle load_bundle(const std::filesystem::path& dir);

/// `root` itself when it holds bundle.json, else its bundle subdirectories
/// sorted by name.
std::vector<std::filesystem::path> find_bundles(const std::filesystem::path& root);

GroundTruth load_truth(const std::filesystem::path& path);

enum class ModeKind { structured_ir, basic_ir, apriori, no_apriori, random_baseline, perturbed };

struct ExperimentMode {
  ModeKind kind = ModeKind::structured_ir;
  double fraction = 0.0;  // perturbed only

  std::string name() const;
  /// "basic-ir", "structured-ir", "no-apriori", "apriori",
  /// "random-baseline" or "perturbed@<f>".
  static ExperimentMode parse(std::string_view text);
  /// `base` with this mode's single dimension changed.
  PipelineConfig apply(PipelineConfig base) const;
};

std::vector<ExperimentMode> parse_modes(std::string_view comma_list);

struct ExperimentRow {
  std::string bug;
  std::string mode;
  bool scored = false;
  std::optional<std::size_t> basic_rank;       // BRk
  std::optional<std::size_t> structured_rank;  // SRk
  std::size_t syscalls = 0;
  std::string key_path;
  std::vector<int> count_ranks;  // ORnk
  std::vector<int> ranks;        // Rank
  double recall = 0.0;
  double ap = 0.0;
  bool reproduced = false;
  int attempts = 0;
  double time_ms = 0.0;
};

/// One row per (bundle, mode); an empty corpus gives an empty table.
std::vector<ExperimentRow> run_experiment(const std::vector<Bundle>& corpus,
                                          const SyscallCatalog& catalog,
                                          const PipelineConfig& base,
                                          const std::vector<ExperimentMode>& modes);

ExperimentRow run_experiment_row(const Bundle& bundle, const SyscallCatalog& catalog,
                                 const PipelineConfig& base, const ExperimentMode& mode);

/// MAP over the scored rows of one mode.
std::optional<double> mode_map(const std::vector<ExperimentRow>& rows, const std::string& mode);

}  // namespace sysrepro
