#include "sysrepro/pipeline.hpp"

#include "sysrepro/error.hpp"
#include "sysrepro/metrics.hpp"

namespace sysrepro {

void PipelineConfig::validate() const {
  auto positive = [](int v, const char* name) {
    if (v < 1) throw ConfigError(std::string(name) + " must be >= 1, got " + std::to_string(v));
  };
  positive(n_derived, "--n-derived");
  positive(top_files, "--top-files");
  positive(top_n, "--top-n");
  positive(max_attempts, "--max-attempts");
  if (random_budget_runs < 0) throw ConfigError("random baseline budget must be >= 0");
  if ((random_baseline || perturb_fraction) && !seed)
    throw ConfigError("stochastic modes need an explicit --seed");
  if (perturb_fraction && !(*perturb_fraction >= 0.0 && *perturb_fraction <= 1.0))
    throw ConfigError("perturbation fraction must lie in [0, 1]");
}

KeySystemCalls stage_extract(const BugReport& report, const SyscallCatalog& catalog,
                             const PipelineConfig& config) {
  return extract(report, catalog, config.n_derived);
}

RankedFiles stage_rank(const BugReport& report, const KeySystemCalls& keys,
                       const SourceIndex& index, const PipelineConfig& config) {
  return config.scheme == RankScheme::basic ? rank_basic(report, index)
                                            : rank_structured(report, keys, index);
}

PairRanking stage_mine(const KeySystemCalls& keys, const PipelineConfig& config) {
  if (keys.path == KeySource::derived || keys.empty()) return rank_fallback(keys);
  if (config.miner == MinerMode::by_count) return rank_by_count(keys);
  return mine_pairs(build_transactions(keys, config.subject_transaction));
}

LocateResult stage_locate(const PairRanking& ranking, const RankedFiles& files,
                          const SourceIndex& index, const SyscallCatalog& catalog,
                          const PipelineConfig& config) {
  return locate(ranking, files, index, config.top_files, &catalog);
}

std::vector<TestCase> stage_tests(const BugReport& report, const std::optional<TslSpec>& tsl,
                                  const std::vector<std::string>& known_commands) {
  auto candidates = extract_candidates(report, known_commands);
  if (!tsl) return candidates;
  return expand_tsl(*tsl, candidates);
}

ReproResult stage_reproduce(const Scenario& scenario, const LocateResult& located,
                            bool enumerate_all, const std::vector<TestCase>& tests,
                            const PipelineConfig& config) {
  if (config.random_baseline) {
    const Scenario* target = &scenario;
    std::optional<Scenario> bound;
    std::vector<std::string> notes;
    if (scenario.has_placeholders()) {
      for (const auto& tc : tests) {
        auto b = bind_scenario(scenario, tc);
        if (auto* s = std::get_if<Scenario>(&b)) {
          bound = std::move(*s);
          target = &*bound;
          break;
        }
      }
      if (!bound) notes.push_back("no test case binds the scenario; running it unbound");
    }
    auto result = random_baseline(*target, config.random_budget_runs, *config.seed);
    result.diagnostics.insert(result.diagnostics.begin(), notes.begin(), notes.end());
    return result;
  }
  ReproOptions options;
  options.max_attempts = config.max_attempts;
  options.enumerate_all = enumerate_all;
  return reproduce(scenario, located.points, tests, options);
}

PipelineResult run_pipeline(const PipelineInputs& inputs, const PipelineConfig& config) {
  config.validate();
  if (!inputs.catalog || !inputs.index) throw InputError("pipeline needs a catalog and a source index");

  PipelineResult r;
  r.report = config.perturb_fraction
                 ? perturb_report(inputs.report, *config.perturb_fraction, *config.seed)
                 : inputs.report;
  r.keys = stage_extract(r.report, *inputs.catalog, config);
  r.files = stage_rank(r.report, r.keys, *inputs.index, config);
  r.ranking = stage_mine(r.keys, config);
  r.located = stage_locate(r.ranking, r.files, *inputs.index, *inputs.catalog, config);
  r.tests = stage_tests(r.report, inputs.tsl, inputs.known_commands);
  if (inputs.scenario)
    r.repro = stage_reproduce(*inputs.scenario, r.located, r.ranking.enumerate_all, r.tests, config);
  return r;
}

PipelineResult run_pipeline(const PipelineConfig& config) {
  config.validate();
  const auto catalog = SyscallCatalog::load(config.man_dir);
  const auto index = index_tree(config.src);
  PipelineInputs inputs;
  inputs.report = load_report(config.report);
  inputs.catalog = &catalog;
  inputs.index = &index;
  if (!config.scenario.empty()) inputs.scenario = load_scenario(config.scenario);
  if (config.tsl) inputs.tsl = load_tsl(config.tsl->string());
  inputs.known_commands = config.known_commands;
  if (inputs.known_commands.empty() && inputs.scenario && !inputs.scenario->command.empty())
    inputs.known_commands.push_back(inputs.scenario->command);
  return run_pipeline(inputs, config);
}

}  // namespace sysrepro
