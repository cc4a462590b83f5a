#include "sysrepro/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <set>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sysrepro/error.hpp"

namespace sysrepro {
namespace fs = std::filesystem;
namespace {

nlohmann::json read_json(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string(), e.what());
  }
}

std::set<std::string> truth_keys(const GroundTruth& truth) {
  std::set<std::string> out;
  for (const auto& s : truth.syscalls) out.insert(location_key(s));
  return out;
}

std::vector<std::string> keys_of(const std::vector<SyscallLocation>& ranked) {
  std::vector<std::string> out;
  for (const auto& l : ranked) out.push_back(location_key(l));
  return out;
}

}  // namespace

GroundTruth load_truth(const fs::path& path) {
  const auto j = read_json(path);
  GroundTruth t;
  try {
    t.bug_id = j.at("bug_id").get<std::string>();
    t.files = j.value("files", std::vector<std::string>{});
    for (const auto& s : j.at("syscalls"))
      t.syscalls.push_back({s.at("syscall").get<std::string>(), s.at("file").get<std::string>(),
                            s.at("function").get<std::string>(), s.at("line").get<int>()});
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string(), e.what());
  }
  if (t.syscalls.empty()) throw ParseError(path.string(), "ground truth lists no syscalls");
  return t;
}

Bundle load_bundle(const fs::path& dir) {
  const auto manifest_path = dir / "bundle.json";
  const auto m = read_json(manifest_path);
  auto field = [&](const char* key) -> std::optional<fs::path> {
    if (!m.contains(key)) return std::nullopt;
    return dir / m.at(key).get<std::string>();
  };
  auto need = [&](const char* key) {
    auto p = field(key);
    if (!p) throw ParseError(manifest_path.string(), std::string("missing field '") + key + "'");
    return *p;
  };

  Bundle b;
  b.dir = dir;
  b.id = m.value("id", dir.filename().string());
  b.known_commands = m.value("known_commands", std::vector<std::string>{});
  b.report = load_report(need("report"));
  b.index = index_tree(need("src"));
  b.scenario = load_scenario(need("scenario"));
  if (const auto tsl = field("tsl")) b.tsl = load_tsl(tsl->string());
  if (const auto truth = field("truth"); truth && fs::exists(*truth)) b.truth = load_truth(*truth);
  if (b.known_commands.empty() && !b.scenario.command.empty())
    b.known_commands.push_back(b.scenario.command);
  return b;
}

std::vector<fs::path> find_bundles(const fs::path& root) {
  if (fs::exists(root / "bundle.json")) return {root};
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw InputError("corpus directory not found: " + root.string());
  std::vector<fs::path> out;
  for (const auto& item : fs::directory_iterator(root))
    if (item.is_directory() && fs::exists(item.path() / "bundle.json")) out.push_back(item.path());
  std::sort(out.begin(), out.end());
  return out;
}

std::string ExperimentMode::name() const {
  switch (kind) {
    case ModeKind::structured_ir:
      return "structured-ir";
    case ModeKind::basic_ir:
      return "basic-ir";
    case ModeKind::apriori:
      return "apriori";
    case ModeKind::no_apriori:
      return "no-apriori";
    case ModeKind::random_baseline:
      return "random-baseline";
    case ModeKind::perturbed: {
      std::ostringstream out;
      out << "perturbed@" << fraction;
      return out.str();
    }
  }
  return "?";
}

ExperimentMode ExperimentMode::parse(std::string_view text) {
  if (text == "structured-ir") return {ModeKind::structured_ir};
  if (text == "basic-ir") return {ModeKind::basic_ir};
  if (text == "apriori") return {ModeKind::apriori};
  if (text == "no-apriori") return {ModeKind::no_apriori};
  if (text == "random-baseline") return {ModeKind::random_baseline};
  if (text.starts_with("perturbed@")) {
    const std::string num(text.substr(10));
    char* end = nullptr;
    const double f = std::strtod(num.c_str(), &end);
    if (num.empty() || *end != '\0' || !(f >= 0.0 && f <= 1.0))
      throw ConfigError("bad perturbation fraction in mode '" + std::string(text) + "'");
    return {ModeKind::perturbed, f};
  }
  throw ConfigError("unknown mode '" + std::string(text) + "'");
}

PipelineConfig ExperimentMode::apply(PipelineConfig c) const {
  switch (kind) {
    case ModeKind::structured_ir:
      c.scheme = RankScheme::structured;
      break;
    case ModeKind::basic_ir:
      c.scheme = RankScheme::basic;
      break;
    case ModeKind::apriori:
      c.miner = MinerMode::apriori;
      break;
    case ModeKind::no_apriori:
      c.miner = MinerMode::by_count;
      break;
    case ModeKind::random_baseline:
      c.random_baseline = true;
      break;
    case ModeKind::perturbed:
      c.perturb_fraction = fraction;
      break;
  }
  return c;
}

std::vector<ExperimentMode> parse_modes(std::string_view list) {
  std::vector<ExperimentMode> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const auto comma = list.find(',', start);
    const auto item = list.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                         : comma - start);
    if (!item.empty()) out.push_back(ExperimentMode::parse(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw ConfigError("no modes given");
  return out;
}

ExperimentRow run_experiment_row(const Bundle& bundle, const SyscallCatalog& catalog,
                                 const PipelineConfig& base, const ExperimentMode& mode) {
  const auto config = mode.apply(base);
  config.validate();

  PipelineInputs inputs;
  inputs.report = bundle.report;
  inputs.catalog = &catalog;
  inputs.index = &bundle.index;
  inputs.scenario = bundle.scenario;
  inputs.tsl = bundle.tsl;
  inputs.known_commands = bundle.known_commands;

  const auto start = std::chrono::steady_clock::now();
  const auto result = run_pipeline(inputs, config);
  const auto elapsed =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  ExperimentRow row;
  row.bug = bundle.id;
  row.mode = mode.name();
  row.time_ms = elapsed;
  row.syscalls = result.keys.entries.size();
  row.key_path = std::string(to_string(result.keys.path));
  if (result.repro) {
    row.reproduced = result.repro->reproduced;
    row.attempts = result.repro->attempts;
  }
  if (!bundle.truth) return row;

  // File ranks and the count-ordered ablation use the same (possibly
  // perturbed) report as the mode itself.
  const auto& truth = *bundle.truth;
  row.scored = true;
  if (!truth.files.empty()) {
    row.basic_rank = rank_basic(result.report, bundle.index).rank_of(truth.files.front());
    row.structured_rank =
        rank_structured(result.report, result.keys, bundle.index).rank_of(truth.files.front());
  }
  const auto ranked = ranked_locations(result.located.points);
  row.ranks = truth_ranks(ranked, truth);

  auto by_count = config;
  by_count.miner = MinerMode::by_count;
  const auto count_ranking = stage_mine(result.keys, by_count);
  const auto count_points = stage_locate(count_ranking, result.files, bundle.index, catalog, by_count);
  row.count_ranks = truth_ranks(ranked_locations(count_points.points), truth);

  const auto relevant = truth_keys(truth);
  const auto ranked_keys = keys_of(ranked);
  row.recall = recall_at_k(ranked_keys, relevant, config.top_n);
  row.ap = average_precision(ranked_keys, relevant);
  return row;
}

std::vector<ExperimentRow> run_experiment(const std::vector<Bundle>& corpus,
                                          const SyscallCatalog& catalog,
                                          const PipelineConfig& base,
                                          const std::vector<ExperimentMode>& modes) {
  std::vector<ExperimentRow> rows;
  for (const auto& bundle : corpus)
    for (const auto& mode : modes) rows.push_back(run_experiment_row(bundle, catalog, base, mode));
  return rows;
}

std::optional<double> mode_map(const std::vector<ExperimentRow>& rows, const std::string& mode) {
  std::vector<double> aps;
  for (const auto& r : rows)
    if (r.scored && r.mode == mode) aps.push_back(r.ap);
  if (aps.empty()) return std::nullopt;
  return mean_average_precision(aps);
}

}  // namespace sysrepro
