#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sysrepro/catalog.hpp"
#include "sysrepro/error.hpp"
#include "sysrepro/experiment.hpp"
#include "sysrepro/harness.hpp"
#include "sysrepro/pipeline.hpp"
#include "sysrepro/serialize.hpp"

namespace fs = std::filesystem;
using namespace sysrepro;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNotReproduced = 1;
constexpr int kExitError = 2;

struct Options {
  std::string report;
  std::string src;
  std::string man_dir;
  std::string scenario;
  std::string tsl;
  std::string bundle;
  std::string corpus;
  std::string keys;
  std::string files;
  std::string pairs;
  std::string points;
  std::string tests;
  std::string index_cache;
  std::vector<std::string> commands;
  int n_derived = kDefaultDerivedN;
  int top_files = kDefaultTopFiles;
  int top_n = kDefaultRecallK;
  int max_attempts = kDefaultMaxAttempts;
  std::optional<std::uint64_t> seed;
  std::string mode;
  std::string out_dir = ".";
  bool subject_transaction = false;
  bool timing = false;
};

fs::path default_man_dir() {
  const fs::path installed = SYSREPRO_DEFAULT_MAN_DIR;
  std::error_code ec;
  if (fs::is_directory(installed, ec)) return installed;
  return SYSREPRO_SOURCE_MAN_DIR;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json read_json(const fs::path& path) {
  try {
    return nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string(), e.what());
  }
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

void write_json(const fs::path& path, const nlohmann::json& j) { write_text(path, j.dump(2) + "\n"); }

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

/// Loads inputs lazily; a stage artifact given on the command line wins over
/// recomputing it from the report.
class Session {
 public:
  explicit Session(const Options& opt) : opt_(opt) {
    config_.report = opt.report;
    config_.src = opt.src;
    config_.man_dir = opt.man_dir.empty() ? default_man_dir() : fs::path(opt.man_dir);
    config_.scenario = opt.scenario;
    if (!opt.tsl.empty()) config_.tsl = opt.tsl;
    config_.known_commands = opt.commands;
    config_.n_derived = opt.n_derived;
    config_.top_files = opt.top_files;
    config_.top_n = opt.top_n;
    config_.max_attempts = opt.max_attempts;
    config_.seed = opt.seed;
    config_.subject_transaction = opt.subject_transaction;
    if (!opt.mode.empty())
      for (const auto& m : parse_modes(opt.mode)) config_ = m.apply(std::move(config_));
    config_.validate();
  }

  const PipelineConfig& config() const { return config_; }
  fs::path out(const std::string& name) const { return fs::path(opt_.out_dir) / name; }

  const BugReport& report() {
    if (!report_) {
      if (opt_.report.empty()) throw ConfigError("--report is required");
      auto r = load_report(opt_.report);
      if (config_.perturb_fraction) r = perturb_report(r, *config_.perturb_fraction, *config_.seed);
      report_ = std::move(r);
    }
    return *report_;
  }

  const SyscallCatalog& catalog() {
    if (!catalog_) catalog_ = SyscallCatalog::load(config_.man_dir);
    return *catalog_;
  }

  const SourceIndex& index() {
    if (!index_) {
      if (opt_.src.empty()) throw ConfigError("--src is required");
      index_ = opt_.index_cache.empty() ? index_tree(opt_.src)
                                        : index_tree_cached(opt_.src, opt_.index_cache);
    }
    return *index_;
  }

  const KeySystemCalls& keys() {
    if (!keys_) {
      keys_ = opt_.keys.empty() ? stage_extract(report(), catalog(), config_)
                                : keys_from_json(read_json(opt_.keys), opt_.keys);
    }
    return *keys_;
  }

  const RankedFiles& files() {
    if (!files_) {
      files_ = opt_.files.empty() ? stage_rank(report(), keys(), index(), config_)
                                  : ranked_files_from_json(read_json(opt_.files), opt_.files);
    }
    return *files_;
  }

  const PairRanking& pairs() {
    if (!pairs_) {
      pairs_ = opt_.pairs.empty() ? stage_mine(keys(), config_)
                                  : pair_ranking_from_json(read_json(opt_.pairs), opt_.pairs);
    }
    return *pairs_;
  }

  const LocateResult& points() {
    if (!points_) {
      points_ = opt_.points.empty()
                    ? stage_locate(pairs(), files(), index(), catalog(), config_)
                    : locate_result_from_json(read_json(opt_.points), opt_.points);
    }
    return *points_;
  }

  /// Whether the points came from the enumerate-all fallback.
  bool enumerate_all() {
    if (!opt_.pairs.empty() || opt_.points.empty()) return pairs().enumerate_all;
    return false;
  }

  const std::vector<TestCase>& tests() {
    if (!tests_) {
      if (!opt_.tests.empty()) {
        tests_ = tests_from_json(read_json(opt_.tests), opt_.tests);
      } else {
        std::optional<TslSpec> tsl;
        if (config_.tsl) tsl = load_tsl(config_.tsl->string());
        tests_ = stage_tests(report(), tsl, known_commands());
      }
    }
    return *tests_;
  }

  const Scenario& scenario() {
    if (!scenario_) {
      if (opt_.scenario.empty()) throw ConfigError("--scenario is required");
      scenario_ = load_scenario(opt_.scenario);
    }
    return *scenario_;
  }

 private:
  std::vector<std::string> known_commands() {
    if (!config_.known_commands.empty()) return config_.known_commands;
    if (!opt_.scenario.empty() && !scenario().command.empty()) return {scenario().command};
    return {};
  }

  const Options& opt_;
  PipelineConfig config_;
  std::optional<BugReport> report_;
  std::optional<SyscallCatalog> catalog_;
  std::optional<SourceIndex> index_;
  std::optional<KeySystemCalls> keys_;
  std::optional<RankedFiles> files_;
  std::optional<PairRanking> pairs_;
  std::optional<LocateResult> points_;
  std::optional<std::vector<TestCase>> tests_;
  std::optional<Scenario> scenario_;
};

void print_diagnostics(const std::vector<std::string>& notes) {
  for (const auto& n : notes) std::cerr << "note: " << n << "\n";
}

void summarize_keys(const KeySystemCalls& keys) {
  std::cout << "key system calls (" << to_string(keys.path) << "):";
  for (const auto& e : keys.entries) std::cout << " " << e.name << "x" << e.count;
  std::cout << "\n";
}

void summarize_files(const RankedFiles& files, std::size_t limit) {
  std::cout << "ranked files (" << to_string(files.scheme) << "):\n";
  for (std::size_t i = 0; i < files.entries.size() && i < limit; ++i)
    std::cout << "  " << i + 1 << ". " << files.entries[i].path << "  " << files.entries[i].score
              << "\n";
}

void summarize_pairs(const PairRanking& ranking) {
  if (ranking.enumerate_all) {
    std::cout << "no key system calls; every site is a candidate\n";
    return;
  }
  std::cout << "ranked itemsets:\n";
  for (std::size_t i = 0; i < ranking.entries.size(); ++i) {
    std::cout << "  " << i + 1 << ". {";
    for (std::size_t k = 0; k < ranking.entries[i].items.size(); ++k)
      std::cout << (k ? ", " : "") << ranking.entries[i].items[k];
    std::cout << "} " << ranking.entries[i].frequency << "\n";
  }
}

void summarize_points(const LocateResult& located) {
  std::cout << located.points.size() << " instrumentation points\n";
  std::cout << points_tsv(located.points);
  print_diagnostics(located.diagnostics);
}

void summarize_tests(const std::vector<TestCase>& tests) {
  std::cout << tests.size() << " test cases\n";
  for (const auto& t : tests) std::cout << "  " << t.command_line() << "\n";
}

int summarize_repro(const ReproResult& r) {
  print_diagnostics(r.diagnostics);
  if (!r.reproduced) {
    std::cout << "not reproduced after " << r.attempts << " attempts\n";
    return kExitNotReproduced;
  }
  std::cout << "reproduced in attempt " << r.attempts << "\n";
  std::cout << join_lines(r.schedule_text);
  return kExitOk;
}

void save_repro(Session& s, const ReproResult& r, bool timing) {
  write_json(s.out("repro.json"), to_json(r, timing));
  write_text(s.out("schedule.txt"), join_lines(r.schedule_text));
}

int cmd_extract(Session& s) {
  const auto& keys = s.keys();
  write_json(s.out("keys.json"), to_json(keys));
  summarize_keys(keys);
  return kExitOk;
}

int cmd_rank_files(Session& s) {
  const auto& files = s.files();
  write_json(s.out("ranked_files.json"), to_json(files));
  summarize_files(files, static_cast<std::size_t>(s.config().top_files));
  return kExitOk;
}

int cmd_mine_pairs(Session& s) {
  const auto& ranking = s.pairs();
  write_json(s.out("pairs.json"), to_json(ranking));
  summarize_pairs(ranking);
  return kExitOk;
}

int cmd_locate(Session& s) {
  const auto& located = s.points();
  write_json(s.out("points.json"), to_json(located));
  write_text(s.out("points.tsv"), points_tsv(located.points));
  summarize_points(located);
  return kExitOk;
}

int cmd_gen_tests(Session& s) {
  const auto& tests = s.tests();
  write_json(s.out("tests.json"), to_json(tests));
  summarize_tests(tests);
  return kExitOk;
}

int cmd_reproduce(Session& s, bool timing) {
  const auto& scn = s.scenario();
  std::vector<TestCase> tests;
  if (scn.has_placeholders()) tests = s.tests();
  const auto result = stage_reproduce(scn, s.points(), s.enumerate_all(), tests, s.config());
  save_repro(s, result, timing);
  return summarize_repro(result);
}

int cmd_index(Session& s, const Options& opt) {
  const auto& index = s.index();
  const fs::path target = opt.index_cache.empty() ? s.out("index.json") : fs::path(opt.index_cache);
  write_json(target, to_json(index));
  std::cout << "indexed " << index.docs().size() << " files, " << index.functions().size()
            << " functions, hash " << index.content_hash() << "\n";
  print_diagnostics(index.diagnostics());
  return kExitOk;
}

int cmd_pipeline(Session& s, const Options& opt) {
  PipelineResult r;
  if (!opt.bundle.empty()) {
    const auto bundle = load_bundle(opt.bundle);
    PipelineInputs inputs;
    inputs.report = bundle.report;
    inputs.catalog = &s.catalog();
    inputs.index = &bundle.index;
    inputs.scenario = bundle.scenario;
    inputs.tsl = bundle.tsl;
    inputs.known_commands = s.config().known_commands.empty() ? bundle.known_commands
                                                              : s.config().known_commands;
    r = run_pipeline(inputs, s.config());
  } else {
    r = run_pipeline(s.config());
  }
  write_json(s.out("keys.json"), to_json(r.keys));
  write_json(s.out("ranked_files.json"), to_json(r.files));
  write_json(s.out("pairs.json"), to_json(r.ranking));
  write_json(s.out("points.json"), to_json(r.located));
  write_text(s.out("points.tsv"), points_tsv(r.located.points));
  write_json(s.out("tests.json"), to_json(r.tests));
  summarize_keys(r.keys);
  summarize_files(r.files, 3);
  summarize_points(r.located);
  if (!r.repro) return kExitOk;
  save_repro(s, *r.repro, opt.timing);
  return summarize_repro(*r.repro);
}

int cmd_eval(Session& s, const Options& opt) {
  if (opt.corpus.empty()) throw ConfigError("--corpus is required");
  std::vector<Bundle> corpus;
  for (const auto& dir : find_bundles(opt.corpus)) corpus.push_back(load_bundle(dir));
  const auto modes = parse_modes(opt.mode.empty() ? "structured-ir" : opt.mode);
  const PipelineConfig& base = s.config();
  for (const auto& m : modes) {
    if ((m.kind == ModeKind::random_baseline || m.kind == ModeKind::perturbed) && !base.seed)
      throw ConfigError("mode " + m.name() + " needs an explicit --seed");
  }
  const auto rows = run_experiment(corpus, s.catalog(), base, modes);
  write_text(s.out("results.tsv"), results_tsv(rows, opt.timing));
  write_json(s.out("results.json"), to_json(rows, opt.timing));
  std::cout << results_tsv(rows, opt.timing);
  for (const auto& m : modes)
    if (const auto map = mode_map(rows, m.name())) std::cout << "MAP " << m.name() << " " << *map << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Localize and reproduce system-call concurrency bugs from bug reports"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--man-dir", opt.man_dir, "Directory of <syscall>.txt manual NAME texts");
    sub->add_option("--out-dir", opt.out_dir, "Directory for output artifacts")->capture_default_str();
    sub->add_option("--mode", opt.mode,
                    "Comma list of basic-ir, structured-ir, apriori, no-apriori, "
                    "random-baseline, perturbed@<f>");
    sub->add_option("--seed", opt.seed, "Seed for stochastic modes");
    sub->add_flag("--timing", opt.timing, "Record wall time in outputs");
  };
  auto add_report = [&](CLI::App* sub) {
    sub->add_option("--report", opt.report, "Bug report (text or JSON)");
    sub->add_option("--n-derived", opt.n_derived, "Derived key system calls")->capture_default_str();
    sub->add_option("--keys", opt.keys, "keys.json from a previous extract");
  };
  auto add_source = [&](CLI::App* sub) {
    sub->add_option("--src", opt.src, "Source tree root");
    sub->add_option("--index-cache", opt.index_cache, "Cached source index file");
  };
  auto add_mining = [&](CLI::App* sub) {
    sub->add_flag("--subject-transaction", opt.subject_transaction,
                  "Count the subject line as a transaction");
    sub->add_option("--pairs", opt.pairs, "pairs.json from a previous mine-pairs");
  };
  auto add_locate = [&](CLI::App* sub) {
    sub->add_option("--files", opt.files, "ranked_files.json from a previous rank-files");
    sub->add_option("--top-files", opt.top_files, "Files searched for sites")->capture_default_str();
    sub->add_option("--points", opt.points, "points.json from a previous locate");
  };
  auto add_tests = [&](CLI::App* sub) {
    sub->add_option("--tsl", opt.tsl, "TSL test specification");
    sub->add_option("--command", opt.commands, "Known command name (repeatable)");
    sub->add_option("--tests", opt.tests, "tests.json from a previous gen-tests");
  };
  auto add_repro = [&](CLI::App* sub) {
    sub->add_option("--scenario", opt.scenario, "Scenario JSON");
    sub->add_option("--max-attempts", opt.max_attempts, "Attempt budget")->capture_default_str();
  };

  auto* extract = app.add_subcommand("extract", "Extract key system calls from a report");
  add_common(extract);
  add_report(extract);

  auto* rank = app.add_subcommand("rank-files", "Rank source files against a report");
  add_common(rank);
  add_report(rank);
  add_source(rank);

  auto* mine = app.add_subcommand("mine-pairs", "Rank system-call pairs from the report");
  add_common(mine);
  add_report(mine);
  add_mining(mine);

  auto* loc = app.add_subcommand("locate", "Find instrumentation points in the ranked files");
  add_common(loc);
  add_report(loc);
  add_source(loc);
  add_mining(loc);
  add_locate(loc);

  auto* gen = app.add_subcommand("gen-tests", "Build test cases from the report and a TSL spec");
  add_common(gen);
  add_report(gen);
  add_tests(gen);
  gen->add_option("--scenario", opt.scenario, "Scenario JSON supplying the command name");

  auto* repro = app.add_subcommand("reproduce", "Replay the scenario with injected delays");
  add_common(repro);
  add_report(repro);
  add_source(repro);
  add_mining(repro);
  add_locate(repro);
  add_tests(repro);
  add_repro(repro);

  auto* pipe = app.add_subcommand("pipeline", "Run every stage on one bug");
  add_common(pipe);
  add_report(pipe);
  add_source(pipe);
  add_mining(pipe);
  add_tests(pipe);
  add_repro(pipe);
  pipe->add_option("--top-files", opt.top_files, "Files searched for sites")->capture_default_str();
  pipe->add_option("--bundle", opt.bundle, "Fixture directory holding bundle.json");

  auto* eval = app.add_subcommand("eval", "Score every bundle in a corpus");
  add_common(eval);
  eval->add_option("--corpus", opt.corpus, "Directory of bundles")->required();
  eval->add_option("--n-derived", opt.n_derived)->capture_default_str();
  eval->add_option("--top-files", opt.top_files)->capture_default_str();
  eval->add_option("--top-n", opt.top_n, "Cutoff for recall")->capture_default_str();
  eval->add_option("--max-attempts", opt.max_attempts)->capture_default_str();

  auto* index = app.add_subcommand("index", "Index a source tree");
  add_common(index);
  add_source(index);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (eval->parsed()) {
      // The eval mode list names rows, it is not applied to the base config.
      const std::string modes = opt.mode;
      opt.mode.clear();
      Session s(opt);
      opt.mode = modes;
      return cmd_eval(s, opt);
    }
    Session s(opt);
    if (extract->parsed()) return cmd_extract(s);
    if (rank->parsed()) return cmd_rank_files(s);
    if (mine->parsed()) return cmd_mine_pairs(s);
    if (loc->parsed()) return cmd_locate(s);
    if (gen->parsed()) return cmd_gen_tests(s);
    if (repro->parsed()) return cmd_reproduce(s, opt.timing);
    if (pipe->parsed()) return cmd_pipeline(s, opt);
    if (index->parsed()) return cmd_index(s, opt);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
