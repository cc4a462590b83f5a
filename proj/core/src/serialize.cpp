#include "sysrepro/serialize.hpp"

#include <cstdio>
#include <sstream>

#include "sysrepro/error.hpp"

namespace sysrepro {
namespace {

using nlohmann::json;

KeySource key_source_from(const std::string& s, const std::string& source) {
  if (s == "direct") return KeySource::direct;
  if (s == "derived") return KeySource::derived;
  throw ParseError(source, "unknown key source '" + s + "'");
}

template <typename F>
auto guarded(const std::string& source, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ParseError(source, e.what());
  } catch (const InputError& e) {
    throw ParseError(source, e.what());
  }
}

json location_json(const SyscallLocation& l) {
  return {{"syscall", l.syscall}, {"file", l.file}, {"function", l.function}, {"line", l.line}};
}

SyscallLocation location_from(const json& j) {
  return {j.at("syscall").get<std::string>(), j.at("file").get<std::string>(),
          j.at("function").get<std::string>(), j.at("line").get<int>()};
}

json point_json(const InstrumentationPoint& p) {
  json j = location_json(p.at);
  j["rank"] = p.rank;
  j["placement"] = std::string(to_string(p.placement));
  if (p.partner) j["partner"] = location_json(*p.partner);
  return j;
}

InstrumentationPoint point_from(const json& j) {
  InstrumentationPoint p;
  p.rank = j.at("rank").get<int>();
  p.at = location_from(j);
  p.placement = placement_from_string(j.at("placement").get<std::string>());
  if (j.contains("partner")) p.partner = location_from(j.at("partner"));
  return p;
}

json test_json(const TestCase& tc) {
  json j{{"command", tc.command},
         {"options", tc.options},
         {"inputs", tc.inputs},
         {"setup", tc.setup},
         {"command_line", tc.command_line()}};
  if (tc.expect_error) j["expect_error"] = true;
  if (!tc.frame.empty()) j["frame"] = tc.frame;
  return j;
}

json stream_json(const TokenStream& s) { return s.tokens; }

std::string fmt(double v, int digits = 4) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string ranks_text(const std::vector<int>& ranks) {
  std::string out;
  for (const int r : ranks) {
    if (!out.empty()) out.push_back(',');
    out += r > 0 ? std::to_string(r) : "-";
  }
  return out.empty() ? "-" : out;
}

std::string opt_rank(const std::optional<std::size_t>& r) { return r ? std::to_string(*r) : "-"; }

}  // namespace

void check_schema(const json& j, std::string_view expected, const std::string& source) {
  if (!j.is_object() || !j.contains("schema") || !j.at("schema").is_string())
    throw ParseError(source, "missing schema tag, expected " + std::string(expected));
  const auto got = j.at("schema").get<std::string>();
  if (got != expected)
    throw ParseError(source, "schema " + got + " where " + std::string(expected) + " was expected");
}

json to_json(const BugReport& report) {
  return {{"id", report.id}, {"subject", report.subject}, {"body", report.body}};
}

json to_json(const KeySystemCalls& keys) {
  json j{{"schema", kKeysSchema}, {"path", std::string(to_string(keys.path))}};
  j["entries"] = json::array();
  for (const auto& e : keys.entries) {
    json item{{"name", e.name}, {"count", e.count}, {"source", std::string(to_string(e.source))}};
    if (e.source == KeySource::derived) item["score"] = e.score;
    j["entries"].push_back(std::move(item));
  }
  j["by_sentence"] = json::array();
  for (const auto& [sentence, names] : keys.by_sentence)
    j["by_sentence"].push_back({{"sentence", sentence}, {"names", names}});
  j["subject_mentions"] = keys.subject_mentions;
  return j;
}

KeySystemCalls keys_from_json(const json& j, const std::string& source) {
  check_schema(j, kKeysSchema, source);
  return guarded(source, [&] {
    KeySystemCalls keys;
    keys.path = key_source_from(j.at("path").get<std::string>(), source);
    for (const auto& e : j.at("entries"))
      keys.entries.push_back({e.at("name").get<std::string>(), e.at("count").get<int>(),
                              key_source_from(e.at("source").get<std::string>(), source),
                              e.value("score", 0.0)});
    for (const auto& s : j.value("by_sentence", json::array()))
      keys.by_sentence[s.at("sentence").get<std::size_t>()] = s.at("names").get<std::vector<std::string>>();
    keys.subject_mentions = j.value("subject_mentions", std::vector<std::string>{});
    return keys;
  });
}

json to_json(const RankedFiles& files) {
  json j{{"schema", kRankedFilesSchema}, {"scheme", std::string(to_string(files.scheme))}};
  if (files.scheme == RankScheme::structured) {
    json labels = json::array();
    for (std::size_t q = 0; q < kStructuredQueries; ++q)
      for (const auto f : kDocFields)
        labels.push_back(std::string(to_string(static_cast<QueryKind>(q))) + "/" +
                         std::string(to_string(f)));
    j["breakdown_labels"] = labels;
  }
  j["entries"] = json::array();
  for (std::size_t i = 0; i < files.entries.size(); ++i) {
    const auto& e = files.entries[i];
    j["entries"].push_back(
        {{"rank", i + 1}, {"path", e.path}, {"score", e.score}, {"breakdown", e.breakdown}});
  }
  return j;
}

RankedFiles ranked_files_from_json(const json& j, const std::string& source) {
  check_schema(j, kRankedFilesSchema, source);
  return guarded(source, [&] {
    RankedFiles files;
    const auto scheme = j.at("scheme").get<std::string>();
    if (scheme != "basic" && scheme != "structured")
      throw ParseError(source, "unknown scheme '" + scheme + "'");
    files.scheme = scheme == "basic" ? RankScheme::basic : RankScheme::structured;
    for (const auto& e : j.at("entries"))
      files.entries.push_back({e.at("path").get<std::string>(), e.at("score").get<double>(),
                               e.value("breakdown", std::vector<double>{})});
    return files;
  });
}

json to_json(const PairRanking& ranking) {
  json j{{"schema", kPairsSchema}, {"enumerate_all", ranking.enumerate_all}};
  j["entries"] = json::array();
  for (const auto& e : ranking.entries)
    j["entries"].push_back({{"items", e.items}, {"frequency", e.frequency}});
  return j;
}

PairRanking pair_ranking_from_json(const json& j, const std::string& source) {
  check_schema(j, kPairsSchema, source);
  return guarded(source, [&] {
    PairRanking r;
    r.enumerate_all = j.value("enumerate_all", false);
    for (const auto& e : j.at("entries")) {
      RankedItemset item{e.at("items").get<std::vector<std::string>>(), e.at("frequency").get<int>()};
      if (item.items.empty() || item.items.size() > 2)
        throw ParseError(source, "itemsets hold one or two names");
      r.entries.push_back(std::move(item));
    }
    return r;
  });
}

json to_json(const LocateResult& located) {
  json j{{"schema", kPointsSchema}, {"points", json::array()}, {"diagnostics", located.diagnostics}};
  for (const auto& p : located.points) j["points"].push_back(point_json(p));
  return j;
}

LocateResult locate_result_from_json(const json& j, const std::string& source) {
  check_schema(j, kPointsSchema, source);
  return guarded(source, [&] {
    LocateResult r;
    for (const auto& p : j.at("points")) r.points.push_back(point_from(p));
    r.diagnostics = j.value("diagnostics", std::vector<std::string>{});
    return r;
  });
}

std::string points_tsv(const std::vector<InstrumentationPoint>& points) {
  std::ostringstream out;
  out << "rank\tsyscall\tfile\tfunction\tline\tplacement\tpartner\n";
  for (const auto& p : points) {
    out << p.rank << '\t' << p.at.syscall << '\t' << p.at.file << '\t' << p.at.function << '\t'
        << p.at.line << '\t' << to_string(p.placement) << '\t';
    if (p.partner)
      out << p.partner->syscall << '@' << p.partner->function << ':' << p.partner->line;
    else
      out << '-';
    out << '\n';
  }
  return out.str();
}

json to_json(const std::vector<TestCase>& tests) {
  json j{{"schema", kTestsSchema}, {"tests", json::array()}};
  for (const auto& tc : tests) j["tests"].push_back(test_json(tc));
  return j;
}

std::vector<TestCase> tests_from_json(const json& j, const std::string& source) {
  check_schema(j, kTestsSchema, source);
  return guarded(source, [&] {
    std::vector<TestCase> out;
    for (const auto& t : j.at("tests")) {
      TestCase tc;
      tc.command = t.at("command").get<std::string>();
      tc.options = t.value("options", std::vector<std::string>{});
      tc.inputs = t.value("inputs", std::vector<std::string>{});
      tc.setup = t.value("setup", std::vector<std::string>{});
      tc.expect_error = t.value("expect_error", false);
      tc.frame = t.value("frame", std::vector<std::string>{});
      out.push_back(std::move(tc));
    }
    return out;
  });
}

json to_json(const ReproResult& r, bool timing) {
  json j{{"schema", kReproSchema}, {"reproduced", r.reproduced}, {"attempts", r.attempts}};
  if (r.schedule) {
    json steps = json::array();
    for (const auto& s : r.schedule->steps) steps.push_back({{"process", s.process}, {"op", s.op}});
    json delays = json::array();
    for (const auto& d : r.schedule->injected_delays)
      delays.push_back({{"process", d.process},
                        {"op", d.op},
                        {"placement", std::string(to_string(d.placement))}});
    j["schedule"] = {{"steps", steps}, {"injected_delays", delays}, {"lines", r.schedule_text}};
  } else {
    j["schedule"] = nullptr;
  }
  j["point_used"] = r.point_used ? point_json(*r.point_used) : json(nullptr);
  j["test_case"] = r.test_case ? test_json(*r.test_case) : json(nullptr);
  j["diagnostics"] = r.diagnostics;
  if (timing) j["wall_time_ms"] = r.wall_time_ms;
  return j;
}

json to_json(const SourceIndex& index) {
  json j{{"schema", kIndexSchema}, {"content_hash", index.content_hash()}};
  j["docs"] = json::array();
  for (const auto& d : index.docs()) {
    json fields;
    for (const auto f : kDocFields) fields[std::string(to_string(f))] = stream_json(d.field(f));
    j["docs"].push_back({{"path", d.path}, {"fields", fields}});
  }
  j["functions"] = json::array();
  for (const auto& f : index.functions()) {
    json sites = json::array();
    for (const auto& s : f.syscall_sites) sites.push_back({s.syscall, s.line});
    j["functions"].push_back({{"name", f.name},
                              {"file", f.file},
                              {"start_line", f.start_line},
                              {"end_line", f.end_line},
                              {"calls", sites}});
  }
  j["call_graph"] = json::array();
  for (const auto& [from, to] : index.call_graph().edges) j["call_graph"].push_back({from, to});
  j["diagnostics"] = index.scan_diagnostics();
  return j;
}

SourceIndex source_index_from_json(const json& j, const std::string& source) {
  check_schema(j, kIndexSchema, source);
  return guarded(source, [&] {
    std::vector<SourceDoc> docs;
    for (const auto& d : j.at("docs")) {
      SourceDoc doc;
      doc.path = d.at("path").get<std::string>();
      for (const auto f : kDocFields) {
        doc.field(f).tokens = d.at("fields").at(std::string(to_string(f))).get<std::vector<std::string>>();
        doc.field(f).origin = TokenOrigin::doc_field;
      }
      docs.push_back(std::move(doc));
    }
    std::vector<FunctionRecord> functions;
    for (const auto& f : j.at("functions")) {
      FunctionRecord rec{f.at("name").get<std::string>(), f.at("file").get<std::string>(),
                         f.at("start_line").get<int>(), f.at("end_line").get<int>(), {}};
      for (const auto& s : f.at("calls"))
        rec.syscall_sites.push_back({s.at(0).get<std::string>(), s.at(1).get<int>()});
      functions.push_back(std::move(rec));
    }
    return SourceIndex(std::move(docs), std::move(functions),
                       j.value("diagnostics", std::vector<std::string>{}),
                       j.at("content_hash").get<std::string>());
  });
}

json to_json(const std::vector<ExperimentRow>& rows, bool timing) {
  json j{{"schema", kResultsSchema}, {"rows", json::array()}};
  for (const auto& r : rows) {
    json row{{"bug", r.bug},
             {"mode", r.mode},
             {"scored", r.scored},
             {"BRk", r.basic_rank ? json(*r.basic_rank) : json(nullptr)},
             {"SRk", r.structured_rank ? json(*r.structured_rank) : json(nullptr)},
             {"Syscalls", r.syscalls},
             {"key_path", r.key_path},
             {"ORnk", r.count_ranks},
             {"Rank", r.ranks},
             {"Rec", r.recall},
             {"MAP", r.ap},
             {"Suc", r.reproduced},
             {"NoR", r.attempts}};
    if (timing) row["Time_ms"] = r.time_ms;
    j["rows"].push_back(std::move(row));
  }
  return j;
}

std::string results_tsv(const std::vector<ExperimentRow>& rows, bool timing) {
  std::ostringstream out;
  out << "Bug\tMode\tBRk\tSRk\tSyscalls\tORnk\tRank\tRec\tMAP\tSuc\tNoR";
  if (timing) out << "\tTime_ms";
  out << '\n';
  for (const auto& r : rows) {
    out << r.bug << '\t' << r.mode << '\t';
    if (r.scored) {
      out << opt_rank(r.basic_rank) << '\t' << opt_rank(r.structured_rank) << '\t' << r.syscalls
          << '\t' << ranks_text(r.count_ranks) << '\t' << ranks_text(r.ranks) << '\t'
          << fmt(r.recall, 2) << '\t' << fmt(r.ap, 4);
    } else {
      out << "-\t-\t" << r.syscalls << "\t-\t-\t-\t-";
    }
    out << '\t' << (r.reproduced ? 'Y' : 'N') << '\t' << r.attempts;
    if (timing) out << '\t' << fmt(r.time_ms, 1);
    out << '\n';
  }
  return out.str();
}

}  // namespace sysrepro
