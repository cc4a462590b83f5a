#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "sysrepro/catalog.hpp"
#include "sysrepro/experiment.hpp"
#include "sysrepro/harness.hpp"
#include "sysrepro/locate.hpp"
#include "sysrepro/miner.hpp"
#include "sysrepro/ranking.hpp"
#include "sysrepro/report.hpp"
#include "sysrepro/source_index.hpp"
#include "sysrepro/testcase.hpp"

namespace sysrepro {

// Every artifact carries a "schema" tag "sysrepro.<kind>/<version>".
inline constexpr std::string_view kKeysSchema = "sysrepro.keys/1";
inline constexpr std::string_view kRankedFilesSchema = "sysrepro.ranked_files/1";
inline constexpr std::string_view kPairsSchema = "sysrepro.pairs/1";
inline constexpr std::string_view kPointsSchema = "sysrepro.points/1";
inline constexpr std::string_view kTestsSchema = "sysrepro.tests/1";
inline constexpr std::string_view kReproSchema = "sysrepro.repro/1";
inline constexpr std::string_view kIndexSchema = "sysrepro.index/1";
inline constexpr std::string_view kResultsSchema = "sysrepro.results/1";

/// Throws ParseError unless j["schema"] equals `expected`.
void check_schema(const nlohmann::json& j, std::string_view expected, const std::string& source);

nlohmann::json to_json(const BugReport& report);

nlohmann::json to_json(const KeySystemCalls& keys);
KeySystemCalls keys_from_json(const nlohmann::json& j, const std::string& source = "<keys>");

nlohmann::json to_json(const RankedFiles& files);
RankedFiles ranked_files_from_json(const nlohmann::json& j, const std::string& source = "<files>");

nlohmann::json to_json(const PairRanking& ranking);
PairRanking pair_ranking_from_json(const nlohmann::json& j, const std::string& source = "<pairs>");

nlohmann::json to_json(const LocateResult& located);
LocateResult locate_result_from_json(const nlohmann::json& j, const std::string& source = "<points>");
/// Columns: rank, syscall, file, function, line, placement, partner.
std::string points_tsv(const std::vector<InstrumentationPoint>& points);

nlohmann::json to_json(const std::vector<TestCase>& tests);
std::vector<TestCase> tests_from_json(const nlohmann::json& j, const std::string& source = "<tests>");

/// Wall time is written only when `timing` is set so that artifacts stay
/// byte-identical across runs.
nlohmann::json to_json(const ReproResult& result, bool timing);

nlohmann::json to_json(const SourceIndex& index);
SourceIndex source_index_from_json(const nlohmann::json& j, const std::string& source = "<index>");

nlohmann::json to_json(const std::vector<ExperimentRow>& rows, bool timing);
/// Tab-separated table with the BRk/SRk/Syscalls/ORnk/Rank/Rec/MAP/Suc/NoR
/// columns, plus Time when `timing` is set.
std::string results_tsv(const std::vector<ExperimentRow>& rows, bool timing);

}  // namespace sysrepro
