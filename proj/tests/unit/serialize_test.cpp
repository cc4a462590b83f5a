#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "support.hpp"
#include "sysrepro/error.hpp"
#include "sysrepro/pipeline.hpp"
#include "sysrepro/serialize.hpp"

namespace sysrepro {
namespace {

using nlohmann::json;

json reparse(const json& j) { return json::parse(j.dump(2)); }

const PipelineResult& mv_result() {
  static const PipelineResult r = [] {
    PipelineConfig c;
    c.report = testing::fixture("mv_438076") / "report.txt";
    c.src = testing::fixture("mv_438076") / "src";
    c.man_dir = testing::man_dir();
    c.scenario = testing::fixture("mv_438076") / "scenario.json";
    c.tsl = testing::fixture("mv_438076") / "mv.tsl";
    return run_pipeline(c);
  }();
  return r;
}

TEST(SerializeTest, KeysRoundTrip) {
  const auto& keys = mv_result().keys;
  const auto back = keys_from_json(reparse(to_json(keys)));
  EXPECT_EQ(back.path, keys.path);
  ASSERT_EQ(back.entries.size(), keys.entries.size());
  for (std::size_t i = 0; i < keys.entries.size(); ++i) {
    EXPECT_EQ(back.entries[i].name, keys.entries[i].name);
    EXPECT_EQ(back.entries[i].count, keys.entries[i].count);
    EXPECT_EQ(back.entries[i].source, keys.entries[i].source);
    EXPECT_EQ(back.entries[i].score, keys.entries[i].score);
  }
  EXPECT_EQ(back.by_sentence, keys.by_sentence);
  EXPECT_EQ(back.subject_mentions, keys.subject_mentions);
}

TEST(SerializeTest, RankedFilesRoundTrip) {
  const auto& files = mv_result().files;
  const auto back = ranked_files_from_json(reparse(to_json(files)));
  EXPECT_EQ(back.scheme, files.scheme);
  ASSERT_EQ(back.entries.size(), files.entries.size());
  for (std::size_t i = 0; i < files.entries.size(); ++i) {
    EXPECT_EQ(back.entries[i].path, files.entries[i].path);
    EXPECT_EQ(back.entries[i].score, files.entries[i].score);
    EXPECT_EQ(back.entries[i].breakdown, files.entries[i].breakdown);
  }
}

TEST(SerializeTest, PairsPointsAndTestsRoundTrip) {
  const auto& r = mv_result();
  const auto pairs = pair_ranking_from_json(reparse(to_json(r.ranking)));
  EXPECT_EQ(pairs.entries, r.ranking.entries);
  EXPECT_EQ(pairs.enumerate_all, r.ranking.enumerate_all);
  const auto located = locate_result_from_json(reparse(to_json(r.located)));
  EXPECT_EQ(located.points, r.located.points);
  EXPECT_EQ(located.diagnostics, r.located.diagnostics);
  const auto tests = tests_from_json(reparse(to_json(r.tests)));
  ASSERT_EQ(tests.size(), r.tests.size());
  for (std::size_t i = 0; i < tests.size(); ++i) {
    EXPECT_TRUE(tests[i].same_invocation(r.tests[i]));
    EXPECT_EQ(tests[i].frame, r.tests[i].frame);
    EXPECT_EQ(tests[i].expect_error, r.tests[i].expect_error);
  }
}

TEST(SerializeTest, IndexRoundTrip) {
  const auto index = index_tree(testing::fixture("mv_438076") / "src");
  const auto back = source_index_from_json(reparse(to_json(index)));
  EXPECT_EQ(back.content_hash(), index.content_hash());
  ASSERT_EQ(back.docs().size(), index.docs().size());
  for (std::size_t i = 0; i < index.docs().size(); ++i) {
    EXPECT_EQ(back.docs()[i].path, index.docs()[i].path);
    for (std::size_t f = 0; f < kDocFields.size(); ++f)
      EXPECT_EQ(back.docs()[i].fields[f].tokens, index.docs()[i].fields[f].tokens);
  }
  EXPECT_EQ(back.call_graph().edges, index.call_graph().edges);
  EXPECT_EQ(back.find_syscall_sites("unlink"), index.find_syscall_sites("unlink"));
  EXPECT_EQ(to_json(back).dump(), to_json(index).dump());
}

TEST(SerializeTest, ReproTimingIsOptional) {
  const auto& repro = *mv_result().repro;
  const auto without = to_json(repro, false);
  EXPECT_FALSE(without.contains("wall_time_ms"));
  EXPECT_TRUE(to_json(repro, true).contains("wall_time_ms"));
  EXPECT_EQ(without["schema"], kReproSchema);
  EXPECT_TRUE(without["reproduced"].get<bool>());
}

TEST(SerializeTest, SchemaIsChecked) {
  auto j = to_json(mv_result().keys);
  j["schema"] = "sysrepro.keys/2";
  EXPECT_THROW(keys_from_json(j, "k.json"), ParseError);
  EXPECT_THROW(ranked_files_from_json(to_json(mv_result().keys)), ParseError);
  EXPECT_THROW(pair_ranking_from_json(json::array()), ParseError);
  auto broken = to_json(mv_result().ranking);
  broken.erase("entries");
  EXPECT_THROW(pair_ranking_from_json(broken), ParseError);
}

TEST(SerializeTest, PointsTsv) {
  InstrumentationPoint p{1, {"unlink", "copy.c", "copy_internal", 187},
                         SyscallLocation{"rename", "copy.c", "copy_internal", 198},
                         Placement::between_pair};
  InstrumentationPoint q{2, {"chmod", "a.c", "f", 3}, std::nullopt, Placement::after};
  EXPECT_EQ(points_tsv({p, q}),
            "rank\tsyscall\tfile\tfunction\tline\tplacement\tpartner\n"
            "1\tunlink\tcopy.c\tcopy_internal\t187\tbetween-pair\trename@copy_internal:198\n"
            "2\tchmod\ta.c\tf\t3\tafter\t-\n");
}

TEST(SerializeTest, ResultsTable) {
  ExperimentRow scored;
  scored.bug = "b";
  scored.mode = "apriori";
  scored.scored = true;
  scored.basic_rank = 2;
  scored.structured_rank = 1;
  scored.syscalls = 5;
  scored.count_ranks = {3, 0};
  scored.ranks = {1, 2};
  scored.recall = 1.0;
  scored.ap = 0.75;
  scored.reproduced = true;
  scored.attempts = 1;
  ExperimentRow unscored;
  unscored.bug = "c";
  unscored.mode = "apriori";
  unscored.syscalls = 0;
  const auto tsv = results_tsv({scored, unscored}, false);
  const auto header = tsv.substr(0, tsv.find('\n'));
  EXPECT_EQ(header, "Bug\tMode\tBRk\tSRk\tSyscalls\tORnk\tRank\tRec\tMAP\tSuc\tNoR");
  EXPECT_NE(tsv.find("\nc\tapriori\t-\t-\t0\t-\t-\t-\t-\tN\t0\n"), std::string::npos);
  EXPECT_NE(results_tsv({scored}, true).find("Time_ms"), std::string::npos);
  const auto j = to_json(std::vector<ExperimentRow>{scored}, false);
  EXPECT_EQ(j["schema"], kResultsSchema);
}

TEST(SerializeTest, ByteIdenticalReruns) {
  const auto a = to_json(mv_result().located).dump(2);
  PipelineConfig c;
  c.report = testing::fixture("mv_438076") / "report.txt";
  c.src = testing::fixture("mv_438076") / "src";
  c.man_dir = testing::man_dir();
  const auto again = run_pipeline(c);
  EXPECT_EQ(to_json(again.located).dump(2), a);
  EXPECT_EQ(to_json(again.files).dump(2), to_json(mv_result().files).dump(2));
}

}  // namespace
}  // namespace sysrepro
