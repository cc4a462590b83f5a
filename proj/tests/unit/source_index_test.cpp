#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"
#include "sysrepro/c_scanner.hpp"
#include "sysrepro/error.hpp"
#include "sysrepro/serialize.hpp"
#include "sysrepro/source_index.hpp"

namespace sysrepro {
namespace {

namespace fs = std::filesystem;

using testing::grep_call_lines;

TEST(SourceIndexTest, CopyInternalCallsUnlinkBeforeRename) {
  const auto index = index_tree(testing::fixture("mv_438076") / "src");
  const auto it = std::find_if(index.functions().begin(), index.functions().end(),
                               [](const auto& f) { return f.name == "copy_internal"; });
  ASSERT_NE(it, index.functions().end());
  EXPECT_EQ(it->file, "copy.c");
  int unlink_line = 0;
  int rename_line = 0;
  for (const auto& s : it->syscall_sites) {
    EXPECT_GE(s.line, it->start_line);
    EXPECT_LE(s.line, it->end_line);
    if (s.syscall == "unlink" && !unlink_line) unlink_line = s.line;
    if (s.syscall == "rename" && !rename_line) rename_line = s.line;
  }
  ASSERT_GT(unlink_line, 0);
  ASSERT_GT(rename_line, 0);
  EXPECT_LT(unlink_line, rename_line);
}

TEST(SourceIndexTest, UnlinkSitesInCopyMatchGrepOracle) {
  const auto dir = testing::fixture("mv_438076") / "src";
  const auto index = index_tree(dir);
  const auto sites = index.find_syscall_sites("unlink", "copy.c");
  const auto oracle = grep_call_lines(testing::read_file(dir / "copy.c"), "unlink");
  EXPECT_EQ(sites.size(), 2u);
  std::vector<int> lines;
  for (const auto& s : sites) lines.push_back(s.line);
  EXPECT_EQ(lines, oracle);
}

TEST(SourceIndexTest, EverySiteMatchesGrepOracleOnFixtures) {
  for (const char* name : {"mv_438076", "gzip_155746", "chmod_race"}) {
    const auto dir = testing::fixture(name) / "src";
    const auto index = index_tree(dir);
    for (const char* sys : {"unlink", "rename", "open", "close", "chmod", "fchmodat", "link"}) {
      for (const auto& doc : index.docs()) {
        std::vector<int> got;
        for (const auto& s : index.find_syscall_sites(sys, doc.path)) got.push_back(s.line);
        const auto text = testing::read_file(dir / doc.path);
        auto want = grep_call_lines(text, sys);
        // Prototypes are declarations, not call sites.
        std::erase_if(want, [&](int line) { return index.function_at(doc.path, line) == nullptr; });
        EXPECT_EQ(got, want) << name << "/" << doc.path << " " << sys;
      }
    }
  }
}

TEST(SourceIndexTest, FileWithoutFunctions) {
  const auto index = testing::index_of({{"decls.h", "/* only declarations */\nint x;\nvoid f (void);\n"}});
  ASSERT_EQ(index.docs().size(), 1u);
  EXPECT_TRUE(index.docs()[0].field(DocField::function_names).empty());
  EXPECT_FALSE(index.docs()[0].field(DocField::full_text).empty());
  EXPECT_TRUE(index.functions().empty());
}

TEST(SourceIndexTest, CallGraphEdge) {
  const auto index = index_tree(testing::fixture("mv_438076") / "src");
  EXPECT_TRUE(index.call_graph().has_edge("main", "do_link"));
  EXPECT_TRUE(index.call_graph().has_edge("copy", "copy_internal"));
  EXPECT_TRUE(index.call_graph().reaches("do_move", "copy_internal"));
  EXPECT_FALSE(index.call_graph().reaches("copy_internal", "do_move"));
}

TEST(SourceIndexTest, CallGraphEdgesAreCallsBetweenDefinedFunctions) {
  const auto index = index_tree(testing::fixture("mv_438076") / "src");
  const auto& g = index.call_graph();
  for (const auto& [caller, callee] : g.edges) {
    EXPECT_TRUE(g.nodes.contains(caller));
    EXPECT_TRUE(g.nodes.contains(callee));
    bool found = false;
    for (const auto& f : index.functions())
      if (f.name == caller)
        for (const auto& s : f.syscall_sites) found = found || s.syscall == callee;
    EXPECT_TRUE(found) << caller << " -> " << callee;
  }
}

TEST(SourceIndexTest, AbsentSyscallHasNoSites) {
  const auto index = index_tree(testing::fixture("mv_438076") / "src");
  EXPECT_TRUE(index.find_syscall_sites("mount").empty());
}

TEST(SourceIndexTest, CommentedOutCallIsNotASite) {
  const auto index = testing::index_of(
      {{"a.c", "void f (void)\n{\n  /* unlink(f); */\n  // unlink(g);\n  puts (\"unlink(h)\");\n}\n"}});
  EXPECT_TRUE(index.find_syscall_sites("unlink").empty());
  EXPECT_EQ(index.find_syscall_sites("puts").size(), 1u);
}

TEST(SourceIndexTest, MemberCallsAndKeywordsAreNotSites) {
  const auto index = testing::index_of(
      {{"a.c", "void f (struct ops *o)\n{\n  o->unlink (x);\n  s.rename (y);\n  if (z) return;\n}\n"}});
  EXPECT_TRUE(index.find_syscall_sites("unlink").empty());
  EXPECT_TRUE(index.find_syscall_sites("rename").empty());
  EXPECT_TRUE(index.find_syscall_sites("if").empty());
}

TEST(SourceIndexTest, DocumentFields) {
  const auto index = testing::index_of({{"dir/copy.c",
                                         "/* Copy files. */\n"
                                         "static int copy_internal (char const *src_name)\n"
                                         "{\n  int dst_fd = open (src_name, 0);\n  return dst_fd;\n}\n"}});
  const auto* doc = index.doc("dir/copy.c");
  ASSERT_NE(doc, nullptr);
  EXPECT_EQ(doc->field(DocField::file_name).tokens, (std::vector<std::string>{"dir", "copi"}));
  const auto& fn = doc->field(DocField::function_names).tokens;
  EXPECT_NE(std::find(fn.begin(), fn.end(), "copy_internal"), fn.end());
  const auto& vars = doc->field(DocField::variable_names).tokens;
  EXPECT_NE(std::find(vars.begin(), vars.end(), "dst_fd"), vars.end());
  EXPECT_NE(std::find(vars.begin(), vars.end(), "src_name"), vars.end());
  const auto& full = doc->field(DocField::full_text).tokens;
  EXPECT_NE(std::find(full.begin(), full.end(), "file"), full.end());
  EXPECT_EQ(std::find(full.begin(), full.end(), "static"), full.end());
}

TEST(SourceIndexTest, ReindexingIsIdentical) {
  const auto dir = testing::fixture("mv_438076") / "src";
  EXPECT_EQ(to_json(index_tree(dir)).dump(), to_json(index_tree(dir)).dump());
  EXPECT_EQ(tree_content_hash(dir), tree_content_hash(dir));
}

TEST(SourceIndexTest, DocumentsOrderedByPath) {
  const auto index = index_tree(testing::fixture("mv_438076") / "src");
  EXPECT_TRUE(std::is_sorted(index.docs().begin(), index.docs().end(),
                             [](const auto& a, const auto& b) { return a.path < b.path; }));
}

TEST(SourceIndexTest, EmptyTreeThrows) {
  const auto dir = fs::temp_directory_path() / "sysrepro_empty_tree";
  fs::remove_all(dir);
  fs::create_directories(dir);
  testing::write_file(dir / "notes.txt", "no C here");
  EXPECT_THROW(index_tree(dir), InputError);
  fs::remove_all(dir);
}

TEST(SourceIndexTest, CacheRoundTripAndInvalidation) {
  const auto dir = fs::temp_directory_path() / "sysrepro_cache_tree";
  fs::remove_all(dir);
  testing::write_file(dir / "src/a.c", "int main (void)\n{\n  return unlink (\"x\");\n}\n");
  const auto cache = dir / "index.json";
  const auto first = index_tree_cached(dir / "src", cache);
  ASSERT_TRUE(fs::exists(cache));
  const auto second = index_tree_cached(dir / "src", cache);
  EXPECT_EQ(to_json(first).dump(), to_json(second).dump());
  testing::write_file(dir / "src/a.c", "int main (void)\n{\n  return rename (\"x\", \"y\");\n}\n");
  const auto third = index_tree_cached(dir / "src", cache);
  EXPECT_TRUE(third.find_syscall_sites("unlink").empty());
  EXPECT_EQ(third.find_syscall_sites("rename").size(), 1u);
  fs::remove_all(dir);
}

TEST(CScannerTest, FunctionSpansAndCalls) {
  const auto scan = scan_c(
      "#include <stdio.h>\n"
      "#define X(a) \\\n  foo(a)\n"
      "int\nmain (int argc, char **argv)\n{\n  if (argc) {\n    puts (\"}\");\n  }\n  return 0;\n}\n");
  ASSERT_EQ(scan.functions.size(), 1u);
  EXPECT_EQ(scan.functions[0].name, "main");
  EXPECT_EQ(scan.functions[0].start_line, 5);
  EXPECT_EQ(scan.functions[0].end_line, 11);
  ASSERT_EQ(scan.calls[0].size(), 1u);
  EXPECT_EQ(scan.calls[0][0].callee, "puts");
  EXPECT_EQ(scan.calls[0][0].line, 8);
}

TEST(CScannerTest, TokenizerSkipsCommentsAndKeepsLines) {
  const auto tokens = tokenize_c("a /* b\n c */ d // e\n'f' \"g\" 12");
  std::vector<std::string> ids;
  for (const auto& t : tokens)
    if (t.kind == CTokenKind::identifier) ids.push_back(t.text + "@" + std::to_string(t.line));
  EXPECT_EQ(ids, (std::vector<std::string>{"a@1", "d@2"}));
}

}  // namespace
}  // namespace sysrepro
