#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sysrepro/catalog.hpp"
#include "sysrepro/scenario.hpp"
#include "sysrepro/source_index.hpp"

namespace sysrepro::testing {

inline std::filesystem::path test_data_dir() { return SYSREPRO_TEST_DATA_DIR; }
inline std::filesystem::path fixture_dir() { return SYSREPRO_FIXTURE_DIR; }
inline std::filesystem::path fixture(const std::string& name) { return fixture_dir() / name; }
inline std::filesystem::path man_dir() { return SYSREPRO_MAN_DIR; }

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
}

/// Shared across tests; loading the catalog builds a TF-IDF index.
inline const SyscallCatalog& bundled_catalog() {
  static const SyscallCatalog catalog = SyscallCatalog::load(man_dir());
  return catalog;
}

inline SyscallCatalog small_catalog(const std::vector<std::pair<std::string, std::string>>& entries) {
  std::vector<ManPageEntry> v;
  for (const auto& [name, text] : entries) v.push_back({name, text});
  return SyscallCatalog(std::move(v));
}

/// Index over in-memory files keyed by relative path.
inline SourceIndex index_of(const std::map<std::string, std::string>& files) {
  std::vector<SourceDoc> docs;
  std::vector<FunctionRecord> functions;
  for (const auto& [path, content] : files) {
    auto [doc, fns] = index_file(path, content);
    docs.push_back(std::move(doc));
    functions.insert(functions.end(), fns.begin(), fns.end());
  }
  return SourceIndex(std::move(docs), std::move(functions), {}, "");
}

inline Scenario scenario_from_text(const std::string& json_text) {
  return scenario_from_json(nlohmann::json::parse(json_text), "<test>");
}

/// Two-process unlink/rename scenario with the reader of the classic mv race.
inline Scenario mv_scenario() {
  return scenario_from_text(R"({
    "schema": "sysrepro.scenario/1",
    "id": "mv",
    "command": "",
    "initial_fs": [
      {"path": "foo", "kind": "file", "mode": "0644", "content": "old"},
      {"path": "bar", "kind": "file", "mode": "0644", "content": "new"}
    ],
    "processes": [
      {"name": "mv", "ops": ["unlink foo", "rename bar foo"]},
      {"name": "cat", "ops": ["open foo"]}
    ],
    "oracle": {"kind": "open_enoent", "path": "foo"},
    "src_map": [
      {"file": "copy.c", "function": "copy_internal", "line": 187, "process": "mv", "op": 0},
      {"file": "copy.c", "function": "copy_internal", "line": 198, "process": "mv", "op": 1}
    ]
  })");
}

/// Lines where `name (` appears outside comments and string literals.
inline std::vector<int> grep_call_lines(const std::string& source, const std::string& name) {
  std::string clean;
  bool block = false;
  for (std::size_t i = 0; i < source.size(); ++i) {
    const char c = source[i];
    const char n = i + 1 < source.size() ? source[i + 1] : '\0';
    if (block) {
      if (c == '*' && n == '/') {
        block = false;
        ++i;
      } else {
        clean.push_back(c == '\n' ? '\n' : ' ');
      }
      continue;
    }
    if (c == '/' && n == '*') {
      block = true;
      ++i;
      continue;
    }
    if (c == '/' && n == '/') {
      while (i < source.size() && source[i] != '\n') ++i;
      clean.push_back('\n');
      continue;
    }
    if (c == '"') {
      ++i;
      while (i < source.size() && source[i] != '"') {
        if (source[i] == '\\') ++i;
        ++i;
      }
      continue;
    }
    clean.push_back(c);
  }
  const std::regex call("(^|[^A-Za-z0-9_.>])" + name + "\\s*\\(");
  std::vector<int> lines;
  std::istringstream in(clean);
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (std::regex_search(line, call)) lines.push_back(no);
  }
  return lines;
}

}  // namespace sysrepro::testing
