#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sysrepro/text.hpp"

namespace sysrepro {

enum class DocField { file_name = 0, function_names = 1, variable_names = 2, full_text = 3 };

inline constexpr std::array<DocField, 4> kDocFields{DocField::file_name, DocField::function_names,
                                                    DocField::variable_names, DocField::full_text};

std::string_view to_string(DocField field);

struct SourceDoc {
  /// Path relative to the indexed root, '/' separated.
  std::string path;
  std::array<TokenStream, 4> fields;

  const TokenStream& field(DocField f) const { return fields[static_cast<std::size_t>(f)]; }
  TokenStream& field(DocField f) { return fields[static_cast<std::size_t>(f)]; }
};

struct SyscallSite {
  std::string syscall;
  int line = 0;

  friend bool operator==(const SyscallSite&, const SyscallSite&) = default;
};

struct FunctionRecord {
  std::string name;
  std::string file;
  int start_line = 0;
  int end_line = 0;
  /// Every call-position identifier in the body, in source order.
  std::vector<SyscallSite> syscall_sites;
};

/// Direct textual calls between functions defined in the tree. Nodes are
/// function names; a name defined in several files is one node.
struct CallGraph {
  std::set<std::string> nodes;
  std::set<std::pair<std::string, std::string>> edges;

  bool has_edge(const std::string& caller, const std::string& callee) const;
  /// True when `to` is reachable from `from` by one or more edges.
  bool reaches(const std::string& from, const std::string& to) const;
};

struct SiteRef {
  std::string file;
  std::string function;
  int line = 0;

  friend auto operator<=>(const SiteRef&, const SiteRef&) = default;
};

class SourceIndex {
 public:
  SourceIndex() = default;
  SourceIndex(std::vector<SourceDoc> docs, std::vector<FunctionRecord> functions,
              std::vector<std::string> diagnostics, std::string content_hash);

  const std::vector<SourceDoc>& docs() const noexcept { return docs_; }
  const std::vector<FunctionRecord>& functions() const noexcept { return functions_; }
  const CallGraph& call_graph() const noexcept { return graph_; }
  /// Scan diagnostics followed by call-graph notes.
  std::vector<std::string> diagnostics() const;
  /// Diagnostics given at construction, without derived notes.
  const std::vector<std::string>& scan_diagnostics() const noexcept { return diagnostics_; }
  const std::string& content_hash() const noexcept { return hash_; }

  const SourceDoc* doc(std::string_view path) const;

  /// Call sites of `syscall`, sorted by (file, line).
  std::vector<SiteRef> find_syscall_sites(std::string_view syscall) const;
  /// Same, restricted to one file.
  std::vector<SiteRef> find_syscall_sites(std::string_view syscall, std::string_view file) const;

  /// Innermost function of `file` spanning `line`, if any.
  const FunctionRecord* function_at(std::string_view file, int line) const;

 private:
  std::vector<SourceDoc> docs_;
  std::vector<FunctionRecord> functions_;  // sorted by (file, start_line)
  CallGraph graph_;
  std::vector<std::string> diagnostics_;
  std::vector<std::string> graph_notes_;
  std::string hash_;
};

/// Indexes one file's text under `rel_path`.
std::pair<SourceDoc, std::vector<FunctionRecord>> index_file(const std::string& rel_path,
                                                             std::string_view content);

/// Recursively indexes every .c/.h file below `src_root`, ordered by path.
/// Unreadable files are skipped with a diagnostic; throws InputError when no
/// file is found.
SourceIndex index_tree(const std::filesystem::path& src_root);

/// 64-bit FNV-1a over (relative path, content) of every .c/.h file, hex.
std::string tree_content_hash(const std::filesystem::path& src_root);

/// Loads `cache_file` when its hash matches the tree, otherwise indexes the
/// tree and rewrites the cache.
SourceIndex index_tree_cached(const std::filesystem::path& src_root,
                              const std::filesystem::path& cache_file);

}  // namespace sysrepro
