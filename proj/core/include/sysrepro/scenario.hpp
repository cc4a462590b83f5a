#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "sysrepro/locate.hpp"
#include "sysrepro/testcase.hpp"
#include "sysrepro/vfs.hpp"

namespace sysrepro {

enum class OpKind { open, close, read, write, unlink, rename, link, mkdir, mknod, chmod, stat };

std::string_view to_string(OpKind kind);
OpKind op_kind_from_string(std::string_view text);

/// One scripted call. Arguments by kind:
///   open path [creat [mode]] | close path | read path | write path tag |
///   unlink path | rename from to | link existing new | mkdir path [mode] |
///   mknod path [mode] | chmod path mode | stat path
/// Modes are octal strings. "$1".."$9" are placeholders for test inputs.
struct SyscallOp {
  OpKind kind = OpKind::stat;
  std::vector<std::string> args;

  /// Throws InputError when the argument count or a mode is invalid.
  void validate() const;
  /// "rename(bar, foo)"
  std::string text() const;
  /// Parses "rename bar foo".
  static SyscallOp parse(std::string_view text);

  friend bool operator==(const SyscallOp&, const SyscallOp&) = default;
};

struct ProcessTrace {
  std::string name;
  std::vector<SyscallOp> ops;
};

struct InitialNode {
  std::string path;
  NodeKind kind = NodeKind::file;
  unsigned mode = 0644;
  std::string content;
};

enum class OracleKind { open_enoent, mode_mismatch, path_missing, content_mismatch };

std::string_view to_string(OracleKind kind);

struct OraclePredicate {
  OracleKind kind = OracleKind::path_missing;
  std::string path;
  /// Octal mode for mode_mismatch, content tag for content_mismatch.
  std::string expected;
};

struct SrcMapEntry {
  std::string file;
  std::string function;
  int line = 0;
  std::size_t process = 0;
  std::size_t op = 0;
};

struct Scenario {
  std::string id;
  /// Command whose test cases drive the placeholders; empty when the
  /// scenario takes no inputs.
  std::string command;
  std::vector<ProcessTrace> processes;
  std::vector<InitialNode> initial_fs;
  OraclePredicate oracle;
  std::vector<SrcMapEntry> src_map;

  std::size_t total_ops() const;
  bool has_placeholders() const;
  std::optional<std::size_t> process_index(std::string_view name) const;
  const SrcMapEntry* map_location(const SyscallLocation& loc) const;
  /// Reverse lookup for schedule rendering.
  const SrcMapEntry* map_op(std::size_t process, std::size_t op) const;

  /// Throws InputError on duplicate paths, unknown processes or src_map
  /// targets outside the traces.
  void validate() const;
};

Scenario scenario_from_json(const nlohmann::json& j, const std::string& source = "<scenario>");
nlohmann::json to_json(const Scenario& scenario);
Scenario load_scenario(const std::filesystem::path& path);

/// Why a test case could not be bound to a scenario.
struct BindFailure {
  std::string reason;
};

/// Substitutes "$i" with inputs[i-1]. Fails when the scenario names a
/// command other than the test case's, or a placeholder has no input.
std::variant<Scenario, BindFailure> bind_scenario(const Scenario& scenario, const TestCase& tc);

}  // namespace sysrepro
