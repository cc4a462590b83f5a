#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sysrepro/report.hpp"

namespace sysrepro {

struct TestCase {
  std::string command;
  std::vector<std::string> options;
  std::vector<std::string> inputs;
  /// Environment actions, e.g. "create-file bar" or "umask=022".
  std::vector<std::string> setup;
  /// Frame built from an [error] choice.
  bool expect_error = false;
  /// "category=value" per category, in spec order. Empty for extracted
  /// partials.
  std::vector<std::string> frame;

  bool empty() const noexcept {
    return command.empty() && options.empty() && inputs.empty() && setup.empty();
  }
  /// Shell-like rendering: command, options, inputs.
  std::string command_line() const;
  bool same_invocation(const TestCase& other) const;
};

/// Command lines found in the report for any of `known_commands`, best
/// first: most repeated, then most arguments, then earliest.
std::vector<TestCase> extract_candidates(const BugReport& report,
                                         const std::vector<std::string>& known_commands);

/// The best candidate, or an empty partial when nothing matched.
TestCase extract_elements(const BugReport& report, const std::vector<std::string>& known_commands);

struct TslChoice {
  std::string value;
  bool error = false;
  bool single = false;
  /// Each entry is "category.value" or a bare "value".
  std::vector<std::string> if_refs;
  int line = 0;

  bool special() const noexcept { return error || single; }
};

struct TslCategory {
  std::string name;
  std::vector<TslChoice> choices;
};

struct TslSpec {
  std::vector<TslCategory> categories;
};

/// Line format: `category <name>:` followed by indented
/// `choice <value> [error] [single] [if <ref>]` lines; '#' starts a comment.
/// Throws ParseError on syntax errors, empty categories or dangling refs.
TslSpec parse_tsl(std::string_view text, const std::string& source = "<tsl>");
TslSpec load_tsl(const std::string& path);

/// Constrained Cartesian product of the categories, mapped onto TestCase
/// fields. Values extracted from the report replace the choices of the
/// category they belong to. Throws InputError naming the offending frame or
/// choice when the constraints contradict each other.
std::vector<TestCase> expand_tsl(const TslSpec& spec, const TestCase& partial = {});

/// One expansion per extracted candidate, concatenated without repeats.
/// With no candidates this is expand_tsl(spec).
std::vector<TestCase> expand_tsl(const TslSpec& spec, const std::vector<TestCase>& candidates);

}  // namespace sysrepro
