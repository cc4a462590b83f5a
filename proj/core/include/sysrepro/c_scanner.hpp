#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace sysrepro {

enum class CTokenKind { identifier, number, string, punct };

struct CToken {
  CTokenKind kind;
  std::string text;
  int line;
};

struct CFunctionSpan {
  std::string name;
  int start_line;
  int end_line;
  /// Token index range [body_begin, body_end) of the body, braces excluded.
  std::size_t body_begin;
  std::size_t body_end;
};

struct CCallSite {
  std::string callee;
  int line;
};

/// Tolerant lexical view of one C translation unit. Comments, string and
/// character literals never yield identifiers; preprocessor lines (with
/// backslash continuations) are skipped.
struct CScan {
  std::vector<CToken> tokens;
  std::vector<CFunctionSpan> functions;
  /// Call-position identifiers inside each function body, parallel to
  /// `functions`.
  std::vector<std::vector<CCallSite>> calls;
  /// Identifiers in declarator position, first-seen order, no repeats.
  std::vector<std::string> variables;
};

std::vector<CToken> tokenize_c(std::string_view source);

/// Functions are `identifier ( ... ) {` at brace depth 0.
CScan scan_c(std::string_view source);

}  // namespace sysrepro
