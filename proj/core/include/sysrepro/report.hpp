#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace sysrepro {

struct BugReport {
  std::string id;
  std::string subject;
  std::string body;
  /// body split by split_sentences(); kept in sync by make_report().
  std::vector<std::string> sentences;
};

/// Splits on sentence terminators. A run of '.', '?' or '!' ends a sentence
/// when it is followed by whitespace or the end of the text, so "copy.c" and
/// "3.14" stay whole. Sentences are trimmed; empty ones are dropped.
std::vector<std::string> split_sentences(std::string_view body);

BugReport make_report(std::string id, std::string subject, std::string body);

/// Parses either the plain-text format ("Subject: ..." line, blank line,
/// body) or a JSON object {id, subject, body}. `id` is used when the text
/// format carries none.
BugReport parse_report(std::string_view content, const std::string& id,
                       const std::string& source = {});

BugReport load_report(const std::filesystem::path& path);

}  // namespace sysrepro
