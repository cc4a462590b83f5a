#include "sysrepro/report.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "sysrepro/error.hpp"

namespace sysrepro {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }
bool is_terminator(char c) { return c == '.' || c == '?' || c == '!'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

std::vector<std::string> split_sentences(std::string_view body) {
  std::vector<std::string> sentences;
  std::size_t start = 0;
  std::size_t i = 0;
  auto push = [&](std::size_t end) {
    const auto s = trim(body.substr(start, end - start));
    if (!s.empty()) sentences.emplace_back(s);
  };
  while (i < body.size()) {
    if (!is_terminator(body[i])) {
      ++i;
      continue;
    }
    std::size_t run_end = i;
    while (run_end < body.size() && is_terminator(body[run_end])) ++run_end;
    if (run_end == body.size() || is_space(body[run_end])) {
      push(i);
      start = run_end;
    }
    i = run_end;
  }
  push(body.size());
  return sentences;
}

BugReport make_report(std::string id, std::string subject, std::string body) {
  BugReport r;
  r.id = std::move(id);
  r.subject = std::move(subject);
  r.body = std::move(body);
  r.sentences = split_sentences(r.body);
  return r;
}

BugReport parse_report(std::string_view content, const std::string& id, const std::string& source) {
  const auto first = content.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return make_report(id, "", "");
  if (content[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(content);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(source, std::string("invalid JSON report: ") + e.what());
    }
    if (!j.is_object() || !j.contains("subject") || !j["subject"].is_string())
      throw ParseError(source, "JSON report needs a string field 'subject'");
    const std::string body = j.contains("body") && j["body"].is_string() ? j["body"].get<std::string>() : "";
    const std::string rid = j.contains("id") && j["id"].is_string() ? j["id"].get<std::string>() : id;
    return make_report(rid, j["subject"].get<std::string>(), body);
  }

  constexpr std::string_view kPrefix = "Subject:";
  const auto eol = content.find('\n');
  std::string_view line = content.substr(0, eol);
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  if (line.substr(0, kPrefix.size()) != kPrefix)
    throw ParseError(source, "first line must be 'Subject: <text>'");
  std::string subject(trim(line.substr(kPrefix.size())));

  std::string_view rest = eol == std::string_view::npos ? std::string_view{} : content.substr(eol + 1);
  // Exactly one separating blank line is expected; tolerate its absence.
  if (!rest.empty() && (rest.front() == '\n' || rest.substr(0, 2) == "\r\n"))
    rest.remove_prefix(rest.front() == '\n' ? 1 : 2);
  return make_report(id, std::move(subject), std::string(rest));
}

BugReport load_report(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open bug report: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_report(ss.str(), path.stem().string(), path.string());
}

}  // namespace sysrepro
