#include "sysrepro/c_scanner.hpp"

#include <unordered_set>

#include "sysrepro/text.hpp"

namespace sysrepro {
namespace {

bool ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }
bool digit(char c) { return c >= '0' && c <= '9'; }

// Keywords that may directly precede a declarator name.
const std::unordered_set<std::string_view>& type_words() {
  static const std::unordered_set<std::string_view> s{
      "int",    "char",     "short",    "long",     "unsigned", "signed", "float",
      "double", "void",     "struct",   "union",    "enum",     "const",  "volatile",
      "static", "extern",   "register", "restrict", "_bool",    "_Bool",  "auto",
      "inline", "_Atomic",  "_Complex", "_Noreturn", "_Thread_local"};
  return s;
}

bool is_keyword(std::string_view ident) { return is_c_reserved(to_lower(ident)); }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : s_(src) {}

  std::vector<CToken> run() {
    std::vector<CToken> out;
    bool line_start = true;
    while (i_ < s_.size()) {
      const char c = s_[i_];
      if (c == '\n') {
        ++line_;
        ++i_;
        line_start = true;
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
        ++i_;
        continue;
      }
      if (line_start && c == '#') {
        skip_directive();
        continue;
      }
      line_start = false;
      if (c == '/' && peek(1) == '/') {
        while (i_ < s_.size() && s_[i_] != '\n') ++i_;
        continue;
      }
      if (c == '/' && peek(1) == '*') {
        skip_block_comment();
        continue;
      }
      if (c == '"' || c == '\'') {
        const int line = line_;
        out.push_back({CTokenKind::string, read_quoted(c), line});
        continue;
      }
      if (ident_start(c)) {
        const std::size_t b = i_;
        while (i_ < s_.size() && ident_char(s_[i_])) ++i_;
        out.push_back({CTokenKind::identifier, std::string(s_.substr(b, i_ - b)), line_});
        continue;
      }
      if (digit(c) || (c == '.' && digit(peek(1)))) {
        const std::size_t b = i_;
        while (i_ < s_.size() && (ident_char(s_[i_]) || s_[i_] == '.')) ++i_;
        out.push_back({CTokenKind::number, std::string(s_.substr(b, i_ - b)), line_});
        continue;
      }
      out.push_back({CTokenKind::punct, std::string(1, c), line_});
      ++i_;
    }
    return out;
  }

 private:
  char peek(std::size_t ahead) const {
    return i_ + ahead < s_.size() ? s_[i_ + ahead] : '\0';
  }

  void skip_directive() {
    while (i_ < s_.size()) {
      if (s_[i_] == '\\' && peek(1) == '\n') {
        i_ += 2;
        ++line_;
        continue;
      }
      if (s_[i_] == '/' && peek(1) == '*') {
        skip_block_comment();
        continue;
      }
      if (s_[i_] == '\n') return;
      ++i_;
    }
  }

  void skip_block_comment() {
    i_ += 2;
    while (i_ < s_.size() && !(s_[i_] == '*' && peek(1) == '/')) {
      if (s_[i_] == '\n') ++line_;
      ++i_;
    }
    i_ = std::min(i_ + 2, s_.size());
  }

  std::string read_quoted(char quote) {
    const std::size_t b = i_++;
    while (i_ < s_.size() && s_[i_] != quote && s_[i_] != '\n') {
      if (s_[i_] == '\\' && i_ + 1 < s_.size()) {
        if (s_[i_ + 1] == '\n') ++line_;
        ++i_;
      }
      ++i_;
    }
    if (i_ < s_.size() && s_[i_] == quote) ++i_;
    return std::string(s_.substr(b, i_ - b));
  }

  std::string_view s_;
  std::size_t i_ = 0;
  int line_ = 1;
};

bool is_punct(const CToken& t, char c) {
  return t.kind == CTokenKind::punct && t.text.size() == 1 && t.text[0] == c;
}

// Index of the '(' matching the ')' at `close`, or npos.
std::size_t matching_open(const std::vector<CToken>& toks, std::size_t close) {
  int depth = 0;
  for (std::size_t k = close + 1; k-- > 0;) {
    if (is_punct(toks[k], ')')) ++depth;
    if (is_punct(toks[k], '(') && --depth == 0) return k;
  }
  return std::string::npos;
}

bool declarator_follow(const CToken& t) {
  return t.kind == CTokenKind::punct &&
         (t.text == "=" || t.text == ";" || t.text == "," || t.text == "[" || t.text == ")");
}

bool declarator_lead(const CToken& t) {
  if (t.kind == CTokenKind::punct) return t.text == "*";
  if (t.kind != CTokenKind::identifier) return false;
  if (type_words().contains(t.text)) return true;
  return !is_keyword(t.text);
}

}  // namespace

std::vector<CToken> tokenize_c(std::string_view source) { return Lexer(source).run(); }

CScan scan_c(std::string_view source) {
  CScan scan;
  scan.tokens = tokenize_c(source);
  const auto& toks = scan.tokens;

  int depth = 0;
  std::size_t open_fn = std::string::npos;  // index into scan.functions
  for (std::size_t k = 0; k < toks.size(); ++k) {
    const auto& t = toks[k];
    if (is_punct(t, '{')) {
      if (depth == 0 && k > 0 && is_punct(toks[k - 1], ')')) {
        const auto open = matching_open(toks, k - 1);
        if (open != std::string::npos && open > 0 &&
            toks[open - 1].kind == CTokenKind::identifier && !is_keyword(toks[open - 1].text)) {
          scan.functions.push_back({toks[open - 1].text, toks[open - 1].line, t.line, k + 1, k + 1});
          scan.calls.emplace_back();
          open_fn = scan.functions.size() - 1;
        }
      }
      ++depth;
      continue;
    }
    if (is_punct(t, '}')) {
      if (depth > 0) --depth;
      if (depth == 0 && open_fn != std::string::npos) {
        scan.functions[open_fn].end_line = t.line;
        scan.functions[open_fn].body_end = k;
        open_fn = std::string::npos;
      }
      continue;
    }
    if (t.kind != CTokenKind::identifier || is_keyword(t.text)) continue;

    const bool next_paren = k + 1 < toks.size() && is_punct(toks[k + 1], '(');
    if (next_paren && depth > 0 && open_fn != std::string::npos) {
      const bool member = k > 0 && (is_punct(toks[k - 1], '.') ||
                                    (is_punct(toks[k - 1], '>') && k > 1 &&
                                     is_punct(toks[k - 2], '-')));
      if (!member) scan.calls[open_fn].push_back({t.text, t.line});
      continue;
    }
    if (k > 0 && k + 1 < toks.size() && declarator_lead(toks[k - 1]) &&
        declarator_follow(toks[k + 1])) {
      scan.variables.push_back(t.text);
    }
  }
  // A function left open at end of input extends to the last token.
  if (open_fn != std::string::npos) {
    scan.functions[open_fn].end_line = toks.empty() ? 1 : toks.back().line;
    scan.functions[open_fn].body_end = toks.size();
  }

  std::unordered_set<std::string> seen;
  std::vector<std::string> unique;
  for (auto& v : scan.variables)
    if (seen.insert(v).second) unique.push_back(std::move(v));
  scan.variables = std::move(unique);
  return scan;
}

}  // namespace sysrepro
