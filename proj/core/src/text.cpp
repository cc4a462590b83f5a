#include "sysrepro/text.hpp"

#include <algorithm>
#include <unordered_set>

#include "sysrepro/porter.hpp"
#include "wordlists.hpp"

namespace sysrepro {
namespace {

bool is_word_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  return (u >= 'a' && u <= 'z') || (u >= 'A' && u <= 'Z') || (u >= '0' && u <= '9') || c == '_';
}

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }

const std::unordered_set<std::string_view>& stop_set() {
  static const std::unordered_set<std::string_view> s(detail::english_stop_words().begin(),
                                                      detail::english_stop_words().end());
  return s;
}

const std::unordered_set<std::string_view>& reserved_set() {
  static const std::unordered_set<std::string_view> s(detail::c_reserved_words().begin(),
                                                      detail::c_reserved_words().end());
  return s;
}

bool dropped(std::string_view lw, TextMode mode) {
  return is_stop_word(lw) || (mode == TextMode::c_source && is_c_reserved(lw));
}

void emit_word(std::string_view word, TextMode mode, std::vector<std::string>& out) {
  const std::string lw = to_lower(word);
  if (lw.empty() || dropped(lw, mode)) return;
  // Porter is not idempotent ("false" -> "fals" -> "fal"); iterate to its fixed point.
  std::string stem = porter_stem(lw);
  for (int i = 0; i < 8; ++i) {
    std::string next = porter_stem(stem);
    if (next == stem) break;
    stem = std::move(next);
  }
  // A stem can collide with a listed word ("cases" -> "case").
  if (dropped(stem, mode)) return;
  out.push_back(std::move(stem));
}

}  // namespace

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c);
  });
  return out;
}

bool is_stop_word(std::string_view lowercase_word) { return stop_set().contains(lowercase_word); }

bool is_c_reserved(std::string_view lowercase_word) {
  return reserved_set().contains(lowercase_word);
}

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> words;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && !is_word_char(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && is_word_char(text[i])) ++i;
    if (i > start) words.emplace_back(text.substr(start, i - start));
  }
  return words;
}

std::vector<std::string> split_identifier(std::string_view identifier) {
  std::vector<std::string> parts;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) parts.push_back(std::move(current));
    current.clear();
  };
  for (std::size_t i = 0; i < identifier.size(); ++i) {
    const char c = identifier[i];
    if (c == '_') {
      flush();
      continue;
    }
    if (is_upper(c) && !current.empty()) {
      const char prev = identifier[i - 1];
      const bool next_lower = i + 1 < identifier.size() && is_lower(identifier[i + 1]);
      // fooBar -> foo|Bar, HTTPServer -> HTTP|Server
      if (is_lower(prev) || (is_upper(prev) && next_lower) ||
          (prev >= '0' && prev <= '9'))
        flush();
    }
    current.push_back(c);
  }
  flush();
  return parts;
}

TokenStream preprocess(std::string_view text, TextMode mode, TokenOrigin origin) {
  TokenStream stream;
  stream.origin = origin;
  for (const auto& raw : split_words(text)) {
    const std::string lraw = to_lower(raw);
    if (dropped(lraw, mode)) continue;
    const auto parts = split_identifier(raw);
    if (parts.size() > 1) {
      stream.tokens.push_back(lraw);
      for (const auto& part : parts) emit_word(part, mode, stream.tokens);
    } else if (parts.size() == 1) {
      emit_word(parts.front(), mode, stream.tokens);
    }
  }
  return stream;
}

}  // namespace sysrepro
