#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace sysrepro {

enum class TextMode { natural_language, c_source };

enum class TokenOrigin { subject, body, doc_field };

/// Normalized, stemmed term sequence produced by preprocess().
struct TokenStream {
  std::vector<std::string> tokens;
  TokenOrigin origin = TokenOrigin::body;

  bool empty() const noexcept { return tokens.empty(); }
  std::size_t size() const noexcept { return tokens.size(); }
};

/// Maximal runs of [A-Za-z0-9_], in order, case preserved.
std::vector<std::string> split_words(std::string_view text);

/// Splits an identifier on '_' and camelCase boundaries. Returns a single
/// element when there is no boundary; never returns empty pieces.
std::vector<std::string> split_identifier(std::string_view identifier);

bool is_stop_word(std::string_view lowercase_word);
bool is_c_reserved(std::string_view lowercase_word);

std::string to_lower(std::string_view s);

/// Lowercase, tokenize, drop stop words (and C reserved words in c_source
/// mode), Porter-stem. Compound identifiers such as copy_internal are kept
/// whole (lowercased, unstemmed) and followed by their stemmed sub-tokens.
TokenStream preprocess(std::string_view text, TextMode mode,
                       TokenOrigin origin = TokenOrigin::body);

}  // namespace sysrepro
