#include <gtest/gtest.h>

#include <cctype>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "../support.hpp"
#include "gen.hpp"
#include "sysrepro/report.hpp"
#include "sysrepro/text.hpp"

namespace sysrepro {
namespace {

namespace fs = std::filesystem;

bool is_compound(const std::string& t) { return split_identifier(t).size() > 1; }

/// Every word of every fixture report and source file.
const std::vector<std::string>& fixture_words() {
  static const std::vector<std::string> words = [] {
    std::set<std::string> all;
    for (const auto& entry : fs::recursive_directory_iterator(testing::fixture_dir())) {
      if (!entry.is_regular_file()) continue;
      const auto ext = entry.path().extension();
      if (ext != ".c" && ext != ".h" && ext != ".txt" && ext != ".tsl") continue;
      for (auto& w : split_words(testing::read_file(entry.path()))) all.insert(std::move(w));
    }
    return std::vector<std::string>(all.begin(), all.end());
  }();
  return words;
}

std::string random_text(testing::Gen& g) {
  static const std::vector<std::string> seps{" ", "  ", "\n", ", ", ". ", "(", ") ", "->", "\t", "? "};
  std::string text;
  const int n = g.between(0, 30);
  for (int i = 0; i < n; ++i) {
    auto w = g.pick(fixture_words());
    if (g.coin(10)) w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
    text += w + g.pick(seps);
  }
  return text;
}

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) out += t + " ";
  return out;
}

// A stream is a fixed point when re-preprocessing each simple token returns
// it unchanged and each compound re-expands to itself followed by the same
// parts it was emitted with.
TEST(TextProps, PreprocessIsIdempotentOnItsOwnOutput) {
  testing::Gen g(101);
  for (int c = 0; c < testing::kCases; ++c) {
    const auto text = random_text(g);
    for (const auto mode : {TextMode::natural_language, TextMode::c_source}) {
      const auto once = preprocess(text, mode).tokens;
      for (std::size_t i = 0; i < once.size(); ++i) {
        const auto again = preprocess(once[i], mode).tokens;
        if (!is_compound(once[i])) {
          ASSERT_EQ(again, std::vector<std::string>{once[i]}) << "case " << c << ": " << once[i];
          continue;
        }
        ASSERT_FALSE(again.empty());
        ASSERT_EQ(again.front(), once[i]);
        ASSERT_LE(i + again.size(), once.size());
        for (std::size_t k = 1; k < again.size(); ++k) ASSERT_EQ(again[k], once[i + k]) << once[i];
        i += again.size() - 1;
      }
    }
  }
}

TEST(TextProps, PreprocessOfSimpleStreamIsExactFixedPoint) {
  testing::Gen g(102);
  for (int c = 0; c < testing::kCases; ++c) {
    const auto text = random_text(g);
    std::vector<std::string> simple;
    for (const auto& t : preprocess(text, TextMode::natural_language).tokens)
      if (!is_compound(t)) simple.push_back(t);
    ASSERT_EQ(preprocess(join(simple), TextMode::natural_language).tokens, simple) << text;
  }
}

TEST(TextProps, PreprocessIsDeterministic) {
  testing::Gen g(103);
  for (int c = 0; c < testing::kCases; ++c) {
    const auto text = random_text(g);
    ASSERT_EQ(preprocess(text, TextMode::c_source).tokens, preprocess(text, TextMode::c_source).tokens);
  }
}

std::string content_chars(std::string_view s) {
  std::string out;
  for (const char ch : s)
    if (ch != '.' && ch != '?' && ch != '!' && !std::isspace(static_cast<unsigned char>(ch)))
      out.push_back(ch);
  return out;
}

TEST(TextProps, SentenceSplitPreservesContent) {
  testing::Gen g(104);
  static const std::vector<std::string> pieces{"a", "bc", ".", "..", "?", "!", " ", "\n", "x.y", "3.14", "e.g."};
  for (int c = 0; c < testing::kCases; ++c) {
    std::string body;
    const int n = g.between(0, 25);
    for (int i = 0; i < n; ++i) body += g.pick(pieces);
    std::string rejoined;
    for (const auto& s : split_sentences(body)) {
      ASSERT_FALSE(s.empty());
      ASSERT_FALSE(std::isspace(static_cast<unsigned char>(s.front())));
      rejoined += s + ". ";
    }
    ASSERT_EQ(content_chars(rejoined), content_chars(body)) << body;
  }
}

}  // namespace
}  // namespace sysrepro
