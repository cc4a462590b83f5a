#include "sysrepro/porter.hpp"

#include <array>
#include <utility>

namespace sysrepro {
namespace {

class Stemmer {
 public:
  explicit Stemmer(std::string_view w) : word_(w) {}

  std::string run() && {
    step1a();
    step1b();
    step1c();
    step2();
    step3();
    step4();
    step5a();
    step5b();
    return std::move(word_);
  }

 private:
  bool consonant(std::size_t i) const {
    switch (word_[i]) {
      case 'a':
      case 'e':
      case 'i':
      case 'o':
      case 'u':
        return false;
      case 'y':
        return i == 0 || !consonant(i - 1);
      default:
        return true;
    }
  }

  // m in [C](VC)^m[V] over word_[0, len).
  int measure(std::size_t len) const {
    int m = 0;
    std::size_t i = 0;
    while (i < len && consonant(i)) ++i;
    while (i < len) {
      while (i < len && !consonant(i)) ++i;
      if (i >= len) break;
      while (i < len && consonant(i)) ++i;
      ++m;
    }
    return m;
  }

  bool has_vowel(std::size_t len) const {
    for (std::size_t i = 0; i < len; ++i)
      if (!consonant(i)) return true;
    return false;
  }

  bool double_consonant(std::size_t len) const {
    return len >= 2 && word_[len - 1] == word_[len - 2] && consonant(len - 1);
  }

  // cvc where the final c is not w, x or y.
  bool cvc(std::size_t len) const {
    if (len < 3) return false;
    if (!consonant(len - 3) || consonant(len - 2) || !consonant(len - 1)) return false;
    const char c = word_[len - 1];
    return c != 'w' && c != 'x' && c != 'y';
  }

  bool ends_with(std::string_view suffix) const {
    return word_.size() >= suffix.size() &&
           std::string_view(word_).substr(word_.size() - suffix.size()) == suffix;
  }

  std::size_t stem_len(std::string_view suffix) const { return word_.size() - suffix.size(); }

  void replace(std::string_view suffix, std::string_view with) {
    word_.resize(stem_len(suffix));
    word_.append(with);
  }

  void step1a() {
    if (ends_with("sses")) {
      replace("sses", "ss");
    } else if (ends_with("ies")) {
      replace("ies", "i");
    } else if (ends_with("ss")) {
      // unchanged
    } else if (ends_with("s")) {
      replace("s", "");
    }
  }

  void step1b() {
    if (ends_with("eed")) {
      if (measure(stem_len("eed")) > 0) replace("eed", "ee");
      return;
    }
    bool stripped = false;
    if (ends_with("ed") && has_vowel(stem_len("ed"))) {
      replace("ed", "");
      stripped = true;
    } else if (ends_with("ing") && has_vowel(stem_len("ing"))) {
      replace("ing", "");
      stripped = true;
    }
    if (!stripped) return;

    if (ends_with("at")) {
      replace("at", "ate");
    } else if (ends_with("bl")) {
      replace("bl", "ble");
    } else if (ends_with("iz")) {
      replace("iz", "ize");
    } else if (double_consonant(word_.size())) {
      const char last = word_.back();
      if (last != 'l' && last != 's' && last != 'z') word_.pop_back();
    } else if (measure(word_.size()) == 1 && cvc(word_.size())) {
      word_.push_back('e');
    }
  }

  void step1c() {
    if (ends_with("y") && has_vowel(stem_len("y"))) replace("y", "i");
  }

  // The first listed suffix that matches wins; its condition decides
  // whether the replacement happens, no further suffix is tried.
  template <std::size_t N>
  void apply_rules(const std::array<std::pair<std::string_view, std::string_view>, N>& rules,
                   int min_measure) {
    for (const auto& [suffix, with] : rules) {
      if (ends_with(suffix)) {
        if (measure(stem_len(suffix)) > min_measure) replace(suffix, with);
        return;
      }
    }
  }

  void step2() {
    static constexpr std::array<std::pair<std::string_view, std::string_view>, 20> rules{{
        {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},   {"anci", "ance"},
        {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},     {"entli", "ent"},
        {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
        {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
        {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},   {"biliti", "ble"},
    }};
    apply_rules(rules, 0);
  }

  void step3() {
    static constexpr std::array<std::pair<std::string_view, std::string_view>, 7> rules{{
        {"icate", "ic"},
        {"ative", ""},
        {"alize", "al"},
        {"iciti", "ic"},
        {"ical", "ic"},
        {"ful", ""},
        {"ness", ""},
    }};
    apply_rules(rules, 0);
  }

  void step4() {
    static constexpr std::array<std::string_view, 19> suffixes{
        "al",   "ance", "ence", "er",  "ic",  "able", "ible", "ant", "ement", "ment",
        "ent",  "ion",  "ou",   "ism", "ate", "iti",  "ous",  "ive", "ize"};
    for (const auto suffix : suffixes) {
      if (!ends_with(suffix)) continue;
      const std::size_t len = stem_len(suffix);
      bool ok = measure(len) > 1;
      if (ok && suffix == "ion") ok = len > 0 && (word_[len - 1] == 's' || word_[len - 1] == 't');
      if (ok) word_.resize(len);
      return;
    }
  }

  void step5a() {
    if (!ends_with("e")) return;
    const std::size_t len = stem_len("e");
    const int m = measure(len);
    if (m > 1 || (m == 1 && !cvc(len))) word_.resize(len);
  }

  void step5b() {
    if (measure(word_.size()) > 1 && double_consonant(word_.size()) && word_.back() == 'l')
      word_.pop_back();
  }

  std::string word_;
};

}  // namespace

std::string porter_stem(std::string_view word) {
  if (word.size() <= 2) return std::string(word);
  return Stemmer(word).run();
}

}  // namespace sysrepro
