#include <gtest/gtest.h>

#include <functional>
#include <string>
#include <vector>

#include "gen.hpp"
#include "sysrepro/testcase.hpp"

namespace sysrepro {
namespace {

struct SpecText {
  std::string text;
  std::vector<std::vector<std::string>> values;  // per category
  std::vector<std::vector<bool>> special;
  std::vector<std::vector<std::string>> cond;    // "" or referenced value
};

/// Random spec whose first choice in every category is a plain default.
/// Values are unique across the spec; conditions reference plain,
/// unconditioned choices of other categories.
SpecText random_spec(testing::Gen& g, bool with_conditions) {
  SpecText s;
  const int cats = g.between(1, 4);
  for (int c = 0; c < cats; ++c) {
    const int n = g.between(1, 4);
    s.values.emplace_back();
    s.special.emplace_back();
    s.cond.emplace_back();
    for (int i = 0; i < n; ++i) {
      s.values.back().push_back("c" + std::to_string(c) + "v" + std::to_string(i));
      s.special.back().push_back(i > 0 && g.coin(25));
      s.cond.back().emplace_back();
    }
  }
  if (with_conditions) {
    for (int c = 0; c < cats; ++c) {
      for (std::size_t i = 1; i < s.values[c].size(); ++i) {
        if (s.special[c][i] || cats < 2 || !g.coin(40)) continue;
        int o = g.between(0, cats - 1);
        if (o == c) o = (o + 1) % cats;
        std::vector<std::string> targets;
        for (std::size_t j = 0; j < s.values[o].size(); ++j)
          if (!s.special[o][j] && s.cond[o][j].empty()) targets.push_back(s.values[o][j]);
        s.cond[c][i] = g.pick(targets);
      }
    }
  }
  s.text = "category command:\n  choice cmd\n";
  for (int c = 0; c < cats; ++c) {
    s.text += "category k" + std::to_string(c) + ":\n";
    for (std::size_t i = 0; i < s.values[c].size(); ++i) {
      s.text += "  choice " + s.values[c][i];
      if (s.special[c][i]) s.text += g.coin() ? " [error]" : " [single]";
      if (!s.cond[c][i].empty()) s.text += " [if " + s.cond[c][i] + "]";
      s.text += "\n";
    }
  }
  return s;
}

/// Frame count by explicit enumeration of index tuples.
std::size_t brute_force_frames(const SpecText& s) {
  const auto cats = s.values.size();
  std::vector<std::size_t> pick(cats, 0);
  std::size_t count = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t c) {
    if (c == cats) {
      int specials = 0;
      bool defaults_elsewhere = true;
      for (std::size_t k = 0; k < cats; ++k) specials += s.special[k][pick[k]];
      for (std::size_t k = 0; k < cats; ++k)
        if (!s.special[k][pick[k]] && pick[k] != 0) defaults_elsewhere = false;
      if (specials > 1 || (specials == 1 && !defaults_elsewhere)) return;
      for (std::size_t k = 0; k < cats; ++k) {
        const auto& need = s.cond[k][pick[k]];
        if (need.empty()) continue;
        bool ok = false;
        for (std::size_t o = 0; o < cats; ++o) ok = ok || (o != k && s.values[o][pick[o]] == need);
        if (!ok) return;
      }
      ++count;
      return;
    }
    for (pick[c] = 0; pick[c] < s.values[c].size(); ++pick[c]) rec(c + 1);
  };
  rec(0);
  return count;
}

TEST(TestcaseProps, FrameCountIsPlainProductPlusSpecials) {
  testing::Gen g(601);
  for (int c = 0; c < testing::kCases; ++c) {
    const auto s = random_spec(g, false);
    std::size_t product = 1;
    std::size_t specials = 0;
    for (std::size_t k = 0; k < s.values.size(); ++k) {
      std::size_t plain = 0;
      for (std::size_t i = 0; i < s.values[k].size(); ++i) (s.special[k][i] ? specials : plain) += 1;
      product *= plain;
    }
    const auto frames = expand_tsl(parse_tsl(s.text));
    ASSERT_EQ(frames.size(), product + specials) << s.text;
    ASSERT_EQ(frames.size(), brute_force_frames(s));
  }
}

TEST(TestcaseProps, FrameCountMatchesBruteForceWithConditions) {
  testing::Gen g(602);
  for (int c = 0; c < testing::kCases; ++c) {
    const auto s = random_spec(g, true);
    const auto frames = expand_tsl(parse_tsl(s.text));
    ASSERT_EQ(frames.size(), brute_force_frames(s)) << s.text;
    for (const auto& f : frames) {
      ASSERT_EQ(f.command, "cmd");
      ASSERT_EQ(f.frame.size(), s.values.size() + 1);
    }
  }
}

TEST(TestcaseProps, ExtractedElementsSurviveIntoEveryFrame) {
  testing::Gen g(603);
  for (int c = 0; c < testing::kCases; ++c) {
    std::string text = "category command:\n  choice mv\n  choice cp\n";
    const bool has_options = g.coin();
    if (has_options) text += "category options:\n  choice none\n  choice -f\n  choice -i [single]\n";
    text += "category inputs:\n  choice x y\n  choice missing y [error]\n";
    text += "category setup:\n  choice none\n  choice umask=077\n";
    TestCase partial;
    partial.command = g.coin() ? "mv" : "";
    const int nin = g.between(0, 3);
    for (int i = 0; i < nin; ++i) partial.inputs.push_back(g.word());
    if (g.coin()) partial.options.push_back(g.coin() ? "-b" : "--verbose");
    const auto frames = expand_tsl(parse_tsl(text), partial);
    ASSERT_FALSE(frames.empty());
    for (const auto& f : frames) {
      if (!partial.command.empty()) ASSERT_EQ(f.command, partial.command);
      if (!partial.inputs.empty()) ASSERT_EQ(f.inputs, partial.inputs);
      if (!partial.options.empty()) ASSERT_EQ(f.options, partial.options);
    }
  }
}

TEST(TestcaseProps, ExtractionFindsPlantedCommandLines) {
  testing::Gen g(604);
  for (int c = 0; c < testing::kCases; ++c) {
    TestCase planted;
    planted.command = g.coin() ? "mv" : "chmod";
    if (g.coin()) planted.options.push_back(g.coin() ? "-f" : "--force");
    const int nin = g.between(1, 3);
    for (int i = 0; i < nin; ++i) planted.inputs.push_back(g.word(2, 6));
    std::string body = "Some prose mentioning " + planted.command + " casually.\n";
    switch (g.below(3)) {
      case 0: body += "$ " + planted.command_line() + "\n"; break;
      case 1: body += "```\n" + planted.command_line() + "\n```\n"; break;
      default: body += "Running `" + planted.command_line() + "` fails.\n"; break;
    }
    const auto got = extract_elements(make_report("r", "s", body), {"mv", "chmod"});
    ASSERT_EQ(got.command, planted.command);
    ASSERT_EQ(got.options, planted.options);
    ASSERT_EQ(got.inputs, planted.inputs) << body;
  }
}

}  // namespace
}  // namespace sysrepro
