#include <gtest/gtest.h>

#include <fstream>
#include <string>

#include "support.hpp"
#include "sysrepro/porter.hpp"

namespace sysrepro {
namespace {

TEST(PorterTest, MatchesReferenceTable) {
  std::ifstream in(testing::test_data_dir() / "porter_pairs.tsv");
  ASSERT_TRUE(in) << "missing porter_pairs.tsv";
  std::string line;
  int checked = 0;
  int mismatches = 0;
  while (std::getline(in, line)) {
    const auto tab = line.find('\t');
    ASSERT_NE(tab, std::string::npos) << line;
    const std::string word = line.substr(0, tab);
    const std::string stem = line.substr(tab + 1);
    if (word.size() <= 2) continue;
    if (porter_stem(word) != stem) {
      ADD_FAILURE() << word << ": got " << porter_stem(word) << ", want " << stem;
      if (++mismatches > 20) break;
    }
    ++checked;
  }
  EXPECT_GT(checked, 1000);
}

TEST(PorterTest, WordsOfAtMostTwoLettersAreUnchanged) {
  for (const char* w : {"a", "s", "as", "is", "us", "vs", "by"}) EXPECT_EQ(porter_stem(w), w);
}

TEST(PorterTest, ClassicExamples) {
  EXPECT_EQ(porter_stem("caresses"), "caress");
  EXPECT_EQ(porter_stem("ponies"), "poni");
  EXPECT_EQ(porter_stem("relational"), "relat");
  EXPECT_EQ(porter_stem("hopping"), "hop");
  EXPECT_EQ(porter_stem("filing"), "file");
  EXPECT_EQ(porter_stem("generalizations"), "gener");
  EXPECT_EQ(porter_stem("renamed"), "renam");
  EXPECT_EQ(porter_stem("files"), "file");
}

TEST(PorterTest, ShortWordsUnchanged) {
  EXPECT_EQ(porter_stem(""), "");
  EXPECT_EQ(porter_stem("is"), "is");
  EXPECT_EQ(porter_stem("as"), "as");
}

}  // namespace
}  // namespace sysrepro
