#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "../support.hpp"
#include "gen.hpp"
#include "sysrepro/catalog.hpp"
#include "sysrepro/ranking.hpp"
#include "sysrepro/text.hpp"

namespace sysrepro {
namespace {

TokenStream ts(std::vector<std::string> tokens) {
  TokenStream s;
  s.tokens = std::move(tokens);
  return s;
}

/// Words that preprocess to themselves, so random text and random field
/// streams share a vocabulary.
const std::vector<std::string>& vocab() {
  static const std::vector<std::string> v = [] {
    std::vector<std::string> out;
    for (const char* w : {"alpha", "bravo", "delta", "kilo", "lima", "tango", "zulu", "oscar",
                          "romeo", "sierra", "unlink", "renam", "chmod", "open", "link", "file",
                          "dst", "src", "buf", "fd"})
      if (preprocess(w, TextMode::natural_language).tokens == std::vector<std::string>{w})
        out.emplace_back(w);
    return out;
  }();
  return v;
}

std::vector<std::string> random_tokens(testing::Gen& g, int max_len) {
  std::vector<std::string> out;
  const int n = g.between(0, max_len);
  for (int i = 0; i < n; ++i) out.push_back(g.pick(vocab()));
  return out;
}

SourceIndex random_index(testing::Gen& g) {
  std::vector<SourceDoc> docs;
  const int n = g.between(1, 5);
  for (int i = 0; i < n; ++i) {
    SourceDoc d;
    d.path = "f" + std::to_string(i) + ".c";
    for (auto& field : d.fields) field = ts(random_tokens(g, 6));
    docs.push_back(std::move(d));
  }
  return SourceIndex(std::move(docs), {}, {}, "");
}

std::array<TokenStream, 3> random_queries(testing::Gen& g) {
  return {ts(random_tokens(g, 5)), ts(random_tokens(g, 8)), ts(random_tokens(g, 4))};
}

double oracle_cosine(const std::vector<std::vector<std::string>>& docs, std::size_t which,
                     const std::vector<std::string>& query) {
  std::map<std::string, double> df;
  for (const auto& d : docs)
    for (const auto& t : std::set<std::string>(d.begin(), d.end())) df[t] += 1;
  const double n = static_cast<double>(docs.size());
  auto vec = [&](const std::vector<std::string>& tokens) {
    std::map<std::string, double> w;
    for (const auto& t : tokens)
      if (df.count(t)) w[t] += std::log(n / df[t]);
    return w;
  };
  const auto q = vec(query);
  const auto d = vec(docs[which]);
  double dot = 0, qq = 0, dd = 0;
  for (const auto& [t, v] : q) {
    qq += v * v;
    if (d.count(t)) dot += v * d.at(t);
  }
  for (const auto& [t, v] : d) dd += v * v;
  return qq == 0 || dd == 0 ? 0.0 : dot / std::sqrt(qq * dd);
}

TEST(IrProps, ScoresAreMeansOfTwelveCosinesInUnitRange) {
  testing::Gen g(201);
  for (int c = 0; c < testing::kCases; ++c) {
    const auto index = random_index(g);
    const auto ranked = rank_structured(random_queries(g), index);
    ASSERT_EQ(ranked.entries.size(), index.docs().size());
    for (const auto& e : ranked.entries) {
      ASSERT_EQ(e.breakdown.size(), 12u);
      double sum = 0;
      for (double s : e.breakdown) {
        ASSERT_GE(s, 0.0);
        ASSERT_LE(s, 1.0 + 1e-12);
        sum += s;
      }
      ASSERT_NEAR(e.score, sum / 12.0, 1e-12);
      ASSERT_GE(e.score, 0.0);
      ASSERT_LE(e.score, 1.0 + 1e-12);
    }
    for (std::size_t i = 1; i < ranked.entries.size(); ++i) {
      const auto& a = ranked.entries[i - 1];
      const auto& b = ranked.entries[i];
      ASSERT_TRUE(a.score > b.score || (a.score == b.score && a.path < b.path));
    }
  }
}

TEST(IrProps, BreakdownMatchesIndependentOracle) {
  testing::Gen g(202);
  for (int c = 0; c < testing::kCases; ++c) {
    const auto index = random_index(g);
    const auto queries = random_queries(g);
    const auto ranked = rank_structured(queries, index);
    for (std::size_t f = 0; f < 4; ++f) {
      std::vector<std::vector<std::string>> docs;
      for (const auto& d : index.docs()) docs.push_back(d.fields[f].tokens);
      for (std::size_t i = 0; i < docs.size(); ++i) {
        const auto& e = ranked.entries[*ranked.rank_of(index.docs()[i].path) - 1];
        for (std::size_t q = 0; q < 3; ++q)
          ASSERT_NEAR(e.breakdown[q * 4 + f], oracle_cosine(docs, i, queries[q].tokens), 1e-9);
      }
    }
  }
}

TEST(IrProps, StructuredRankingIgnoresInputOrder) {
  testing::Gen g(203);
  for (int c = 0; c < testing::kCases; ++c) {
    const auto index = random_index(g);
    auto docs = index.docs();
    for (std::size_t i = docs.size(); i > 1; --i) std::swap(docs[i - 1], docs[g.below(i)]);
    const SourceIndex shuffled(docs, {}, {}, "");
    const auto queries = random_queries(g);
    const auto a = rank_structured(queries, index);
    const auto b = rank_structured(queries, shuffled);
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
      ASSERT_EQ(a.entries[i].path, b.entries[i].path);
      ASSERT_NEAR(a.entries[i].score, b.entries[i].score, 1e-12);
    }
  }
}

TEST(IrProps, BasicRankingMatchesSingleIndexOracle) {
  testing::Gen g(204);
  for (int c = 0; c < testing::kCases; ++c) {
    const auto index = random_index(g);
    std::string body;
    for (const auto& t : random_tokens(g, 10)) body += t + " ";
    const auto report = make_report("r", g.pick(vocab()), body);
    const auto ranked = rank_basic(report, index);
    const auto query = preprocess(report.subject + "\n" + report.body, TextMode::natural_language);
    std::vector<std::vector<std::string>> docs;
    for (const auto& d : index.docs()) docs.push_back(d.field(DocField::full_text).tokens);
    for (std::size_t i = 0; i < docs.size(); ++i) {
      const auto& e = ranked.entries[*ranked.rank_of(index.docs()[i].path) - 1];
      ASSERT_NEAR(e.score, oracle_cosine(docs, i, query.tokens), 1e-9);
    }
  }
}

// Adding mentions of a key name that occurs in a single file scales every
// other file's column cosine by the same factor <= 1 and scales the owning
// file's by at least that factor, so the owner never loses ground in any column.
// The averaged score itself can drop, since columns lacking the term shrink.
TEST(IrProps, RaisingAUniqueTermNeverLosesGroundPerColumn) {
  struct Case {
    SourceIndex index;
    std::array<TokenStream, 3> base;
    std::vector<std::pair<std::string, std::string>> unique;  // (term, path)
  };
  std::vector<Case> cases;
  for (const char* name : {"mv_438076", "gzip_155746", "chmod_race"}) {
    Case k;
    k.index = index_tree(testing::fixture(name) / "src");
    const auto report = load_report(testing::fixture(name) / "report.txt");
    k.base = structured_queries(report, extract(report, testing::bundled_catalog()));
    std::map<std::string, std::set<std::string>> where;
    for (const auto& d : k.index.docs())
      for (const auto& f : d.fields)
        for (const auto& t : f.tokens) where[t].insert(d.path);
    for (const auto& entry : testing::bundled_catalog().entries()) {
      const auto stem = preprocess(entry.syscall_name, TextMode::natural_language).tokens;
      if (stem.size() != 1) continue;
      if (auto it = where.find(stem[0]); it != where.end() && it->second.size() == 1)
        k.unique.emplace_back(stem[0], *it->second.begin());
    }
    if (!k.unique.empty()) cases.push_back(std::move(k));
  }
  ASSERT_FALSE(cases.empty());
  testing::Gen g(205);
  for (int c = 0; c < testing::kCases; ++c) {
    const auto& k = g.pick(cases);
    const auto& [term, path] = g.pick(k.unique);
    auto queries = k.base;
    const int extra = g.between(0, 3);
    for (int i = 0; i < extra; ++i) queries[2].tokens.push_back(term);
    const auto before = rank_structured(queries, k.index);
    queries[2].tokens.push_back(term);
    const auto after = rank_structured(queries, k.index);
    const auto& own0 = before.entries[*before.rank_of(path) - 1].breakdown;
    const auto& own1 = after.entries[*after.rank_of(path) - 1].breakdown;
    for (const auto& d : k.index.docs()) {
      if (d.path == path) continue;
      const auto& o0 = before.entries[*before.rank_of(d.path) - 1].breakdown;
      const auto& o1 = after.entries[*after.rank_of(d.path) - 1].breakdown;
      for (std::size_t col = 0; col < 12; ++col) {
        ASSERT_LE(o1[col], o0[col] + 1e-12) << term << " " << d.path << " col " << col;
        ASSERT_GE(own1[col] * o0[col], own0[col] * o1[col] - 1e-12)
            << term << " in " << path << " vs " << d.path << " col " << col << " with " << extra << " prior";
      }
    }
  }
}

}  // namespace
}  // namespace sysrepro
