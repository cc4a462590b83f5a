#include "sysrepro/miner.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "sysrepro/error.hpp"

namespace sysrepro {
namespace {

bool ranks_before(const RankedItemset& a, const RankedItemset& b) {
  if (a.items.size() != b.items.size()) return a.items.size() > b.items.size();
  if (a.frequency != b.frequency) return a.frequency > b.frequency;
  return a.items < b.items;
}

}  // namespace

TransactionDB build_transactions(const KeySystemCalls& keys, bool include_subject) {
  if (keys.path != KeySource::direct)
    throw InputError("transactions need directly extracted keys; use rank_fallback for derived keys");
  TransactionDB db;
  if (include_subject && !keys.subject_mentions.empty())
    db.transactions.push_back({0, true, keys.subject_mentions});
  for (const auto& [sentence, names] : keys.by_sentence)
    if (!names.empty()) db.transactions.push_back({sentence, false, names});
  return db;
}

PairRanking mine_pairs(const TransactionDB& db) {
  std::vector<std::string> first_mention;
  std::map<std::string, std::size_t> position;
  std::map<std::string, int> occurrences;
  for (const auto& t : db.transactions) {
    for (const auto& item : t.items) {
      if (position.emplace(item, first_mention.size()).second) first_mention.push_back(item);
      ++occurrences[item];
    }
  }

  PairRanking ranking;
  // Level 2 candidates come from frequent singletons; with support 1 that is
  // every mentioned name.
  for (std::size_t i = 0; i < first_mention.size(); ++i) {
    for (std::size_t j = i + 1; j < first_mention.size(); ++j) {
      int support = 0;
      for (const auto& t : db.transactions) {
        const auto has = [&](const std::string& s) {
          return std::find(t.items.begin(), t.items.end(), s) != t.items.end();
        };
        if (has(first_mention[i]) && has(first_mention[j])) ++support;
      }
      if (support > 0) ranking.entries.push_back({{first_mention[i], first_mention[j]}, support});
    }
  }
  for (const auto& name : first_mention) ranking.entries.push_back({{name}, occurrences[name]});
  std::stable_sort(ranking.entries.begin(), ranking.entries.end(), ranks_before);
  return ranking;
}

PairRanking rank_fallback(const KeySystemCalls& keys) {
  if (keys.path == KeySource::direct && !keys.empty())
    throw InputError("rank_fallback expects derived or empty keys");
  PairRanking ranking;
  ranking.enumerate_all = keys.empty();
  for (const auto& e : keys.entries) ranking.entries.push_back({{e.name}, 1});
  return ranking;
}

PairRanking rank_by_count(const KeySystemCalls& keys) {
  PairRanking ranking;
  ranking.enumerate_all = keys.empty();
  for (const auto& e : keys.entries) ranking.entries.push_back({{e.name}, e.count});
  std::stable_sort(ranking.entries.begin(), ranking.entries.end(), ranks_before);
  return ranking;
}

}  // namespace sysrepro
