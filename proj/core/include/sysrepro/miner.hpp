#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sysrepro/catalog.hpp"
#include "sysrepro/report.hpp"

namespace sysrepro {

struct Transaction {
  /// Body sentence index; unused for the subject transaction.
  std::size_t sentence = 0;
  bool from_subject = false;
  /// Syscall names in mention order, repeats kept.
  std::vector<std::string> items;
};

struct TransactionDB {
  std::vector<Transaction> transactions;

  bool empty() const noexcept { return transactions.empty(); }
};

struct RankedItemset {
  /// One or two names. Pair members follow first-mention order.
  std::vector<std::string> items;
  int frequency = 0;

  bool is_pair() const noexcept { return items.size() == 2; }
  friend bool operator==(const RankedItemset&, const RankedItemset&) = default;
};

struct PairRanking {
  std::vector<RankedItemset> entries;
  /// Set when there is nothing to rank: the locator must then visit every
  /// syscall site of the ranked files.
  bool enumerate_all = false;
};

/// One transaction per syscall-bearing body sentence, plus the subject line
/// as a leading transaction when `include_subject` is set. Throws InputError
/// for derived keys.
TransactionDB build_transactions(const KeySystemCalls& keys, bool include_subject = false);

/// Two-level apriori with absolute support 1. Singleton frequency counts
/// mentions; pair frequency counts transactions holding both members. Pairs
/// first, then singletons; each group by frequency descending, ties by
/// the item list compared lexicographically.
PairRanking mine_pairs(const TransactionDB& db);

/// Derived keys as frequency-1 singletons in their given order; empty keys
/// set enumerate_all. Throws InputError for non-empty direct keys.
PairRanking rank_fallback(const KeySystemCalls& keys);

/// Ablation without pair formation: singletons by raw mention count.
PairRanking rank_by_count(const KeySystemCalls& keys);

}  // namespace sysrepro
