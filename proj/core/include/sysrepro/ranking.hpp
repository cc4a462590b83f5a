#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sysrepro/catalog.hpp"
#include "sysrepro/report.hpp"
#include "sysrepro/source_index.hpp"
#include "sysrepro/text.hpp"

namespace sysrepro {

enum class RankScheme { basic, structured };

std::string_view to_string(RankScheme scheme);

inline constexpr std::size_t kStructuredQueries = 3;
inline constexpr std::size_t kStructuredSearches = kStructuredQueries * kDocFields.size();

enum class QueryKind { subject = 0, body = 1, syscalls = 2 };

std::string_view to_string(QueryKind kind);

struct RankedFile {
  std::string path;
  double score = 0.0;
  /// Per-search cosines. Structured: index q * 4 + f for query q and field
  /// f. Basic: a single element.
  std::vector<double> breakdown;
};

struct RankedFiles {
  RankScheme scheme = RankScheme::basic;
  /// Score descending, ties by path.
  std::vector<RankedFile> entries;

  /// 1-based rank of `path`, if ranked.
  std::optional<std::size_t> rank_of(std::string_view path) const;
};

/// The whole report as one query against one full-text index.
RankedFiles rank_basic(const BugReport& report, const SourceIndex& index);

/// Subject, body and KeySystemCalls queries, one per row of the 12-search
/// matrix. The syscall query repeats each name `count` times.
std::array<TokenStream, kStructuredQueries> structured_queries(const BugReport& report,
                                                               const KeySystemCalls& keys);

/// Three queries times four field-scoped indexes; score is the sum of the
/// twelve cosines divided by 12.
RankedFiles rank_structured(const std::array<TokenStream, kStructuredQueries>& queries,
                            const SourceIndex& index);

RankedFiles rank_structured(const BugReport& report, const KeySystemCalls& keys,
                            const SourceIndex& index);

}  // namespace sysrepro
