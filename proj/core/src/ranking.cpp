#include "sysrepro/ranking.hpp"

#include <algorithm>

#include "sysrepro/tfidf.hpp"

namespace sysrepro {
namespace {

void sort_entries(std::vector<RankedFile>& entries) {
  std::sort(entries.begin(), entries.end(), [](const RankedFile& a, const RankedFile& b) {
    return a.score != b.score ? a.score > b.score : a.path < b.path;
  });
}

TfIdfIndex field_index(const SourceIndex& index, DocField field) {
  std::vector<IndexedDoc> docs;
  docs.reserve(index.docs().size());
  for (const auto& d : index.docs()) docs.push_back({d.path, d.field(field)});
  return TfIdfIndex::build(docs);
}

TokenStream report_query(const BugReport& report) {
  return preprocess(report.subject + "\n" + report.body, TextMode::natural_language,
                    TokenOrigin::body);
}

}  // namespace

std::string_view to_string(RankScheme scheme) {
  return scheme == RankScheme::basic ? "basic" : "structured";
}

std::string_view to_string(QueryKind kind) {
  switch (kind) {
    case QueryKind::subject:
      return "subject";
    case QueryKind::body:
      return "body";
    case QueryKind::syscalls:
      return "syscalls";
  }
  return "?";
}

std::optional<std::size_t> RankedFiles::rank_of(std::string_view path) const {
  for (std::size_t i = 0; i < entries.size(); ++i)
    if (entries[i].path == path) return i + 1;
  return std::nullopt;
}

RankedFiles rank_basic(const BugReport& report, const SourceIndex& index) {
  RankedFiles out;
  out.scheme = RankScheme::basic;
  const auto tfidf = field_index(index, DocField::full_text);
  const auto sims = tfidf.similarities(report_query(report));
  for (std::size_t i = 0; i < sims.size(); ++i)
    out.entries.push_back({tfidf.doc_ids()[i], sims[i], {sims[i]}});
  sort_entries(out.entries);
  return out;
}

std::array<TokenStream, kStructuredQueries> structured_queries(const BugReport& report,
                                                               const KeySystemCalls& keys) {
  std::string names;
  for (const auto& e : keys.entries)
    for (int i = 0; i < e.count; ++i) {
      if (!names.empty()) names.push_back(' ');
      names += e.name;
    }
  return {preprocess(report.subject, TextMode::natural_language, TokenOrigin::subject),
          preprocess(report.body, TextMode::natural_language, TokenOrigin::body),
          preprocess(names, TextMode::natural_language, TokenOrigin::body)};
}

RankedFiles rank_structured(const std::array<TokenStream, kStructuredQueries>& queries,
                            const SourceIndex& index) {
  RankedFiles out;
  out.scheme = RankScheme::structured;
  const std::size_t n = index.docs().size();
  for (const auto& d : index.docs())
    out.entries.push_back({d.path, 0.0, std::vector<double>(kStructuredSearches, 0.0)});

  for (std::size_t f = 0; f < kDocFields.size(); ++f) {
    const auto tfidf = field_index(index, kDocFields[f]);
    for (std::size_t q = 0; q < kStructuredQueries; ++q) {
      const auto sims = tfidf.similarities(queries[q]);
      for (std::size_t i = 0; i < n; ++i) out.entries[i].breakdown[q * kDocFields.size() + f] = sims[i];
    }
  }
  for (auto& e : out.entries) {
    double sum = 0.0;
    for (const double s : e.breakdown) sum += s;
    e.score = sum / static_cast<double>(kStructuredSearches);
  }
  sort_entries(out.entries);
  return out;
}

RankedFiles rank_structured(const BugReport& report, const KeySystemCalls& keys,
                            const SourceIndex& index) {
  return rank_structured(structured_queries(report, keys), index);
}

}  // namespace sysrepro
