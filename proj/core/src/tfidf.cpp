#include "sysrepro/tfidf.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "sysrepro/error.hpp"

namespace sysrepro {
namespace {

double dot(const SparseVector& a, const SparseVector& b) {
  double sum = 0.0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (i->first < j->first) {
      ++i;
    } else if (j->first < i->first) {
      ++j;
    } else {
      sum += i->second * j->second;
      ++i;
      ++j;
    }
  }
  return sum;
}

void normalize(SparseVector& v) {
  double norm = 0.0;
  for (const auto& [dim, w] : v) norm += w * w;
  if (norm <= 0.0) {
    v.clear();
    return;
  }
  norm = std::sqrt(norm);
  for (auto& [dim, w] : v) w /= norm;
}

}  // namespace

TfIdfIndex TfIdfIndex::build(const std::vector<IndexedDoc>& docs) {
  if (docs.empty()) throw InputError("cannot build a TF-IDF index over an empty corpus");

  TfIdfIndex index;
  std::vector<std::map<std::size_t, double>> counts(docs.size());
  std::vector<std::size_t> df;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    if (!index.id_position_.emplace(docs[d].id, d).second)
      throw InputError("duplicate document id in TF-IDF corpus: " + docs[d].id);
    index.ids_.push_back(docs[d].id);
    for (const auto& term : docs[d].tokens.tokens) {
      auto [it, inserted] = index.vocabulary_.emplace(term, df.size());
      if (inserted) df.push_back(0);
      auto& c = counts[d][it->second];
      if (c == 0.0) ++df[it->second];
      c += 1.0;
    }
  }

  const auto n = static_cast<double>(docs.size());
  index.idf_.resize(df.size());
  for (std::size_t t = 0; t < df.size(); ++t)
    index.idf_[t] = std::log(n / static_cast<double>(df[t]));

  index.vectors_.reserve(docs.size());
  for (const auto& doc_counts : counts) {
    SparseVector v;
    for (const auto& [dim, tf] : doc_counts) {
      const double w = tf * index.idf_[dim];
      if (w != 0.0) v.emplace_back(dim, w);
    }
    normalize(v);
    index.vectors_.push_back(std::move(v));
  }
  return index;
}

SparseVector TfIdfIndex::query_vector(const TokenStream& query) const {
  std::map<std::size_t, double> counts;
  for (const auto& term : query.tokens) {
    const auto it = vocabulary_.find(term);
    if (it != vocabulary_.end()) counts[it->second] += 1.0;
  }
  SparseVector v;
  for (const auto& [dim, tf] : counts) {
    const double w = tf * idf_[dim];
    if (w != 0.0) v.emplace_back(dim, w);
  }
  normalize(v);
  return v;
}

std::size_t TfIdfIndex::position(std::string_view doc_id) const {
  const auto it = id_position_.find(std::string(doc_id));
  if (it == id_position_.end()) throw InputError("unknown document id: " + std::string(doc_id));
  return it->second;
}

double TfIdfIndex::similarity(const TokenStream& query, std::string_view doc_id) const {
  const auto q = query_vector(query);
  return std::clamp(dot(q, vectors_[position(doc_id)]), 0.0, 1.0);
}

std::vector<double> TfIdfIndex::similarities(const TokenStream& query) const {
  const auto q = query_vector(query);
  std::vector<double> out;
  out.reserve(vectors_.size());
  for (const auto& v : vectors_) out.push_back(std::clamp(dot(q, v), 0.0, 1.0));
  return out;
}

double TfIdfIndex::idf(std::string_view term) const {
  const auto it = vocabulary_.find(std::string(term));
  return it == vocabulary_.end() ? 0.0 : idf_[it->second];
}

const SparseVector& TfIdfIndex::doc_vector(std::string_view doc_id) const {
  return vectors_[position(doc_id)];
}

}  // namespace sysrepro
