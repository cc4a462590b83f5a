#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sysrepro/text.hpp"

namespace sysrepro {

/// Sparse vector as (dimension, weight) pairs sorted by dimension.
using SparseVector = std::vector<std::pair<std::size_t, double>>;

struct IndexedDoc {
  std::string id;
  TokenStream tokens;
};

/// Vector-space index: raw term frequency, idf = ln(N / df), document
/// vectors L2-normalized (zero vector when every weight is zero).
class TfIdfIndex {
 public:
  /// Throws InputError on an empty corpus or duplicate ids.
  static TfIdfIndex build(const std::vector<IndexedDoc>& docs);

  /// Cosine between the idf-weighted query and the document, in [0, 1].
  /// Terms outside the vocabulary are ignored. Throws InputError for an
  /// unknown id.
  double similarity(const TokenStream& query, std::string_view doc_id) const;

  /// Similarity against every document, in build order.
  std::vector<double> similarities(const TokenStream& query) const;

  SparseVector query_vector(const TokenStream& query) const;

  double idf(std::string_view term) const;
  std::size_t size() const noexcept { return ids_.size(); }
  std::size_t vocabulary_size() const noexcept { return idf_.size(); }
  const std::vector<std::string>& doc_ids() const noexcept { return ids_; }
  const SparseVector& doc_vector(std::string_view doc_id) const;

 private:
  std::size_t position(std::string_view doc_id) const;

  std::unordered_map<std::string, std::size_t> vocabulary_;
  std::vector<double> idf_;
  std::vector<std::string> ids_;
  std::unordered_map<std::string, std::size_t> id_position_;
  std::vector<SparseVector> vectors_;
};

}  // namespace sysrepro
