#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cpccms::tfidf {

/// Document frequencies over a fitted corpus.
class CorpusStats {
 public:
  /// Throws InputError when n_docs is 0 or any DF is outside [1, n_docs].
  CorpusStats(std::size_t n_docs, std::map<std::string, std::size_t> df);

  std::size_t n_docs() const noexcept { return n_docs_; }
  /// Lexicographically sorted.
  const std::vector<std::string>& vocabulary() const noexcept { return vocabulary_; }
  const std::map<std::string, std::size_t>& df() const noexcept { return df_; }

  std::size_t df(std::string_view term) const;
  bool contains(std::string_view term) const;
  /// Position of `term` in vocabulary(), or vocabulary().size() if unknown.
  std::size_t index_of(std::string_view term) const;

  /// ln((1 + N) / (1 + DF)) + 1. Throws InputError for unknown terms.
  double idf(std::string_view term) const;

 private:
  std::size_t n_docs_;
  std::map<std::string, std::size_t> df_;
  std::vector<std::string> vocabulary_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Smoothed inverse document frequency for given counts.
double smooth_idf(std::size_t n_docs, std::size_t df);

/// Counts, per term, the documents that contain it. Throws InputError on an
/// empty corpus.
CorpusStats fit_corpus_stats(const std::vector<std::vector<std::string>>& corpus);

/// Sparse term -> weight map.
struct TfidfVector {
  std::map<std::string, double> weights;

  double norm() const;
  double get(std::string_view term) const;
};

/// Raw in-document count times smoothed IDF, L2-normalized. Terms unknown to
/// `stats` are dropped; an all-unknown document gives the empty vector.
TfidfVector tfidf_vector(const std::vector<std::string>& terms, const CorpusStats& stats);

/// The unnormalized stages, for reports and debugging.
struct TermWeight {
  std::string term;
  std::size_t tf = 0;
  std::size_t df = 0;
  double idf = 0.0;
  double tfidf = 0.0;
  double normalized = 0.0;
};
std::vector<TermWeight> explain(const std::vector<std::string>& terms, const CorpusStats& stats);

}  // namespace cpccms::tfidf
