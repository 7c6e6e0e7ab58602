#include "cpccms/tfidf.hpp"

#include <cmath>
#include <set>

#include "cpccms/error.hpp"

namespace cpccms::tfidf {

CorpusStats::CorpusStats(std::size_t n_docs, std::map<std::string, std::size_t> df)
    : n_docs_(n_docs), df_(std::move(df)) {
  if (n_docs_ == 0) throw InputError("corpus statistics need at least one document");
  vocabulary_.reserve(df_.size());
  for (const auto& [term, count] : df_) {
    if (count == 0 || count > n_docs_) {
      throw InputError("document frequency of '" + term + "' must be in [1, " +
                       std::to_string(n_docs_) + "]");
    }
    index_.emplace(term, vocabulary_.size());
    vocabulary_.push_back(term);
  }
}

std::size_t CorpusStats::df(std::string_view term) const {
  const auto it = df_.find(std::string(term));
  return it == df_.end() ? 0 : it->second;
}

bool CorpusStats::contains(std::string_view term) const {
  return index_.find(std::string(term)) != index_.end();
}

std::size_t CorpusStats::index_of(std::string_view term) const {
  const auto it = index_.find(std::string(term));
  return it == index_.end() ? vocabulary_.size() : it->second;
}

double CorpusStats::idf(std::string_view term) const {
  const std::size_t d = df(term);
  if (d == 0) throw InputError("term '" + std::string(term) + "' is not in the vocabulary");
  return smooth_idf(n_docs_, d);
}

double smooth_idf(std::size_t n_docs, std::size_t df) {
  return std::log((1.0 + static_cast<double>(n_docs)) / (1.0 + static_cast<double>(df))) + 1.0;
}

CorpusStats fit_corpus_stats(const std::vector<std::vector<std::string>>& corpus) {
  if (corpus.empty()) throw InputError("cannot fit corpus statistics on an empty corpus");
  std::map<std::string, std::size_t> df;
  for (const auto& doc : corpus) {
    const std::set<std::string> unique(doc.begin(), doc.end());
    for (const auto& term : unique) ++df[term];
  }
  return {corpus.size(), std::move(df)};
}

double TfidfVector::norm() const {
  double sq = 0.0;
  for (const auto& [term, w] : weights) sq += w * w;
  return std::sqrt(sq);
}

double TfidfVector::get(std::string_view term) const {
  const auto it = weights.find(std::string(term));
  return it == weights.end() ? 0.0 : it->second;
}

std::vector<TermWeight> explain(const std::vector<std::string>& terms, const CorpusStats& stats) {
  std::map<std::string, std::size_t> tf;
  for (const auto& t : terms) {
    if (stats.contains(t)) ++tf[t];
  }
  std::vector<TermWeight> out;
  out.reserve(tf.size());
  double sq = 0.0;
  for (const auto& [term, count] : tf) {
    TermWeight w;
    w.term = term;
    w.tf = count;
    w.df = stats.df(term);
    w.idf = smooth_idf(stats.n_docs(), w.df);
    w.tfidf = static_cast<double>(count) * w.idf;
    sq += w.tfidf * w.tfidf;
    out.push_back(std::move(w));
  }
  const double norm = std::sqrt(sq);
  for (auto& w : out) w.normalized = norm > 0.0 ? w.tfidf / norm : 0.0;
  return out;
}

TfidfVector tfidf_vector(const std::vector<std::string>& terms, const CorpusStats& stats) {
  TfidfVector out;
  for (const auto& w : explain(terms, stats)) out.weights.emplace(w.term, w.normalized);
  return out;
}

}  // namespace cpccms::tfidf
