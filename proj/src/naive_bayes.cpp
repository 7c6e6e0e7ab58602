#include "cpccms/naive_bayes.hpp"

#include <algorithm>
#include <cmath>

#include "cpccms/error.hpp"

namespace cpccms::nb {

BinaryFeatures binarize(const tfidf::TfidfVector& vec, double threshold) {
  BinaryFeatures out;
  for (const auto& [term, w] : vec.weights) {
    if (w > threshold) out.insert(term);
  }
  return out;
}

double NbModel::feature_prob(std::size_t c, std::size_t i) const {
  return std::exp(log_p_[c * V() + i]);
}

Prediction NbModel::predict(const BinaryFeatures& features) const {
  Prediction out;
  out.log_scores.resize(classes_.size());
  std::vector<std::size_t> present;
  present.reserve(features.size());
  for (const auto& term : features) {
    if (const auto it = index_.find(term); it != index_.end()) present.push_back(it->second);
  }
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    double s = log_priors_[c] + absent_sum_[c];
    for (std::size_t i : present) s += log_p_[c * V() + i] - log_not_p_[c * V() + i];
    out.log_scores[c] = s;
  }
  const auto best = std::max_element(out.log_scores.begin(), out.log_scores.end());
  out.label = classes_[static_cast<std::size_t>(best - out.log_scores.begin())];
  out.tie = std::count(out.log_scores.begin(), out.log_scores.end(), *best) > 1;
  return out;
}

NbModel nb_train(const std::vector<std::string>& vocabulary,
                 const std::vector<LabeledFeatures>& corpus, const TrainOptions& options) {
  if (!(options.alpha > 0.0) || !std::isfinite(options.alpha)) {
    throw InputError("smoothing alpha must be a positive finite number");
  }
  if (corpus.empty()) throw InputError("cannot train on an empty corpus");
  if (vocabulary.empty()) throw InputError("cannot train with an empty vocabulary");

  NbModel model;
  model.alpha_ = options.alpha;
  model.threshold_ = options.binarize_threshold;
  model.vocabulary_ = vocabulary;
  for (std::size_t i = 0; i < vocabulary.size(); ++i) {
    if (!model.index_.emplace(vocabulary[i], i).second) {
      throw InputError("duplicate vocabulary term: " + vocabulary[i]);
    }
  }

  if (options.classes) {
    model.classes_ = *options.classes;
  } else {
    std::set<std::string> labels;
    for (const auto& doc : corpus) labels.insert(doc.label);
    model.classes_.assign(labels.begin(), labels.end());
  }
  const std::size_t K = model.classes_.size();
  const std::size_t V = vocabulary.size();
  std::unordered_map<std::string, std::size_t> class_index;
  for (std::size_t c = 0; c < K; ++c) {
    if (!class_index.emplace(model.classes_[c], c).second) {
      throw InputError("duplicate class label: " + model.classes_[c]);
    }
  }

  std::vector<double> class_docs(K, 0.0);
  std::vector<double> term_docs(K * V, 0.0);
  for (const auto& doc : corpus) {
    const auto it = class_index.find(doc.label);
    if (it == class_index.end()) throw InputError("document label '" + doc.label + "' is not a class");
    const std::size_t c = it->second;
    class_docs[c] += 1.0;
    for (const auto& term : doc.features) {
      if (const auto t = model.index_.find(term); t != model.index_.end()) {
        term_docs[c * V + t->second] += 1.0;
      }
    }
  }
  for (std::size_t c = 0; c < K; ++c) {
    if (class_docs[c] == 0.0) {
      throw InputError("class '" + model.classes_[c] + "' has no training documents");
    }
  }

  const double n = static_cast<double>(corpus.size());
  model.log_priors_.resize(K);
  for (std::size_t c = 0; c < K; ++c) {
    model.log_priors_[c] = options.prior_mode == PriorMode::kBalanced
                               ? -std::log(static_cast<double>(K))
                               : std::log(class_docs[c] / n);
  }

  const double a = options.alpha;
  model.log_p_.resize(K * V);
  model.log_not_p_.resize(K * V);
  model.absent_sum_.assign(K, 0.0);
  for (std::size_t c = 0; c < K; ++c) {
    const double denom = class_docs[c] + 2.0 * a;
    for (std::size_t i = 0; i < V; ++i) {
      const double hits = term_docs[c * V + i];
      // log(1 - p) from the complementary count avoids cancellation near p = 1.
      model.log_p_[c * V + i] = std::log((hits + a) / denom);
      model.log_not_p_[c * V + i] = std::log((class_docs[c] - hits + a) / denom);
      model.absent_sum_[c] += model.log_not_p_[c * V + i];
    }
  }
  return model;
}

}  // namespace cpccms::nb
