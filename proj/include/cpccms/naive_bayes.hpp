#pragma once

// Bernoulli naive Bayes over binarized TF-IDF features.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cpccms/tfidf.hpp"

namespace cpccms::nb {

enum class PriorMode {
  kEmpirical,  ///< class document share
  kBalanced,   ///< uniform over classes, the class-weighting option
};

struct TrainOptions {
  double alpha = 0.1;
  double binarize_threshold = 0.0;
  PriorMode prior_mode = PriorMode::kEmpirical;
  /// Fixes class order (used for tie-breaking). Defaults to sorted labels.
  std::optional<std::vector<std::string>> classes;
};

/// Set of vocabulary terms present in a document.
using BinaryFeatures = std::set<std::string>;

/// Terms whose weight is strictly above `threshold`.
BinaryFeatures binarize(const tfidf::TfidfVector& vec, double threshold = 0.0);

struct LabeledFeatures {
  BinaryFeatures features;
  std::string label;
};

struct Prediction {
  std::string label;
  /// Joint log score per class, in model class order.
  std::vector<double> log_scores;
  /// More than one class shares the best score; the first in class order won.
  bool tie = false;
};

class NbModel {
 public:
  const std::vector<std::string>& classes() const noexcept { return classes_; }
  const std::vector<std::string>& vocabulary() const noexcept { return vocabulary_; }
  const std::vector<double>& log_priors() const noexcept { return log_priors_; }
  double alpha() const noexcept { return alpha_; }
  double binarize_threshold() const noexcept { return threshold_; }

  /// Smoothed P(x_i = 1 | y = c) for class `c`, term index `i`.
  double feature_prob(std::size_t c, std::size_t i) const;
  double feature_log_prob(std::size_t c, std::size_t i) const { return log_p_[c * V() + i]; }

  /// argmax_c log P(c) + sum_i [x_i log p_ci + (1 - x_i) log(1 - p_ci)].
  /// Terms outside the vocabulary are ignored.
  Prediction predict(const BinaryFeatures& features) const;
  Prediction predict(const tfidf::TfidfVector& vec) const {
    return predict(binarize(vec, threshold_));
  }

 private:
  friend NbModel nb_train(const std::vector<std::string>&, const std::vector<LabeledFeatures>&,
                          const TrainOptions&);
  std::size_t V() const noexcept { return vocabulary_.size(); }

  std::vector<std::string> classes_;
  std::vector<std::string> vocabulary_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<double> log_priors_;
  std::vector<double> log_p_;      // classes x vocabulary
  std::vector<double> log_not_p_;  // log(1 - p)
  std::vector<double> absent_sum_; // per class: sum_i log(1 - p_ci)
  double alpha_ = 0.1;
  double threshold_ = 0.0;
};

/// P(x_i = 1 | c) = (docs of c containing i + alpha) / (docs of c + 2 alpha).
/// Throws InputError for alpha <= 0, an empty corpus, an empty vocabulary, or
/// documents labeled outside an explicit class list.
NbModel nb_train(const std::vector<std::string>& vocabulary,
                 const std::vector<LabeledFeatures>& corpus, const TrainOptions& options = {});

}  // namespace cpccms::nb
