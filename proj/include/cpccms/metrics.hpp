#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cpccms::metrics {

/// counts[r][c] = samples whose true class is classes[r] and predicted class
/// is classes[c].
class ConfusionMatrix {
 public:
  /// Throws InputError on duplicate or empty class lists and on shape mismatch.
  ConfusionMatrix(std::vector<std::string> classes,
                  std::vector<std::vector<std::uint64_t>> counts);

  static ConfusionMatrix empty(std::vector<std::string> classes);

  std::size_t num_classes() const noexcept { return classes_.size(); }
  const std::vector<std::string>& classes() const noexcept { return classes_; }

  std::uint64_t operator()(std::size_t r, std::size_t c) const {
    return counts_[r * num_classes() + c];
  }
  void add(std::size_t r, std::size_t c, std::uint64_t n = 1);

  std::uint64_t total() const;
  std::uint64_t trace() const;
  std::uint64_t row_sum(std::size_t r) const;
  std::uint64_t col_sum(std::size_t c) const;
  std::optional<std::size_t> index_of(std::string_view label) const;

  std::vector<std::vector<std::uint64_t>> rows() const;

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;

 private:
  std::vector<std::string> classes_;
  std::vector<std::uint64_t> counts_;
};

/// Tallies (true, predicted) pairs. Throws InputError on length mismatch,
/// empty input or labels missing from `classes`.
ConfusionMatrix confusion_from_labels(std::span<const std::string> true_labels,
                                      std::span<const std::string> predicted_labels,
                                      std::vector<std::string> classes);

struct OneVsRestCounts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;
};

OneVsRestCounts one_vs_rest(const ConfusionMatrix& cm, std::size_t class_index);

/// The seven quality criteria. Efficiency is not a property of one confusion
/// matrix, see efficiency().
struct CriterionScores {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double specificity = 0.0;
  double mcc = 0.0;
  double kappa = 0.0;

  static constexpr std::size_t kCount = 7;
  /// Canonical criterion names, in column order.
  static const std::vector<std::string>& names();
  std::vector<double> values() const;
  std::optional<double> get(std::string_view name) const;
};

/// Accuracy, macro-averaged precision / recall / F1 / specificity, multiclass
/// MCC and Cohen's kappa. Zero denominators contribute 0; kappa with p_e == 1
/// is 1 when p_o == 1 and 0 otherwise. Throws InputError when total == 0.
CriterionScores criterion_scores(const ConfusionMatrix& cm);

/// Per-class one-vs-rest precision, recall, F1, specificity (debug output).
struct PerClassScores {
  std::string label;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double specificity = 0.0;
};
std::vector<PerClassScores> per_class_scores(const ConfusionMatrix& cm);

struct Timing {
  std::string model;
  double seconds = 0.0;
};

/// Ordered model -> running time in seconds. Names are unique, times finite
/// and positive.
using TimingSet = std::vector<Timing>;

void validate_timings(const TimingSet& timings);

struct EfficiencyScore {
  std::string model;
  double efficiency = 0.0;
};

/// Reverse min-max normalization: (max T - T_i) / (max T - min T). When every
/// time is equal all models score 1.
std::vector<EfficiencyScore> efficiency(const TimingSet& timings);

}  // namespace cpccms::metrics
