#pragma once

// Weighted decision matrix: aggregate per-criterion model scores with CPC
// weights and rank the models.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cpccms/cpc.hpp"
#include "cpccms/metrics.hpp"

namespace cpccms::decision {

inline constexpr std::string_view kEfficiency = "efficiency";
inline constexpr int kReportDecimals = 3;

/// m models x n criteria score matrix, row-major.
class DecisionMatrix {
 public:
  /// Throws InputError on ragged rows, empty axes or duplicate names.
  DecisionMatrix(std::vector<std::string> models, std::vector<std::string> criteria,
                 std::vector<std::vector<double>> scores);

  std::size_t num_models() const noexcept { return models_.size(); }
  std::size_t num_criteria() const noexcept { return criteria_.size(); }
  const std::vector<std::string>& models() const noexcept { return models_; }
  const std::vector<std::string>& criteria() const noexcept { return criteria_; }
  const std::vector<std::vector<double>>& scores() const noexcept { return scores_; }

  double operator()(std::size_t model, std::size_t criterion) const {
    return scores_[model][criterion];
  }
  void set(std::size_t model, std::size_t criterion, double value);

  std::optional<std::size_t> model_index(std::string_view name) const;
  std::optional<std::size_t> criterion_index(std::string_view name) const;

  /// Same matrix with columns reordered to `order` (by name). Throws
  /// InputError listing missing and unexpected names if the criterion sets
  /// differ.
  DecisionMatrix aligned_to(const std::vector<std::string>& order) const;

  /// Copy with one column dropped; no-op when the column is absent.
  DecisionMatrix without_criterion(std::string_view name) const;

  /// Copy with an extra column appended.
  DecisionMatrix with_criterion(std::string name, const std::vector<double>& column) const;

  friend bool operator==(const DecisionMatrix&, const DecisionMatrix&) = default;

 private:
  std::vector<std::string> models_;
  std::vector<std::string> criteria_;
  std::vector<std::vector<double>> scores_;
};

struct ModelScore {
  std::string model;
  double score = 0.0;
};

/// G_i = sum_j w_j s_ij, with the matrix aligned to the weights by criterion
/// name first.
std::vector<ModelScore> weighted_scores(const DecisionMatrix& matrix,
                                        const cpc::WeightVector& weights);

struct RankEntry {
  std::string model;
  double score = 0.0;
  int rank = 0;
};

struct Ranking {
  /// Sorted by descending score (ties keep input order).
  std::vector<RankEntry> entries;
  /// Every model at rank 1.
  std::vector<std::string> best;

  const RankEntry* find(std::string_view model) const;
};

/// Competition ranking with ties detected on scores rounded to `decimals`.
/// Throws InputError on empty input.
Ranking rank(const std::vector<ModelScore>& scores, int decimals = kReportDecimals);

struct ModelRecord {
  std::string model;
  metrics::CriterionScores scores;
};

/// Columns accuracy..kappa, plus efficiency computed from `timings` when
/// `include_efficiency` is set. Timings must cover exactly the record models.
DecisionMatrix assemble_matrix(const std::vector<ModelRecord>& records,
                               const std::optional<metrics::TimingSet>& timings,
                               bool include_efficiency);

/// Weights + scores + ranking for one decision problem.
struct Evaluation {
  cpc::WeightReport weights;
  /// The matrix actually scored, aligned to the weight criteria.
  DecisionMatrix matrix;
  std::vector<ModelScore> scores;
  Ranking ranking;
};

/// End-to-end ranking from a POM and a score matrix.
///
/// With `include_efficiency` the POM must have an "efficiency" criterion. The
/// efficiency column comes from `timings` when given (replacing any column
/// already in `scores`), otherwise from `scores` itself.
///
/// Without it, an "efficiency" criterion in the POM is dropped (principal
/// submatrix) and any efficiency column in `scores` is ignored.
Evaluation evaluate(const cpc::PairwiseOppositeMatrix& pom, const DecisionMatrix& scores,
                    const std::optional<metrics::TimingSet>& timings, bool include_efficiency,
                    int decimals = kReportDecimals);

}  // namespace cpccms::decision
