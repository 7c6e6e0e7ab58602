#include "cpccms/decision.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "cpccms/competition.hpp"
#include "cpccms/error.hpp"

namespace cpccms::decision {

namespace {

void require_unique(const std::vector<std::string>& names, const char* what) {
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (!seen.insert(n).second) throw InputError(std::string("duplicate ") + what + ": " + n);
  }
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out;
}

// Efficiency per model, in `models` order. Timings must name exactly these models.
std::vector<double> efficiency_column(const std::vector<std::string>& models,
                                      const metrics::TimingSet& timings) {
  const auto eff = metrics::efficiency(timings);
  std::vector<double> column(models.size());
  std::vector<std::string> missing;
  for (std::size_t i = 0; i < models.size(); ++i) {
    const auto it = std::find_if(eff.begin(), eff.end(), [&](const metrics::EfficiencyScore& e) {
      return e.model == models[i];
    });
    if (it == eff.end()) {
      missing.push_back(models[i]);
    } else {
      column[i] = it->efficiency;
    }
  }
  std::vector<std::string> extra;
  for (const auto& e : eff) {
    if (std::find(models.begin(), models.end(), e.model) == models.end()) extra.push_back(e.model);
  }
  if (!missing.empty() || !extra.empty()) {
    std::vector<std::string> details;
    if (!missing.empty()) details.push_back("no timing for: " + join(missing));
    if (!extra.empty()) details.push_back("timing for unknown model: " + join(extra));
    throw InputError("timings do not cover exactly the scored models", details);
  }
  return column;
}

}  // namespace

DecisionMatrix::DecisionMatrix(std::vector<std::string> models, std::vector<std::string> criteria,
                               std::vector<std::vector<double>> scores)
    : models_(std::move(models)), criteria_(std::move(criteria)), scores_(std::move(scores)) {
  if (models_.empty()) throw InputError("decision matrix has no models");
  if (criteria_.empty()) throw InputError("decision matrix has no criteria");
  require_unique(models_, "model");
  require_unique(criteria_, "criterion");
  if (scores_.size() != models_.size()) {
    throw InputError("decision matrix has " + std::to_string(scores_.size()) + " rows for " +
                     std::to_string(models_.size()) + " models");
  }
  for (std::size_t i = 0; i < scores_.size(); ++i) {
    if (scores_[i].size() != criteria_.size()) {
      throw InputError("row for '" + models_[i] + "' has " + std::to_string(scores_[i].size()) +
                       " scores, expected " + std::to_string(criteria_.size()));
    }
    for (double v : scores_[i]) {
      if (!std::isfinite(v)) throw InputError("non-finite score for '" + models_[i] + "'");
    }
  }
}

void DecisionMatrix::set(std::size_t model, std::size_t criterion, double value) {
  if (model >= num_models() || criterion >= num_criteria()) {
    throw InputError("decision matrix cell out of range");
  }
  if (!std::isfinite(value)) throw InputError("score must be finite");
  scores_[model][criterion] = value;
}

std::optional<std::size_t> DecisionMatrix::model_index(std::string_view name) const {
  const auto it = std::find(models_.begin(), models_.end(), name);
  if (it == models_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - models_.begin());
}

std::optional<std::size_t> DecisionMatrix::criterion_index(std::string_view name) const {
  const auto it = std::find(criteria_.begin(), criteria_.end(), name);
  if (it == criteria_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - criteria_.begin());
}

DecisionMatrix DecisionMatrix::aligned_to(const std::vector<std::string>& order) const {
  std::vector<std::string> missing;
  std::vector<std::string> unexpected;
  std::vector<std::size_t> columns;
  for (const auto& name : order) {
    if (auto idx = criterion_index(name)) {
      columns.push_back(*idx);
    } else {
      missing.push_back(name);
    }
  }
  for (const auto& name : criteria_) {
    if (std::find(order.begin(), order.end(), name) == order.end()) unexpected.push_back(name);
  }
  if (!missing.empty() || !unexpected.empty() || order.size() != criteria_.size()) {
    std::vector<std::string> details;
    if (!missing.empty()) details.push_back("missing from scores: " + join(missing));
    if (!unexpected.empty()) details.push_back("not weighted: " + join(unexpected));
    throw InputError("criteria of the decision matrix do not match the weights", details);
  }
  std::vector<std::vector<double>> rows(num_models());
  for (std::size_t i = 0; i < num_models(); ++i) {
    for (std::size_t c : columns) rows[i].push_back(scores_[i][c]);
  }
  return {models_, order, std::move(rows)};
}

DecisionMatrix DecisionMatrix::without_criterion(std::string_view name) const {
  const auto idx = criterion_index(name);
  if (!idx) return *this;
  if (num_criteria() == 1) throw InputError("cannot drop the only criterion");
  auto criteria = criteria_;
  criteria.erase(criteria.begin() + static_cast<std::ptrdiff_t>(*idx));
  auto rows = scores_;
  for (auto& row : rows) row.erase(row.begin() + static_cast<std::ptrdiff_t>(*idx));
  return {models_, std::move(criteria), std::move(rows)};
}

DecisionMatrix DecisionMatrix::with_criterion(std::string name,
                                              const std::vector<double>& column) const {
  if (column.size() != num_models()) throw InputError("column length does not match models");
  auto criteria = criteria_;
  criteria.push_back(std::move(name));
  auto rows = scores_;
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].push_back(column[i]);
  return {models_, std::move(criteria), std::move(rows)};
}

std::vector<ModelScore> weighted_scores(const DecisionMatrix& matrix,
                                        const cpc::WeightVector& weights) {
  if (weights.criteria.size() != weights.weights.size()) {
    throw InputError("weight vector names and values differ in length");
  }
  const DecisionMatrix aligned = matrix.aligned_to(weights.criteria);
  std::vector<ModelScore> out;
  out.reserve(aligned.num_models());
  for (std::size_t i = 0; i < aligned.num_models(); ++i) {
    double g = 0.0;
    for (std::size_t j = 0; j < aligned.num_criteria(); ++j) g += weights.weights[j] * aligned(i, j);
    out.push_back({aligned.models()[i], g});
  }
  return out;
}

const RankEntry* Ranking::find(std::string_view model) const {
  const auto it =
      std::find_if(entries.begin(), entries.end(), [&](const RankEntry& e) { return e.model == model; });
  return it == entries.end() ? nullptr : &*it;
}

Ranking rank(const std::vector<ModelScore>& scores, int decimals) {
  if (scores.empty()) throw InputError("nothing to rank");
  std::vector<double> values;
  values.reserve(scores.size());
  for (const auto& s : scores) values.push_back(s.score);
  const auto ranks = competition_ranks(values, decimals);

  Ranking out;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    out.entries.push_back({scores[i].model, scores[i].score, ranks[i]});
  }
  std::stable_sort(out.entries.begin(), out.entries.end(), [](const RankEntry& a, const RankEntry& b) {
    if (a.rank != b.rank) return a.rank < b.rank;
    return a.score > b.score;
  });
  for (const auto& e : out.entries) {
    if (e.rank == 1) out.best.push_back(e.model);
  }
  return out;
}

DecisionMatrix assemble_matrix(const std::vector<ModelRecord>& records,
                               const std::optional<metrics::TimingSet>& timings,
                               bool include_efficiency) {
  if (records.empty()) throw InputError("no model records");
  std::vector<std::string> models;
  std::vector<std::vector<double>> rows;
  for (const auto& r : records) {
    models.push_back(r.model);
    rows.push_back(r.scores.values());
  }
  DecisionMatrix matrix(models, metrics::CriterionScores::names(), std::move(rows));
  if (!include_efficiency) return matrix;

  if (!timings) throw InputError("efficiency requested but no timings given");
  return matrix.with_criterion(std::string(kEfficiency), efficiency_column(models, *timings));
}

Evaluation evaluate(const cpc::PairwiseOppositeMatrix& pom, const DecisionMatrix& scores,
                    const std::optional<metrics::TimingSet>& timings, bool include_efficiency,
                    int decimals) {
  const auto eff_index = pom.index_of(kEfficiency);
  DecisionMatrix matrix = scores;
  std::optional<cpc::PairwiseOppositeMatrix> reduced;
  if (include_efficiency) {
    if (!eff_index) {
      throw InputError("efficiency requested but the weighting matrix has no 'efficiency' criterion");
    }
    if (timings) {
      matrix = matrix.without_criterion(kEfficiency);
      matrix = matrix.with_criterion(std::string(kEfficiency),
                                     efficiency_column(matrix.models(), *timings));
    } else if (!matrix.criterion_index(kEfficiency)) {
      throw InputError("efficiency requested but neither timings nor an efficiency column were given");
    }
  } else {
    if (eff_index) reduced = pom.without(*eff_index);
    if (matrix.num_criteria() > 1) matrix = matrix.without_criterion(kEfficiency);
  }
  const cpc::PairwiseOppositeMatrix& used = reduced ? *reduced : pom;

  Evaluation out{cpc::derive_weights(used, decimals), matrix.aligned_to(used.criteria()), {}, {}};
  out.scores = weighted_scores(out.matrix, out.weights.weights);
  out.ranking = rank(out.scores, decimals);
  return out;
}

}  // namespace cpccms::decision
