#include "cpccms/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_map>

#include "cpccms/error.hpp"

namespace cpccms::metrics {

ConfusionMatrix::ConfusionMatrix(std::vector<std::string> classes,
                                 std::vector<std::vector<std::uint64_t>> counts)
    : classes_(std::move(classes)) {
  const std::size_t k = classes_.size();
  if (k == 0) throw InputError("confusion matrix needs at least one class");
  std::set<std::string> seen;
  for (const auto& c : classes_) {
    if (!seen.insert(c).second) throw InputError("duplicate class label: " + c);
  }
  if (counts.size() != k) throw InputError("confusion matrix row count does not match classes");
  counts_.reserve(k * k);
  for (const auto& row : counts) {
    if (row.size() != k) throw InputError("confusion matrix is not square");
    counts_.insert(counts_.end(), row.begin(), row.end());
  }
}

ConfusionMatrix ConfusionMatrix::empty(std::vector<std::string> classes) {
  const std::size_t k = classes.size();
  return {std::move(classes), std::vector<std::vector<std::uint64_t>>(k, std::vector<std::uint64_t>(k, 0))};
}

void ConfusionMatrix::add(std::size_t r, std::size_t c, std::uint64_t n) {
  if (r >= num_classes() || c >= num_classes()) throw InputError("class index out of range");
  counts_[r * num_classes() + c] += n;
}

std::uint64_t ConfusionMatrix::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

std::uint64_t ConfusionMatrix::trace() const {
  std::uint64_t t = 0;
  for (std::size_t k = 0; k < num_classes(); ++k) t += (*this)(k, k);
  return t;
}

std::uint64_t ConfusionMatrix::row_sum(std::size_t r) const {
  std::uint64_t s = 0;
  for (std::size_t c = 0; c < num_classes(); ++c) s += (*this)(r, c);
  return s;
}

std::uint64_t ConfusionMatrix::col_sum(std::size_t c) const {
  std::uint64_t s = 0;
  for (std::size_t r = 0; r < num_classes(); ++r) s += (*this)(r, c);
  return s;
}

std::optional<std::size_t> ConfusionMatrix::index_of(std::string_view label) const {
  const auto it = std::find(classes_.begin(), classes_.end(), label);
  if (it == classes_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - classes_.begin());
}

std::vector<std::vector<std::uint64_t>> ConfusionMatrix::rows() const {
  std::vector<std::vector<std::uint64_t>> out(num_classes());
  for (std::size_t r = 0; r < num_classes(); ++r) {
    for (std::size_t c = 0; c < num_classes(); ++c) out[r].push_back((*this)(r, c));
  }
  return out;
}

ConfusionMatrix confusion_from_labels(std::span<const std::string> true_labels,
                                      std::span<const std::string> predicted_labels,
                                      std::vector<std::string> classes) {
  if (true_labels.size() != predicted_labels.size()) {
    throw InputError("label sequences differ in length (" + std::to_string(true_labels.size()) +
                     " vs " + std::to_string(predicted_labels.size()) + ")");
  }
  if (true_labels.empty()) throw InputError("no samples");
  auto cm = ConfusionMatrix::empty(std::move(classes));
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t k = 0; k < cm.num_classes(); ++k) index.emplace(cm.classes()[k], k);
  auto lookup = [&](const std::string& label, std::size_t row) {
    const auto it = index.find(label);
    if (it == index.end()) {
      throw InputError("unknown label '" + label + "' in sample " + std::to_string(row));
    }
    return it->second;
  };
  for (std::size_t k = 0; k < true_labels.size(); ++k) {
    cm.add(lookup(true_labels[k], k), lookup(predicted_labels[k], k));
  }
  return cm;
}

OneVsRestCounts one_vs_rest(const ConfusionMatrix& cm, std::size_t class_index) {
  if (class_index >= cm.num_classes()) throw InputError("class index out of range");
  OneVsRestCounts out;
  out.tp = cm(class_index, class_index);
  out.fp = cm.col_sum(class_index) - out.tp;
  out.fn = cm.row_sum(class_index) - out.tp;
  out.tn = cm.total() - out.tp - out.fp - out.fn;
  return out;
}

namespace {

double ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

PerClassScores class_scores(const ConfusionMatrix& cm, std::size_t k) {
  const auto c = one_vs_rest(cm, k);
  const auto tp = static_cast<double>(c.tp);
  const auto fp = static_cast<double>(c.fp);
  const auto fn = static_cast<double>(c.fn);
  const auto tn = static_cast<double>(c.tn);
  PerClassScores s;
  s.label = cm.classes()[k];
  s.precision = ratio(tp, tp + fp);
  s.recall = ratio(tp, tp + fn);
  s.f1 = ratio(2.0 * s.precision * s.recall, s.precision + s.recall);
  s.specificity = ratio(tn, tn + fp);
  return s;
}

}  // namespace

const std::vector<std::string>& CriterionScores::names() {
  static const std::vector<std::string> kNames{"accuracy",    "precision", "recall", "f1",
                                               "specificity", "mcc",       "kappa"};
  return kNames;
}

std::vector<double> CriterionScores::values() const {
  return {accuracy, precision, recall, f1, specificity, mcc, kappa};
}

std::optional<double> CriterionScores::get(std::string_view name) const {
  const auto& n = names();
  const auto it = std::find(n.begin(), n.end(), name);
  if (it == n.end()) return std::nullopt;
  return values()[static_cast<std::size_t>(it - n.begin())];
}

std::vector<PerClassScores> per_class_scores(const ConfusionMatrix& cm) {
  std::vector<PerClassScores> out;
  for (std::size_t k = 0; k < cm.num_classes(); ++k) out.push_back(class_scores(cm, k));
  return out;
}

CriterionScores criterion_scores(const ConfusionMatrix& cm) {
  const std::uint64_t total_count = cm.total();
  if (total_count == 0) throw InputError("confusion matrix has no samples");
  const auto total = static_cast<double>(total_count);
  const auto k = cm.num_classes();

  CriterionScores s;
  s.accuracy = static_cast<double>(cm.trace()) / total;

  for (const auto& pc : per_class_scores(cm)) {
    s.precision += pc.precision;
    s.recall += pc.recall;
    s.f1 += pc.f1;
    s.specificity += pc.specificity;
  }
  s.precision /= static_cast<double>(k);
  s.recall /= static_cast<double>(k);
  s.f1 /= static_cast<double>(k);
  s.specificity /= static_cast<double>(k);

  // Multiclass MCC: (c s - sum p_k t_k) / sqrt((s^2 - sum p_k^2)(s^2 - sum t_k^2)).
  // Long double keeps the large products exact enough for the 1e-12 checks.
  long double sum_pt = 0, sum_pp = 0, sum_tt = 0, p_e = 0;
  for (std::size_t c = 0; c < k; ++c) {
    const auto t = static_cast<long double>(cm.row_sum(c));
    const auto p = static_cast<long double>(cm.col_sum(c));
    sum_pt += p * t;
    sum_pp += p * p;
    sum_tt += t * t;
    p_e += (t / total) * (p / total);
  }
  const long double sl = total;
  const long double cov = static_cast<long double>(cm.trace()) * sl - sum_pt;
  const long double den = (sl * sl - sum_pp) * (sl * sl - sum_tt);
  s.mcc = den <= 0 ? 0.0 : static_cast<double>(cov / std::sqrt(den));

  const double p_o = s.accuracy;
  const auto pe = static_cast<double>(p_e);
  if (1.0 - pe == 0.0) {
    s.kappa = p_o == 1.0 ? 1.0 : 0.0;
  } else {
    s.kappa = (p_o - pe) / (1.0 - pe);
  }
  return s;
}

void validate_timings(const TimingSet& timings) {
  if (timings.empty()) throw InputError("timing set is empty");
  std::set<std::string> seen;
  for (const auto& t : timings) {
    if (!seen.insert(t.model).second) throw InputError("duplicate model in timings: " + t.model);
    if (!std::isfinite(t.seconds) || t.seconds <= 0.0) {
      throw InputError("running time for '" + t.model + "' must be finite and positive");
    }
  }
}

std::vector<EfficiencyScore> efficiency(const TimingSet& timings) {
  validate_timings(timings);
  const auto [lo, hi] = std::minmax_element(
      timings.begin(), timings.end(),
      [](const Timing& a, const Timing& b) { return a.seconds < b.seconds; });
  const double min_t = lo->seconds;
  const double max_t = hi->seconds;
  std::vector<EfficiencyScore> out;
  out.reserve(timings.size());
  for (const auto& t : timings) {
    const double e = max_t == min_t ? 1.0 : (max_t - t.seconds) / (max_t - min_t);
    out.push_back({t.model, e});
  }
  return out;
}

}  // namespace cpccms::metrics
