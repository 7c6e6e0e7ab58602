#include "cpccms/cpc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "cpccms/competition.hpp"
#include "cpccms/error.hpp"

namespace cpccms::cpc {

namespace {

std::string cell(std::size_t i, std::size_t j) {
  std::ostringstream out;
  out << "(" << i << "," << j << ")";
  return out.str();
}

void check_kappa(double kappa) {
  if (!std::isfinite(kappa) || kappa <= 0.0) {
    throw StructuralError("kappa must be a positive finite number");
  }
}

}  // namespace

PairwiseOppositeMatrix::PairwiseOppositeMatrix(std::vector<std::string> criteria, double kappa,
                                               std::vector<std::vector<double>> entries)
    : criteria_(std::move(criteria)), kappa_(kappa) {
  const std::size_t n = criteria_.size();
  if (n < 2) {
    throw StructuralError("a pairwise opposite matrix needs at least 2 criteria");
  }
  check_kappa(kappa_);
  std::set<std::string> seen;
  for (const auto& name : criteria_) {
    if (!seen.insert(name).second) {
      throw StructuralError("duplicate criterion name: " + name);
    }
  }
  if (entries.size() != n) {
    throw StructuralError("matrix has " + std::to_string(entries.size()) + " rows but " +
                          std::to_string(n) + " criteria");
  }
  entries_.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (entries[i].size() != n) {
      throw StructuralError("row " + std::to_string(i) + " has " +
                            std::to_string(entries[i].size()) + " entries, expected " +
                            std::to_string(n));
    }
    entries_.insert(entries_.end(), entries[i].begin(), entries[i].end());
  }
}

PairwiseOppositeMatrix PairwiseOppositeMatrix::zeros(std::vector<std::string> criteria,
                                                     double kappa) {
  const std::size_t n = criteria.size();
  return {std::move(criteria), kappa,
          std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0))};
}

void PairwiseOppositeMatrix::set_raw(std::size_t i, std::size_t j, double value) {
  if (i >= size() || j >= size()) {
    throw InputError("cell " + cell(i, j) + " is outside a " + std::to_string(size()) + "x" +
                     std::to_string(size()) + " matrix");
  }
  entries_[i * size() + j] = value;
}

void PairwiseOppositeMatrix::set_judgment(std::size_t i, std::size_t j, double value) {
  if (i >= size() || j >= size()) {
    throw InputError("cell " + cell(i, j) + " is outside a " + std::to_string(size()) + "x" +
                     std::to_string(size()) + " matrix");
  }
  if (i == j) {
    throw InputError("diagonal cell " + cell(i, j) + " is fixed at 0");
  }
  if (!std::isfinite(value) || std::abs(value) > kappa_) {
    std::ostringstream msg;
    msg << "judgment " << value << " at " << cell(i, j) << " is outside [-" << kappa_ << ", "
        << kappa_ << "]";
    throw InputError(msg.str());
  }
  entries_[i * size() + j] = value;
  // 0.0 - 0.0 keeps the mirror at +0.0 rather than -0.0.
  entries_[j * size() + i] = 0.0 - value;
}

std::optional<std::size_t> PairwiseOppositeMatrix::index_of(std::string_view criterion) const {
  const auto it = std::find(criteria_.begin(), criteria_.end(), criterion);
  if (it == criteria_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - criteria_.begin());
}

std::vector<std::vector<double>> PairwiseOppositeMatrix::rows() const {
  std::vector<std::vector<double>> out(size());
  for (std::size_t i = 0; i < size(); ++i) {
    out[i].assign(entries_.begin() + static_cast<std::ptrdiff_t>(i * size()),
                  entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * size()));
  }
  return out;
}

PairwiseOppositeMatrix PairwiseOppositeMatrix::negated() const {
  PairwiseOppositeMatrix out = *this;
  for (double& e : out.entries_) e = 0.0 - e;
  return out;
}

PairwiseOppositeMatrix PairwiseOppositeMatrix::permuted(std::span<const std::size_t> order) const {
  const std::size_t n = size();
  std::vector<bool> used(n, false);
  if (order.size() != n) throw InputError("permutation length does not match matrix size");
  for (std::size_t k : order) {
    if (k >= n || used[k]) throw InputError("order is not a permutation");
    used[k] = true;
  }
  std::vector<std::string> names(n);
  std::vector<std::vector<double>> rows(n, std::vector<double>(n));
  for (std::size_t a = 0; a < n; ++a) {
    names[a] = criteria_[order[a]];
    for (std::size_t b = 0; b < n; ++b) rows[a][b] = (*this)(order[a], order[b]);
  }
  return {std::move(names), kappa_, std::move(rows)};
}

PairwiseOppositeMatrix PairwiseOppositeMatrix::without(std::size_t k) const {
  if (k >= size()) throw InputError("criterion index out of range");
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < size(); ++i) {
    if (i != k) keep.push_back(i);
  }
  std::vector<std::string> names;
  std::vector<std::vector<double>> rows;
  for (std::size_t a : keep) {
    names.push_back(criteria_[a]);
    auto& row = rows.emplace_back();
    for (std::size_t b : keep) row.push_back((*this)(a, b));
  }
  return {std::move(names), kappa_, std::move(rows)};
}

std::vector<std::string> ValidationResult::messages() const {
  std::vector<std::string> out;
  out.reserve(violations.size());
  for (const auto& v : violations) out.push_back(v.message);
  return out;
}

ValidationResult validate_pom(const PairwiseOppositeMatrix& pom) {
  ValidationResult result;
  const std::size_t n = pom.size();
  const double kappa = pom.kappa();
  auto add = [&](ViolationKind kind, std::size_t i, std::size_t j, const std::string& what) {
    result.violations.push_back({kind, i, j, what + " at " + cell(i, j)});
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double b = pom(i, j);
      if (!std::isfinite(b)) {
        add(ViolationKind::kNonFinite, i, j, "non-finite entry");
        continue;
      }
      if (i == j) {
        if (b != 0.0) {
          std::ostringstream msg;
          msg << "diagonal entry " << b << " is not 0";
          add(ViolationKind::kDiagonal, i, j, msg.str());
        }
        continue;
      }
      if (std::abs(b) > kappa) {
        std::ostringstream msg;
        msg << "entry " << b << " exceeds kappa " << kappa;
        add(ViolationKind::kRange, i, j, msg.str());
      }
      if (i < j && std::isfinite(pom(j, i)) && b != -pom(j, i)) {
        std::ostringstream msg;
        msg << "antisymmetry broken: b" << cell(i, j) << "=" << b << " but b" << cell(j, i)
            << "=" << pom(j, i);
        add(ViolationKind::kAntisymmetry, i, j, msg.str());
      }
    }
  }
  return result;
}

void require_valid(const PairwiseOppositeMatrix& pom) {
  auto result = validate_pom(pom);
  if (!result.ok()) {
    throw InputError("invalid pairwise opposite matrix (" +
                         std::to_string(result.violations.size()) + " violation(s))",
                     result.messages());
  }
}

double accordance_index(const PairwiseOppositeMatrix& pom) {
  require_valid(pom);
  const std::size_t n = pom.size();
  const double kappa = pom.kappa();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double sq = 0.0;
      for (std::size_t p = 0; p < n; ++p) {
        const double d = (pom(i, p) + pom(p, j) - pom(i, j)) / kappa;
        sq += d * d;
      }
      total += std::sqrt(sq / static_cast<double>(n));
    }
  }
  return total / static_cast<double>(n * n);
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kConsistent:
      return "Consistent";
    case Verdict::kAcceptable:
      return "Acceptable";
    case Verdict::kNeedsRevision:
      return "NeedsRevision";
  }
  return "Unknown";
}

std::optional<Verdict> verdict_from_string(std::string_view text) {
  for (auto v : {Verdict::kConsistent, Verdict::kAcceptable, Verdict::kNeedsRevision}) {
    if (to_string(v) == text) return v;
  }
  return std::nullopt;
}

Verdict classify_accordance(double ai) {
  if (!std::isfinite(ai) || ai < 0.0) {
    throw InputError("accordance index must be a nonnegative finite number");
  }
  if (ai <= kConsistentTolerance) return Verdict::kConsistent;
  if (ai > kRevisionThreshold) return Verdict::kNeedsRevision;
  return Verdict::kAcceptable;
}

AccordanceReport assess(const PairwiseOppositeMatrix& pom) {
  const double ai = accordance_index(pom);
  return {ai, classify_accordance(ai)};
}

UtilityVector rau_utilities(const PairwiseOppositeMatrix& pom) {
  require_valid(pom);
  const std::size_t n = pom.size();
  UtilityVector out{pom.criteria(), std::vector<double>(n)};
  std::vector<double> row(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) row[j] = pom(i, j);
    // Summing in sorted order makes the result independent of criterion
    // order, so permuting criteria permutes utilities bit for bit.
    std::sort(row.begin(), row.end());
    out.values[i] = pom.kappa() + std::accumulate(row.begin(), row.end(), 0.0) / static_cast<double>(n);
  }
  return out;
}

double WeightVector::sum() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }

std::optional<double> WeightVector::weight_of(std::string_view criterion) const {
  const auto it = std::find(criteria.begin(), criteria.end(), criterion);
  if (it == criteria.end()) return std::nullopt;
  return weights[static_cast<std::size_t>(it - criteria.begin())];
}

WeightVector normalize_weights(const UtilityVector& utilities, double kappa, std::size_t n) {
  if (utilities.values.size() != n) {
    throw InputError("expected " + std::to_string(n) + " utilities, got " +
                     std::to_string(utilities.values.size()));
  }
  const double denom = static_cast<double>(n) * kappa;
  if (!std::isfinite(denom) || denom == 0.0) {
    throw InputError("n * kappa must be nonzero");
  }
  WeightVector out{utilities.criteria, std::vector<double>(n)};
  if (out.criteria.size() != n) out.criteria.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.weights[i] = utilities.values[i] / denom;
  return out;
}

WeightReport derive_weights(const PairwiseOppositeMatrix& pom, int rank_decimals) {
  WeightReport report;
  report.accordance = assess(pom);
  report.utilities = rau_utilities(pom);
  report.weights = normalize_weights(report.utilities, pom.kappa(), pom.size());
  report.ranks = competition_ranks(report.weights.weights, rank_decimals);
  for (std::size_t i = 0; i < pom.size(); ++i) {
    if (report.utilities.values[i] < 0.0) {
      std::ostringstream msg;
      msg << "utility of '" << pom.criteria()[i] << "' is negative (" << report.utilities.values[i]
          << "); its weight is negative too";
      report.warnings.push_back(msg.str());
    }
  }
  if (report.accordance.verdict == Verdict::kNeedsRevision) {
    report.warnings.push_back("accordance index above 0.1: the matrix should be revised");
  }
  return report;
}

}  // namespace cpccms::cpc
