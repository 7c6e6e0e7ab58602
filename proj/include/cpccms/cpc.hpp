#pragma once

// Cognitive pairwise comparison: pairwise opposite matrices (POMs), the
// accordance index consistency check and the row-average-plus-utility (RAU)
// weight operator.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cpccms::cpc {

inline constexpr double kDefaultKappa = 8.0;
/// Accordance indices at or below this are treated as exactly zero.
inline constexpr double kConsistentTolerance = 1e-9;
/// Accordance indices above this call for the expert to revise the matrix.
inline constexpr double kRevisionThreshold = 0.1;

/// Antisymmetric matrix of difference judgments b_ij ~ v_i - v_j over a set
/// of named criteria. Construction only checks shape; call validate_pom() for
/// the judgment invariants.
class PairwiseOppositeMatrix {
 public:
  /// Throws StructuralError when `entries` is not n x n with n == criteria
  /// count, when n < 2, when kappa is not a positive finite number or when
  /// criterion names repeat.
  PairwiseOppositeMatrix(std::vector<std::string> criteria, double kappa,
                         std::vector<std::vector<double>> entries);

  /// All-zero ("equal to") matrix.
  static PairwiseOppositeMatrix zeros(std::vector<std::string> criteria,
                                      double kappa = kDefaultKappa);

  std::size_t size() const noexcept { return criteria_.size(); }
  double kappa() const noexcept { return kappa_; }
  const std::vector<std::string>& criteria() const noexcept { return criteria_; }

  double operator()(std::size_t i, std::size_t j) const { return entries_[i * size() + j]; }

  /// Writes a single cell with no mirroring. Mostly useful for building
  /// deliberately broken matrices in tests.
  void set_raw(std::size_t i, std::size_t j, double value);

  /// Writes b_ij = value and b_ji = -value. Throws InputError on diagonal
  /// cells, out-of-range indices, non-finite values or |value| > kappa.
  void set_judgment(std::size_t i, std::size_t j, double value);

  std::optional<std::size_t> index_of(std::string_view criterion) const;

  std::vector<std::vector<double>> rows() const;

  PairwiseOppositeMatrix negated() const;

  /// Matrix over criteria reordered so that new position k holds old
  /// criterion order[k].
  PairwiseOppositeMatrix permuted(std::span<const std::size_t> order) const;

  /// Principal submatrix with criterion `k` removed.
  PairwiseOppositeMatrix without(std::size_t k) const;

  friend bool operator==(const PairwiseOppositeMatrix&, const PairwiseOppositeMatrix&) = default;

 private:
  std::vector<std::string> criteria_;
  double kappa_;
  std::vector<double> entries_;
};

enum class ViolationKind { kDiagonal, kAntisymmetry, kRange, kNonFinite };

struct Violation {
  ViolationKind kind;
  std::size_t row;
  std::size_t col;
  std::string message;
};

struct ValidationResult {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  /// One line per violation, suitable for CLI diagnostics.
  std::vector<std::string> messages() const;
};

/// Every violated invariant (zero diagonal, exact antisymmetry, |b_ij| <= kappa)
/// with its 0-based cell coordinates. Antisymmetry is reported once per pair.
ValidationResult validate_pom(const PairwiseOppositeMatrix& pom);

/// Throws InputError carrying the violation messages unless the matrix is valid.
void require_valid(const PairwiseOppositeMatrix& pom);

/// AI = 1/n^2 sum_ij sqrt( 1/n sum_p ((b_ip + b_pj - b_ij) / kappa)^2 ).
double accordance_index(const PairwiseOppositeMatrix& pom);

enum class Verdict { kConsistent, kAcceptable, kNeedsRevision };

std::string_view to_string(Verdict verdict);
std::optional<Verdict> verdict_from_string(std::string_view text);

/// Throws InputError for negative or non-finite input.
Verdict classify_accordance(double ai);

struct AccordanceReport {
  double ai = 0.0;
  Verdict verdict = Verdict::kConsistent;
};

AccordanceReport assess(const PairwiseOppositeMatrix& pom);

struct UtilityVector {
  std::vector<std::string> criteria;
  std::vector<double> values;
};

/// v_i = kappa + (1/n) sum_j b_ij.
UtilityVector rau_utilities(const PairwiseOppositeMatrix& pom);

struct WeightVector {
  std::vector<std::string> criteria;
  std::vector<double> weights;

  double sum() const;
  std::optional<double> weight_of(std::string_view criterion) const;
};

/// w_i = v_i / (n kappa). `n` must equal the utility count.
WeightVector normalize_weights(const UtilityVector& utilities, double kappa, std::size_t n);

/// Everything the weighting step produces for one matrix.
struct WeightReport {
  UtilityVector utilities;
  WeightVector weights;
  AccordanceReport accordance;
  /// Competition rank of each criterion by weight (1 = heaviest), ties at
  /// the report precision.
  std::vector<int> ranks;
  /// Non-fatal findings, e.g. negative utilities.
  std::vector<std::string> warnings;
};

/// Validates, then runs RAU + normalization + accordance in one go.
WeightReport derive_weights(const PairwiseOppositeMatrix& pom, int rank_decimals = 3);

}  // namespace cpccms::cpc
