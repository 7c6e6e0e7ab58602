#include <algorithm>
#include <numeric>
#include <random>

#include "cpccms/cpc.hpp"
#include "cpccms/error.hpp"
#include "cpccms/io.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cpccms;
using cpc::PairwiseOppositeMatrix;

namespace {

std::vector<std::string> names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("c" + std::to_string(i));
  return out;
}

PairwiseOppositeMatrix make(const oracle::Matrix& b, double kappa = 8.0) {
  return {names(b.size()), kappa, b};
}

}  // namespace

TEST_CASE("construction rejects structural problems") {
  CHECK_THROWS_AS(PairwiseOppositeMatrix({"a"}, 8.0, {{0}}), StructuralError);
  CHECK_THROWS_AS(PairwiseOppositeMatrix({"a", "b"}, 0.0, {{0, 0}, {0, 0}}), StructuralError);
  CHECK_THROWS_AS(PairwiseOppositeMatrix({"a", "b"}, -1.0, {{0, 0}, {0, 0}}), StructuralError);
  CHECK_THROWS_AS(PairwiseOppositeMatrix({"a", "b"}, 8.0, {{0, 0}}), StructuralError);
  CHECK_THROWS_AS(PairwiseOppositeMatrix({"a", "b"}, 8.0, {{0, 0}, {0}}), StructuralError);
  CHECK_THROWS_AS(PairwiseOppositeMatrix({"a", "a"}, 8.0, {{0, 0}, {0, 0}}), StructuralError);
}

TEST_CASE("validate_pom reports each violation with its cell") {
  SUBCASE("zero matrix is valid") {
    CHECK(cpc::validate_pom(PairwiseOppositeMatrix::zeros({"a", "b"})).ok());
  }
  SUBCASE("broken antisymmetry is reported once at the upper cell") {
    auto pom = PairwiseOppositeMatrix::zeros({"a", "b"});
    pom.set_raw(0, 1, 3);
    pom.set_raw(1, 0, 2);
    const auto r = cpc::validate_pom(pom);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].kind == cpc::ViolationKind::kAntisymmetry);
    CHECK(r.violations[0].row == 0);
    CHECK(r.violations[0].col == 1);
  }
  SUBCASE("diagonal, range and non-finite entries") {
    auto pom = PairwiseOppositeMatrix::zeros({"a", "b", "c"});
    pom.set_raw(0, 0, 1);
    pom.set_raw(1, 2, 9);
    pom.set_raw(2, 1, -9);
    const auto r = cpc::validate_pom(pom);
    std::vector<cpc::ViolationKind> kinds;
    for (const auto& v : r.violations) kinds.push_back(v.kind);
    CHECK(std::count(kinds.begin(), kinds.end(), cpc::ViolationKind::kDiagonal) == 1);
    CHECK(std::count(kinds.begin(), kinds.end(), cpc::ViolationKind::kRange) == 2);
    CHECK(r.messages().size() == r.violations.size());
    CHECK_THROWS_AS(cpc::require_valid(pom), InputError);
    try {
      cpc::require_valid(pom);
    } catch (const InputError& e) {
      CHECK(e.details().size() == r.violations.size());
    }
  }
}

TEST_CASE("set_judgment keeps the matrix antisymmetric") {
  auto pom = PairwiseOppositeMatrix::zeros({"a", "b", "c"});
  pom.set_judgment(0, 2, -5);
  CHECK(pom(0, 2) == -5);
  CHECK(pom(2, 0) == 5);
  CHECK_THROWS_AS(pom.set_judgment(1, 1, 0), InputError);
  CHECK_THROWS_AS(pom.set_judgment(0, 1, 8.5), InputError);
  CHECK_THROWS_AS(pom.set_judgment(0, 3, 1), InputError);
  CHECK(pom(0, 1) == 0);
  CHECK(cpc::validate_pom(pom).ok());
}

TEST_CASE("accordance index matches the brute-force oracle on random matrices") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 6;
    const auto b = oracle::random_pom(rng, n, 8.0, trial % 2 == 0);
    CHECK(cpc::accordance_index(make(b)) == doctest::Approx(oracle::accordance_index(b, 8.0)).epsilon(1e-12));
  }
}

TEST_CASE("classify_accordance thresholds") {
  CHECK(cpc::classify_accordance(0.0) == cpc::Verdict::kConsistent);
  CHECK(cpc::classify_accordance(1e-9) == cpc::Verdict::kConsistent);
  CHECK(cpc::classify_accordance(2e-9) == cpc::Verdict::kAcceptable);
  CHECK(cpc::classify_accordance(0.0747) == cpc::Verdict::kAcceptable);
  CHECK(cpc::classify_accordance(0.1) == cpc::Verdict::kAcceptable);
  CHECK(cpc::classify_accordance(0.2) == cpc::Verdict::kNeedsRevision);
  CHECK_THROWS_AS(cpc::classify_accordance(-0.1), InputError);
  CHECK(cpc::verdict_from_string(cpc::to_string(cpc::Verdict::kNeedsRevision)) ==
        cpc::Verdict::kNeedsRevision);
}

TEST_CASE("utilities and weights on the reference matrices") {
  const auto seven = io::load_pom(oracle::fixture("pom_without_efficiency.json"));
  const auto eight = io::load_pom(oracle::fixture("pom_with_efficiency.json"));

  const auto u = cpc::rau_utilities(seven);
  CHECK(u.values[0] == doctest::Approx(4.428).epsilon(0.001 / 4.428));
  const auto w = cpc::normalize_weights(u, seven.kappa(), seven.size());
  CHECK(w.weights[0] == doctest::Approx(0.079).epsilon(0.001 / 0.079));

  // Hand arithmetic on the MCC row of the eight-criterion matrix.
  const auto u8 = cpc::rau_utilities(eight);
  CHECK(u8.values[5] == doctest::Approx(8.0 + (7 + 5 + 4 + 3 + 6 + 0 + 2 + 8) / 8.0));
  CHECK(u8.values[5] == doctest::Approx(12.375));

  const auto zeros = PairwiseOppositeMatrix::zeros(names(5));
  for (double v : cpc::rau_utilities(zeros).values) CHECK(v == 8.0);
  for (double x : cpc::derive_weights(zeros).weights.weights) CHECK(x == doctest::Approx(0.2));
  CHECK(cpc::derive_weights(zeros).accordance.verdict == cpc::Verdict::kConsistent);
}

TEST_CASE("normalize_weights rejects mismatched input") {
  cpc::UtilityVector u{{"a", "b"}, {8, 8}};
  CHECK_THROWS_AS(cpc::normalize_weights(u, 0.0, 2), InputError);
  CHECK_THROWS_AS(cpc::normalize_weights(u, 8.0, 3), InputError);
}

TEST_CASE("utilities of valid matrices are bounded below by kappa over n") {
  // |b_ij| <= kappa caps the row average at -kappa (n - 1) / n, so the
  // negative-utility warning cannot fire for a validated matrix.
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + trial % 9;
    const double kappa = 0.5 + trial % 10;
    auto b = oracle::random_pom(rng, n, kappa, false);
    for (std::size_t j = 1; j < n; ++j) {
      b[0][j] = -kappa;
      b[j][0] = kappa;
    }
    const auto report = cpc::derive_weights(make(b, kappa));
    CHECK(report.utilities.values[0] == doctest::Approx(kappa / static_cast<double>(n)));
    for (double v : report.utilities.values) CHECK(v >= kappa / static_cast<double>(n) - 1e-12);
    for (const auto& w : report.warnings) CHECK(w.find("negative") == std::string::npos);
  }
}

TEST_CASE("needs-revision matrices still yield weights with a warning") {
  PairwiseOppositeMatrix pom({"a", "b", "c"}, 8.0, {{0, 8, -8}, {-8, 0, 8}, {8, -8, 0}});
  const auto report = cpc::derive_weights(pom);
  CHECK(report.accordance.verdict == cpc::Verdict::kNeedsRevision);
  CHECK(report.weights.sum() == doctest::Approx(1.0));
  CHECK_FALSE(report.warnings.empty());
}

TEST_CASE("matrix transforms") {
  const auto pom = io::load_pom(oracle::fixture("pom_with_efficiency.json"));
  const auto reduced = pom.without(7);
  CHECK(reduced.size() == 7);
  CHECK(reduced.criteria().back() == "kappa");
  CHECK(reduced(5, 6) == pom(5, 6));
  CHECK(pom.negated()(0, 1) == -pom(0, 1));
  const std::vector<std::size_t> order{7, 6, 5, 4, 3, 2, 1, 0};
  const auto p = pom.permuted(order);
  CHECK(p.criteria().front() == "efficiency");
  CHECK(p(0, 7) == pom(7, 0));
  CHECK_THROWS_AS(pom.permuted(std::vector<std::size_t>{0, 0, 1, 2, 3, 4, 5, 6}), InputError);
}

TEST_CASE("weight ranks follow row sums") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto b = oracle::random_pom(rng, 6, 8.0, true);
    const auto report = cpc::derive_weights(make(b), -1);
    for (std::size_t i = 0; i < b.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) {
        const double ri = std::accumulate(b[i].begin(), b[i].end(), 0.0);
        const double rj = std::accumulate(b[j].begin(), b[j].end(), 0.0);
        CHECK((report.weights.weights[i] > report.weights.weights[j]) == (ri > rj));
        if (ri > rj) CHECK(report.ranks[i] < report.ranks[j]);
      }
    }
  }
}
