#include "cpccms/decision.hpp"
#include "cpccms/competition.hpp"
#include "cpccms/error.hpp"
#include "cpccms/io.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cpccms;
using decision::DecisionMatrix;

TEST_CASE("competition ranks share the best rank on ties") {
  const std::vector<double> v{0.5, 0.9, 0.5, 0.1, 0.9};
  CHECK(competition_ranks(v, 3) == std::vector<int>{3, 1, 3, 5, 1});
  // 0.8723 and 0.8720 both round to 0.872.
  const std::vector<double> close{0.8723, 0.8720, 0.9};
  CHECK(competition_ranks(close, 3) == std::vector<int>{2, 2, 1});
  CHECK(competition_ranks(close, -1) == std::vector<int>{2, 3, 1});
  // Half-way values round away from zero even when binary representation sits just below.
  CHECK(tie_key(0.8725, 3) == 873);
  CHECK(tie_key(-0.8725, 3) == -873);
  CHECK(tie_key(2.675, 2) == 268);
}

TEST_CASE("weighted scores are the dot product of weights and scores") {
  const DecisionMatrix m({"x", "y"}, {"a", "b"}, {{1.0, 0.0}, {0.5, 0.5}});
  const cpc::WeightVector w{{"b", "a"}, {0.25, 0.75}};
  const auto g = decision::weighted_scores(m, w);
  CHECK(g[0].score == doctest::Approx(0.75));
  CHECK(g[1].score == doctest::Approx(0.5));
}

TEST_CASE("a single criterion with weight 1 returns the input cell") {
  const DecisionMatrix m({"only"}, {"accuracy"}, {{0.731}});
  const auto g = decision::weighted_scores(m, {{"accuracy"}, {1.0}});
  const auto r = decision::rank(g);
  CHECK(g[0].score == 0.731);
  CHECK(r.entries[0].rank == 1);
  CHECK(r.best == std::vector<std::string>{"only"});
}

TEST_CASE("criteria mismatches are listed by name") {
  const DecisionMatrix m({"x"}, {"a", "extra"}, {{1.0, 2.0}});
  try {
    m.aligned_to({"a", "missing"});
    FAIL("expected InputError");
  } catch (const InputError& e) {
    REQUIRE(e.details().size() == 2);
    CHECK(e.details()[0] == "missing from scores: missing");
    CHECK(e.details()[1] == "not weighted: extra");
  }
}

TEST_CASE("decision matrix validation") {
  CHECK_THROWS_AS(DecisionMatrix({}, {"a"}, {}), InputError);
  CHECK_THROWS_AS(DecisionMatrix({"x"}, {}, {{}}), InputError);
  CHECK_THROWS_AS(DecisionMatrix({"x", "x"}, {"a"}, {{1}, {2}}), InputError);
  CHECK_THROWS_AS(DecisionMatrix({"x"}, {"a", "b"}, {{1}}), InputError);
  CHECK_THROWS_AS(DecisionMatrix({"x"}, {"a"}, {{std::nan("")}}), InputError);
}

TEST_CASE("worked example: LSVC scores 0.754 with the seven-criterion weights") {
  const auto pom = io::load_pom(oracle::fixture("pom_without_efficiency.json"));
  const auto scores = io::parse_decision_matrix(io::read_csv(oracle::fixture("case1_scores.csv")));
  const auto eval = decision::evaluate(pom, scores, std::nullopt, false);
  const auto* lsvc = eval.ranking.find("LSVC");
  REQUIRE(lsvc != nullptr);
  CHECK(std::abs(lsvc->score - 0.754) <= 0.002);

  // Rounded weights from the worked arithmetic give the same value.
  const std::vector<double> w{0.079, 0.115, 0.130, 0.161, 0.087, 0.237, 0.191};
  const std::vector<double> s{0.781, 0.725, 0.762, 0.738, 0.960, 0.718, 0.717};
  double g = 0;
  for (std::size_t j = 0; j < w.size(); ++j) g += w[j] * s[j];
  CHECK(std::abs(g - 0.754) <= 0.0005);
}

TEST_CASE("assemble_matrix appends efficiency from timings") {
  std::vector<decision::ModelRecord> records{{"fast", {}}, {"slow", {}}};
  records[0].scores.accuracy = 0.9;
  const auto m = decision::assemble_matrix(records, metrics::TimingSet{{"fast", 1}, {"slow", 3}}, true);
  CHECK(m.criteria().back() == "efficiency");
  CHECK(m(0, 7) == 1.0);
  CHECK(m(1, 7) == 0.0);
  CHECK(decision::assemble_matrix(records, std::nullopt, false).num_criteria() == 7);
  CHECK_THROWS_AS(decision::assemble_matrix(records, std::nullopt, true), InputError);
  try {
    decision::assemble_matrix(records, metrics::TimingSet{{"fast", 1}, {"other", 2}}, true);
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(e.details() == std::vector<std::string>{"no timing for: slow", "timing for unknown model: other"});
  }
}

TEST_CASE("evaluate drops efficiency when it is switched off") {
  const auto pom8 = io::load_pom(oracle::fixture("pom_with_efficiency.json"));
  const auto pom7 = io::load_pom(oracle::fixture("pom_without_efficiency.json"));
  const auto scores = io::parse_decision_matrix(io::read_csv(oracle::fixture("case1_scores.csv")));
  const auto timings = io::parse_timings(io::read_csv(oracle::fixture("case1_timings.csv")));

  const auto off = decision::evaluate(pom8, scores, timings, false);
  CHECK(off.weights.weights.criteria.size() == 7);
  CHECK(off.weights.weights.sum() == doctest::Approx(1.0));
  CHECK(off.matrix.criteria() == pom7.criteria());

  const auto on = decision::evaluate(pom8, scores, timings, true);
  CHECK(on.matrix.criteria().back() == "efficiency");
  CHECK(on.ranking.best == std::vector<std::string>{"XGBoost"});

  CHECK_THROWS_AS(decision::evaluate(pom7, scores, timings, true), InputError);
  CHECK_THROWS_AS(decision::evaluate(pom8, scores, std::nullopt, true), InputError);

  // An efficiency column already present in the scores is used when no timings are given.
  const auto with_col = scores.with_criterion("efficiency", {0.971, 1.0, 0.904, 0.984, 0.963, 0.945, 0.0});
  const auto from_col = decision::evaluate(pom8, with_col, std::nullopt, true);
  CHECK(from_col.ranking.best == std::vector<std::string>{"XGBoost"});
}

TEST_CASE("rank orders by score and reports every best model") {
  const auto r = decision::rank({{"a", 0.5}, {"b", 0.9}, {"c", 0.9004}, {"d", 0.1}});
  CHECK(r.entries[0].model == "c");
  CHECK(r.entries[1].model == "b");
  CHECK(r.entries[0].rank == 1);
  CHECK(r.entries[1].rank == 1);
  CHECK(r.entries[2].rank == 3);
  CHECK(r.best == std::vector<std::string>{"c", "b"});
  CHECK_THROWS_AS(decision::rank({}), InputError);
}
