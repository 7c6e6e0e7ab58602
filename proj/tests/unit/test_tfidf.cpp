#include <random>

#include "cpccms/error.hpp"
#include "cpccms/io.hpp"
#include "cpccms/text.hpp"
#include "cpccms/tfidf.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cpccms;

TEST_CASE("smoothed idf") {
  CHECK(tfidf::smooth_idf(10, 10) == doctest::Approx(1.0));
  CHECK(tfidf::smooth_idf(42144, 54) == doctest::Approx(7.6415).epsilon(0.0005 / 7.6415));
  for (std::size_t df = 1; df < 50; ++df) {
    CHECK(tfidf::smooth_idf(50, df) > tfidf::smooth_idf(50, df + 1));
    CHECK(tfidf::smooth_idf(50, df) >= 1.0);
  }
}

TEST_CASE("corpus stats validation") {
  CHECK_THROWS_AS(tfidf::CorpusStats(0, {}), InputError);
  CHECK_THROWS_AS(tfidf::CorpusStats(2, {{"a", 3}}), InputError);
  CHECK_THROWS_AS(tfidf::CorpusStats(2, {{"a", 0}}), InputError);
  CHECK_THROWS_AS(tfidf::fit_corpus_stats({}), InputError);
  const tfidf::CorpusStats s(3, {{"b", 1}, {"a", 2}});
  CHECK(s.vocabulary() == std::vector<std::string>{"a", "b"});
  CHECK(s.index_of("b") == 1);
  CHECK(s.index_of("zzz") == 2);
  CHECK_THROWS_AS(s.idf("zzz"), InputError);
}

TEST_CASE("document frequencies match a set-based count") {
  std::mt19937_64 rng(1);
  const std::vector<std::string> words{"a", "b", "c", "d", "e", "f"};
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  std::vector<std::vector<std::string>> corpus(40);
  for (auto& doc : corpus) {
    for (int k = 0; k < 7; ++k) doc.push_back(words[pick(rng)]);
  }
  const auto stats = tfidf::fit_corpus_stats(corpus);
  CHECK(stats.df() == oracle::document_frequency(corpus));
  CHECK(stats.n_docs() == 40);
}

TEST_CASE("tfidf vectors are unit length and drop unknown terms") {
  const tfidf::CorpusStats stats(4, {{"a", 1}, {"b", 4}});
  const auto v = tfidf::tfidf_vector({"a", "a", "b", "zzz"}, stats);
  CHECK(v.weights.size() == 2);
  CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-12));
  const double ia = std::log(5.0 / 2.0) + 1.0;
  const double ib = 1.0;
  const double n = std::sqrt(4 * ia * ia + ib * ib);
  CHECK(v.get("a") == doctest::Approx(2 * ia / n));
  CHECK(v.get("b") == doctest::Approx(ib / n));
  CHECK(tfidf::tfidf_vector({"zzz"}, stats).weights.empty());
}

TEST_CASE("the published token table is reproduced") {
  const auto terms_csv = io::read_csv(oracle::fixture("tfidf_terms.csv"));
  const auto corpus = io::Json::parse(io::read_text(oracle::fixture("tfidf_corpus.json")));
  std::map<std::string, std::size_t> df;
  for (const auto& row : terms_csv.rows) df[row[0]] = std::stoul(row[2]);
  const tfidf::CorpusStats stats(corpus["n_docs"].get<std::size_t>(), df);

  const auto fx = io::Json::parse(io::read_text(oracle::fixture("cleaning.json")));
  const auto terms = text::to_terms(fx["original"].get<std::string>(), {});
  const auto rows = tfidf::explain(terms, stats);
  REQUIRE(rows.size() == terms_csv.rows.size());
  for (const auto& want : terms_csv.rows) {
    const auto it = std::find_if(rows.begin(), rows.end(), [&](const auto& r) { return r.term == want[0]; });
    REQUIRE_MESSAGE(it != rows.end(), want[0]);
    CHECK(it->tf == std::stoul(want[1]));
    CHECK(it->df == std::stoul(want[2]));
    CHECK(std::abs(it->idf - std::stod(want[3])) <= 0.0005);
    CHECK(std::abs(it->tfidf - std::stod(want[4])) <= 0.0005);
    CHECK(std::abs(it->normalized - std::stod(want[5])) <= 0.0005);
  }
}
