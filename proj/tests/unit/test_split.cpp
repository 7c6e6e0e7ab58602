#include <algorithm>
#include <numeric>

#include "cpccms/error.hpp"
#include "cpccms/split.hpp"
#include "doctest.h"

using namespace cpccms;

TEST_CASE("split sizes") {
  CHECK(split::split_sizes(100, {}) == std::array<std::size_t, 3>{80, 10, 10});
  CHECK(split::split_sizes(200, {}) == std::array<std::size_t, 3>{160, 20, 20});
  CHECK(split::split_sizes(7, {0.5, 0.25, 0.25}) == std::array<std::size_t, 3>{3, 2, 2});
  CHECK_THROWS_AS(split::split_sizes(10, {0.8, 0.1, 0.2}), InputError);
  CHECK_THROWS_AS(split::split_sizes(10, {0.9, 0.1, 0.0}), InputError);
  CHECK_THROWS_AS(split::split_sizes(10, {1.2, -0.1, -0.1}), InputError);
}

TEST_CASE("partitions are disjoint, exhaustive and seed-determined") {
  for (std::uint64_t seed : {101u, 202u, 303u}) {
    const auto p = split::split_indices(57, {}, seed);
    std::vector<std::size_t> all;
    for (const auto* part : {&p.train, &p.validation, &p.test}) all.insert(all.end(), part->begin(), part->end());
    std::sort(all.begin(), all.end());
    std::vector<std::size_t> want(57);
    std::iota(want.begin(), want.end(), std::size_t{0});
    CHECK(all == want);
    const auto again = split::split_indices(57, {}, seed);
    CHECK(again.train == p.train);
    CHECK(again.validation == p.validation);
    CHECK(again.test == p.test);
  }
  CHECK(split::split_indices(50, {}, 101).train != split::split_indices(50, {}, 202).train);
}

TEST_CASE("split_corpus keeps items with their indices") {
  std::vector<int> corpus(20);
  std::iota(corpus.begin(), corpus.end(), 100);
  const auto s = split::split_corpus(corpus, {}, 303);
  const auto p = split::split_indices(20, {}, 303);
  for (std::size_t k = 0; k < p.test.size(); ++k) CHECK(s.test[k] == corpus[p.test[k]]);
  CHECK(s.train.size() == 16);
}
