#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace cpccms::split {

struct Fractions {
  double train = 0.8;
  double validation = 0.1;
  double test = 0.1;
};

/// Index partition of a corpus.
struct Partition {
  std::vector<std::size_t> train;
  std::vector<std::size_t> validation;
  std::vector<std::size_t> test;
};

/// Sizes: validation = round(n * validation), test = round(n * test), train
/// takes the rest. Throws InputError unless all fractions are positive and
/// sum to 1 within 1e-9.
std::array<std::size_t, 3> split_sizes(std::size_t n, const Fractions& fractions);

/// Seeded Fisher-Yates shuffle of 0..n-1 followed by a contiguous cut into
/// train / validation / test. The shuffle uses mt19937_64 with an explicit
/// bounded draw, so a seed gives the same split on every platform.
Partition split_indices(std::size_t n, const Fractions& fractions, std::uint64_t seed);

template <typename T>
struct Split {
  std::vector<T> train;
  std::vector<T> validation;
  std::vector<T> test;
};

template <typename T>
Split<T> split_corpus(const std::vector<T>& corpus, const Fractions& fractions,
                      std::uint64_t seed) {
  const Partition p = split_indices(corpus.size(), fractions, seed);
  Split<T> out;
  for (auto i : p.train) out.train.push_back(corpus[i]);
  for (auto i : p.validation) out.validation.push_back(corpus[i]);
  for (auto i : p.test) out.test.push_back(corpus[i]);
  return out;
}

}  // namespace cpccms::split
