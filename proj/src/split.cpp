#include "cpccms/split.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "cpccms/error.hpp"

namespace cpccms::split {

namespace {

// Uniform integer in [0, bound) by rejection; std::uniform_int_distribution
// is implementation-defined and would make splits toolchain-dependent.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace

std::array<std::size_t, 3> split_sizes(std::size_t n, const Fractions& f) {
  for (double v : {f.train, f.validation, f.test}) {
    if (!std::isfinite(v) || v <= 0.0) throw InputError("split fractions must be positive");
  }
  if (std::abs(f.train + f.validation + f.test - 1.0) > 1e-9) {
    throw InputError("split fractions must sum to 1");
  }
  const auto nd = static_cast<double>(n);
  std::size_t val = static_cast<std::size_t>(std::llround(nd * f.validation));
  std::size_t test = static_cast<std::size_t>(std::llround(nd * f.test));
  if (val + test > n) test = n - val;
  return {n - val - test, val, test};
}

Partition split_indices(std::size_t n, const Fractions& fractions, std::uint64_t seed) {
  const auto sizes = split_sizes(n, fractions);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(bounded(rng, i));
    std::swap(order[i - 1], order[j]);
  }
  Partition p;
  const auto a = static_cast<std::ptrdiff_t>(sizes[0]);
  const auto b = static_cast<std::ptrdiff_t>(sizes[0] + sizes[1]);
  p.train.assign(order.begin(), order.begin() + a);
  p.validation.assign(order.begin() + a, order.begin() + b);
  p.test.assign(order.begin() + b, order.end());
  return p;
}

}  // namespace cpccms::split
