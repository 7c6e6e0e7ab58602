#include "cpccms/competition.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <numeric>

namespace cpccms {

std::int64_t tie_key(double value, int decimals) {
  if (decimals < 0) {
    // Order-preserving bijection from doubles to integers, so only bit-equal
    // values tie.
    std::int64_t bits;
    static_assert(sizeof(bits) == sizeof(value));
    std::memcpy(&bits, &value, sizeof(bits));
    return bits < 0 ? std::numeric_limits<std::int64_t>::min() - bits : bits;
  }
  const double scale = std::pow(10.0, decimals);
  // A tiny nudge keeps values printed as x.xxx5 on the side they display on;
  // 0.8725 is stored as 0.87249999... otherwise.
  const double scaled = value * scale;
  return static_cast<std::int64_t>(std::llround(scaled + std::copysign(1e-9, scaled)));
}

std::vector<int> competition_ranks(std::span<const double> values, int decimals) {
  std::vector<std::int64_t> keys(values.size());
  std::transform(values.begin(), values.end(), keys.begin(),
                 [decimals](double v) { return tie_key(v, decimals); });
  std::vector<int> ranks(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto better = std::count_if(keys.begin(), keys.end(),
                                      [&](std::int64_t k) { return k > keys[i]; });
    ranks[i] = static_cast<int>(better) + 1;
  }
  return ranks;
}

}  // namespace cpccms
