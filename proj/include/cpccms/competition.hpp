#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace cpccms {

/// Integer key used for tie detection: `value` rounded half away from zero
/// to `decimals` places. Negative `decimals` disables rounding (exact ties only).
std::int64_t tie_key(double value, int decimals);

/// Competition ("1224") ranks for `values`, larger is better. Two values tie
/// when their tie keys are equal; a tied group shares the best rank and the
/// next group starts at 1 + the number of strictly better items.
std::vector<int> competition_ranks(std::span<const double> values, int decimals);

}  // namespace cpccms
