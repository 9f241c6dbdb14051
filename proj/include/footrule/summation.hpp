#pragma once

#include <cstddef>
#include <span>

namespace footrule {

/// Cascade summation: error grows as O(log n) instead of O(n).
double pairwise_sum(std::span<const double> values) noexcept;

}  // namespace footrule
