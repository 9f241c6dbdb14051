#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace footrule {

/// The three quantities studied side by side: the rank coefficient itself,
/// the uniform-based representation obtained by swapping empirical CDFs for
/// population ones, and its projection onto a sum of independent terms.
enum class Statistic { PhiN, PhiPrime, PhiDoublePrime };

inline constexpr std::array<Statistic, 3> kAllStatistics = {
    Statistic::PhiN, Statistic::PhiPrime, Statistic::PhiDoublePrime};

/// Short machine label used in CSV output: "phi", "phiprime", "phidprime".
std::string_view label(Statistic s) noexcept;
std::optional<Statistic> parse_statistic(std::string_view text) noexcept;

}  // namespace footrule
