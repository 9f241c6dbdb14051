#include <cstddef>

#include "footrule/error.hpp"
#include "footrule/statistic.hpp"
#include "footrule/summation.hpp"

namespace footrule {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::TiesPresent: return "TiesPresent";
    case Errc::NonFinite: return "NonFinite";
    case Errc::TooShort: return "TooShort";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::NTooSmall: return "NTooSmall";
    case Errc::NTooLarge: return "NTooLarge";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::BadVariance: return "BadVariance";
    case Errc::TooFewSamples: return "TooFewSamples";
    case Errc::DegenerateSample: return "DegenerateSample";
  }
  return "Unknown";
}

std::string_view label(Statistic s) noexcept {
  switch (s) {
    case Statistic::PhiN: return "phi";
    case Statistic::PhiPrime: return "phiprime";
    case Statistic::PhiDoublePrime: return "phidprime";
  }
  return "unknown";
}

std::optional<Statistic> parse_statistic(std::string_view text) noexcept {
  for (Statistic s : kAllStatistics) {
    if (label(s) == text) return s;
  }
  return std::nullopt;
}

double pairwise_sum(std::span<const double> values) noexcept {
  constexpr std::size_t kBlock = 16;
  if (values.size() <= kBlock) {
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace footrule
