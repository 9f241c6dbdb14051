#include "footrule/moments.hpp"

#include <numeric>
#include <string>

#include "footrule/error.hpp"

namespace footrule {
namespace {

Rational reduced(std::int64_t num, std::int64_t den) {
  const std::int64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

}  // namespace

Rational null_variance_exact(int n, Statistic kind) {
  const int min_n = kind == Statistic::PhiDoublePrime ? 1 : 2;
  if (n < min_n) {
    throw Error(Errc::NTooSmall, "null variance needs n >= " + std::to_string(min_n));
  }
  if (n > kMaxMomentN) {
    throw Error(Errc::NTooLarge, "null variance is capped at n = " + std::to_string(kMaxMomentN));
  }
  const std::int64_t m = n;
  switch (kind) {
    case Statistic::PhiN:
      return reduced(2 * m * m + 7, 5 * (m + 1) * (m - 1) * (m - 1));
    case Statistic::PhiPrime:
      return reduced(2 * m * m, 5 * (m + 1) * (m + 1) * (m - 1));
    case Statistic::PhiDoublePrime:
      return reduced(2 * m, 5 * (m + 1) * (m + 1));
  }
  throw Error(Errc::OutOfRange, "unknown statistic");
}

NullMoments null_moments(int n, Statistic kind) {
  return {n, 0.0, null_variance_exact(n, kind).value(), kind};
}

double cond_exp_abs_diff(double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw Error(Errc::OutOfRange, "u must lie in [0, 1]");
  return 0.5 - u * (1.0 - u);
}

}  // namespace footrule
