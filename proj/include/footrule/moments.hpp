#pragma once

#include <cstdint>

#include "footrule/statistic.hpp"

namespace footrule {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  constexpr double value() const noexcept {
    return static_cast<double>(num) / static_cast<double>(den);
  }
};

struct NullMoments {
  int n = 0;
  double mean = 0.0;
  double variance = 0.0;
  Statistic kind = Statistic::PhiN;
};

/// Integer moments for U, V, V' i.i.d. uniform on (0, 1).
struct LemmaConstants {
  static constexpr Rational e_abs_diff{1, 3};           // E|U-V|
  static constexpr Rational e_u_one_minus_u{1, 6};      // E U(1-U)
  static constexpr Rational var_abs_diff{1, 18};        // Var |U-V|
  static constexpr Rational var_u_one_minus_u{1, 180};  // Var U(1-U)
  static constexpr Rational cov_absdiff_u1mu{-1, 180};  // Cov(|U-V|, U(1-U))
  static constexpr Rational cov_absdiff_shared{1, 180}; // Cov(|U-V|, |U-V'|)
};

inline constexpr int kMaxMomentN = 1'000'000;

/// Exact null variance as a reduced fraction.
///   PhiN:           (2n^2+7) / (5(n+1)(n-1)^2)
///   PhiPrime:       2n^2 / (5(n+1)^2(n-1))
///   PhiDoublePrime: 2n / (5(n+1)^2)
/// Throws Error{NTooSmall} below n = 2 (n = 1 for PhiDoublePrime) and
/// Error{NTooLarge} above kMaxMomentN, where the int64 denominators end.
Rational null_variance_exact(int n, Statistic kind);

NullMoments null_moments(int n, Statistic kind);

/// E(|U - V| | U = u) = 1/2 - u(1-u).
double cond_exp_abs_diff(double u);

/// Variance of the common normal limit of sqrt(n) times each statistic.
constexpr double limiting_variance() noexcept { return 0.4; }

}  // namespace footrule
