#include "footrule/representations.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "footrule/error.hpp"
#include "footrule/summation.hpp"

namespace footrule {

UniformPairs::UniformPairs(std::vector<double> u, std::vector<double> v)
    : u_(std::move(u)), v_(std::move(v)) {
  if (u_.size() != v_.size()) throw Error(Errc::LengthMismatch, "u and v must have equal length");
  if (u_.empty()) throw Error(Errc::TooShort, "uniform pairs need n >= 1");
  auto check = [](std::span<const double> xs, const char* name) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!std::isfinite(xs[i])) {
        throw Error(Errc::NonFinite, std::string(name) + ": non-finite value", i);
      }
      if (xs[i] < 0.0 || xs[i] > 1.0) {
        throw Error(Errc::OutOfRange, std::string(name) + ": value outside [0, 1]", i);
      }
    }
  };
  check(u_, "u");
  check(v_, "v");
}

double cross_abs_diff_sum(std::span<const double> u, std::span<const double> v) {
  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> prefix(sorted.size() + 1, 0.0);
  for (std::size_t k = 0; k < sorted.size(); ++k) prefix[k + 1] = prefix[k] + sorted[k];
  const double total = prefix.back();
  const double m = static_cast<double>(sorted.size());

  std::vector<double> rows(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double x = u[i];
    const auto below = static_cast<std::size_t>(
        std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin());
    const double kb = static_cast<double>(below);
    // sum_{v <= x} (x - v) + sum_{v > x} (v - x)
    rows[i] = (x * kb - prefix[below]) + ((total - prefix[below]) - x * (m - kb));
  }
  return pairwise_sum(rows);
}

double phi_prime(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw Error(Errc::LengthMismatch, "u and v must have equal length");
  if (u.size() < 2) throw Error(Errc::NTooSmall, "phi_prime needs n >= 2");
  const double n = static_cast<double>(u.size());

  std::vector<double> diag(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) diag[i] = std::abs(u[i] - v[i]);
  const double cross = cross_abs_diff_sum(u, v);
  const double own = pairwise_sum(diag);
  return 3.0 * n * n / (n * n - 1.0) * (cross / (n * n) - own / n);
}

double phi_double_prime(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw Error(Errc::LengthMismatch, "u and v must have equal length");
  if (u.empty()) throw Error(Errc::NTooSmall, "phi_double_prime needs n >= 1");
  std::vector<double> terms(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    terms[i] = 2.0 / 3.0 - std::abs(u[i] - v[i]) - u[i] * (1.0 - u[i]) - v[i] * (1.0 - v[i]);
  }
  return 3.0 / (static_cast<double>(u.size()) + 1.0) * pairwise_sum(terms);
}

RepresentationValue phi_prime(const UniformPairs& pairs) {
  return {static_cast<int>(pairs.size()), phi_prime(pairs.u(), pairs.v()),
          RepresentationKind::PhiPrime};
}

RepresentationValue phi_double_prime(const UniformPairs& pairs) {
  return {static_cast<int>(pairs.size()), phi_double_prime(pairs.u(), pairs.v()),
          RepresentationKind::PhiDoublePrime};
}

double kernel_h(UnitPoint p1, UnitPoint p2) noexcept {
  return std::abs(p1.u - p2.v) + std::abs(p2.u - p1.v);
}

double hajek_h1(double u, double v) noexcept {
  return 1.0 / 3.0 - u * (1.0 - u) - v * (1.0 - v);
}

}  // namespace footrule
