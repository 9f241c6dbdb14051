#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace footrule {

/// Paired unit-interval values (U_i, V_i). Any value in [0, 1] is accepted;
/// the samplers only ever produce values strictly inside (0, 1).
class UniformPairs {
 public:
  UniformPairs(std::vector<double> u, std::vector<double> v);

  std::span<const double> u() const noexcept { return u_; }
  std::span<const double> v() const noexcept { return v_; }
  std::size_t size() const noexcept { return u_.size(); }

 private:
  std::vector<double> u_;
  std::vector<double> v_;
};

enum class RepresentationKind { PhiPrime, PhiDoublePrime };

struct RepresentationValue {
  int n = 0;
  double value = 0.0;
  RepresentationKind kind = RepresentationKind::PhiPrime;
};

struct UnitPoint {
  double u = 0.0;
  double v = 0.0;
};

/// First representation:
///   3n^2/(n^2-1) * ( (1/n^2) sum_ij |U_i - V_j| - (1/n) sum_i |U_i - V_i| ).
/// The double sum is evaluated in O(n log n) through sorted prefix sums.
/// Requires n >= 2.
RepresentationValue phi_prime(const UniformPairs& pairs);
double phi_prime(std::span<const double> u, std::span<const double> v);

/// Projected representation:
///   3/(n+1) * sum_i ( 2/3 - |U_i - V_i| - U_i(1-U_i) - V_i(1-V_i) ).
/// Defined for n >= 1.
RepresentationValue phi_double_prime(const UniformPairs& pairs);
double phi_double_prime(std::span<const double> u, std::span<const double> v);

/// Symmetric kernel whose pairwise average is the off-diagonal part of the
/// first representation: |u1 - v2| + |u2 - v1|.
double kernel_h(UnitPoint p1, UnitPoint p2) noexcept;

/// Centred first-order projection of kernel_h: 1/3 - u(1-u) - v(1-v).
double hajek_h1(double u, double v) noexcept;

/// sum_ij |u_i - v_j| through sorting and prefix sums.
double cross_abs_diff_sum(std::span<const double> u, std::span<const double> v);

}  // namespace footrule
