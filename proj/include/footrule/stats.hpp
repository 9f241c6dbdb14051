#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace footrule {

enum class KsMode { OneSample, TwoSample };

struct KsOutcome {
  double statistic = 0.0;
  double p_value = 1.0;
  double effective_n = 0.0;
  KsMode mode = KsMode::OneSample;
};

struct SummaryStats {
  double em = 0.0;
  double ev = 0.0;
  double bias = 0.0;
  double rmse = 0.0;
  std::size_t count = 0;
};

struct CurveGrid {
  std::vector<double> grid;
  std::vector<double> values;
};

inline constexpr std::size_t kDefaultGridSize = 512;

double normal_pdf(double x, double mean, double variance);

/// P(Z <= x) for Z ~ N(mean, variance). Throws Error{BadVariance}.
double normal_cdf(double x, double mean, double variance);

/// Limiting Kolmogorov tail 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2),
/// clamped to [0, 1].
double kolmogorov_sf(double lambda);

KsOutcome ks_one_sample(std::span<const double> samples,
                        const std::function<double(double)>& reference_cdf);

/// Handles ties across and within samples by advancing past equal values.
KsOutcome ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Rule-of-thumb bandwidth 0.9 min(sd, IQR/1.34) n^{-1/5}; falls back to sd
/// when the IQR vanishes. Throws Error{DegenerateSample} on zero spread.
double kde_bandwidth(std::span<const double> samples);

/// Gaussian KDE on `grid_size` equispaced points over [min - 3b, max + 3b].
CurveGrid gaussian_kde(std::span<const double> samples,
                       std::size_t grid_size = kDefaultGridSize);

CurveGrid ecdf_curve(std::span<const double> samples, std::span<const double> grid);

/// EM, EV (divisor count-1), bias and RMSE against `true_value`.
SummaryStats summarize(std::span<const double> estimates, double true_value);

/// Standard error of the unbiased sample variance, from the sample's own
/// fourth central moment: sqrt((m4 - (c-3)/(c-1) s^4) / c).
double variance_standard_error(std::span<const double> estimates);

/// Type-7 sample quantile of already sorted data.
double sorted_quantile(std::span<const double> sorted, double prob);

double trapezoid(std::span<const double> x, std::span<const double> y);

}  // namespace footrule
