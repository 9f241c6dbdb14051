#include "footrule/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "footrule/error.hpp"
#include "footrule/summation.hpp"

namespace footrule {
namespace {

std::vector<double> sorted_copy(std::span<const double> xs) {
  std::vector<double> out(xs.begin(), xs.end());
  std::sort(out.begin(), out.end());
  return out;
}

void require_finite(std::span<const double> xs, const char* what) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i])) {
      throw Error(Errc::NonFinite, std::string(what) + ": non-finite value", i);
    }
  }
}

}  // namespace

double normal_pdf(double x, double mean, double variance) {
  if (!(variance > 0.0)) throw Error(Errc::BadVariance, "variance must be positive");
  const double z = (x - mean) / std::sqrt(variance);
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi * variance);
}

double normal_cdf(double x, double mean, double variance) {
  if (!(variance > 0.0)) throw Error(Errc::BadVariance, "variance must be positive");
  const double z = (x - mean) / std::sqrt(variance);
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double kolmogorov_sf(double lambda) {
  if (std::isnan(lambda)) throw Error(Errc::NonFinite, "lambda is NaN");
  if (lambda <= 0.0) return 1.0;
  double q = 0.0;
  if (lambda < 1.18) {
    // Jacobi theta form of the same function; the alternating series
    // cancels catastrophically for small lambda.
    const double c = std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda);
    double s = 0.0;
    for (int k = 1; k <= 100; ++k) {
      const double odd = 2.0 * k - 1.0;
      const double term = std::exp(-odd * odd * c);
      s += term;
      if (term < 1e-16 * s) break;
    }
    q = 1.0 - std::sqrt(2.0 * std::numbers::pi) / lambda * s;
  } else {
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
      const double term = std::exp(-2.0 * k * k * lambda * lambda);
      if (term < 1e-16) break;
      q += sign * 2.0 * term;
      sign = -sign;
    }
  }
  return std::clamp(q, 0.0, 1.0);
}

KsOutcome ks_one_sample(std::span<const double> samples,
                        const std::function<double(double)>& reference_cdf) {
  if (samples.size() < 2) throw Error(Errc::TooFewSamples, "KS test needs at least 2 samples");
  require_finite(samples, "samples");
  const auto xs = sorted_copy(samples);
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = reference_cdf(xs[i]);
    const double hi = static_cast<double>(i + 1) / n - f;
    const double lo = f - static_cast<double>(i) / n;
    d = std::max({d, hi, lo});
  }
  d = std::clamp(d, 0.0, 1.0);
  return {d, kolmogorov_sf(std::sqrt(n) * d), n, KsMode::OneSample};
}

KsOutcome ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) {
    throw Error(Errc::TooFewSamples, "KS test needs at least 2 points per sample");
  }
  require_finite(a, "a");
  require_finite(b, "b");
  const auto xa = sorted_copy(a);
  const auto xb = sorted_copy(b);
  const double na = static_cast<double>(xa.size());
  const double nb = static_cast<double>(xb.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < xa.size() && j < xb.size()) {
    const double x = std::min(xa[i], xb[j]);
    while (i < xa.size() && xa[i] == x) ++i;
    while (j < xb.size() && xb[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  // once one sample is exhausted the remaining gaps only shrink
  const double eff = na * nb / (na + nb);
  return {d, kolmogorov_sf(std::sqrt(eff) * d), eff, KsMode::TwoSample};
}

double sorted_quantile(std::span<const double> sorted, double prob) {
  if (sorted.empty()) throw Error(Errc::TooFewSamples, "quantile of an empty sample");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * prob;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

namespace {

double sample_sd(std::span<const double> xs) {
  const double n = static_cast<double>(xs.size());
  const double mean = pairwise_sum(xs) / n;
  std::vector<double> sq(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) sq[i] = (xs[i] - mean) * (xs[i] - mean);
  return std::sqrt(pairwise_sum(sq) / (n - 1.0));
}

double bandwidth_of_sorted(std::span<const double> sorted) {
  const double sd = sample_sd(sorted);
  const double iqr = sorted_quantile(sorted, 0.75) - sorted_quantile(sorted, 0.25);
  double spread = std::min(sd, iqr / 1.34);
  if (!(spread > 0.0)) spread = sd;
  if (!(spread > 0.0)) throw Error(Errc::DegenerateSample, "sample has zero spread");
  return 0.9 * spread * std::pow(static_cast<double>(sorted.size()), -0.2);
}

}  // namespace

double kde_bandwidth(std::span<const double> samples) {
  if (samples.size() < 2) throw Error(Errc::TooFewSamples, "KDE needs at least 2 samples");
  require_finite(samples, "samples");
  return bandwidth_of_sorted(sorted_copy(samples));
}

CurveGrid gaussian_kde(std::span<const double> samples, std::size_t grid_size) {
  if (samples.size() < 2) throw Error(Errc::TooFewSamples, "KDE needs at least 2 samples");
  if (grid_size < 2) throw Error(Errc::OutOfRange, "KDE grid needs at least 2 points");
  require_finite(samples, "samples");
  const auto xs = sorted_copy(samples);
  const double bw = bandwidth_of_sorted(xs);
  const double lo = xs.front() - 3.0 * bw;
  const double hi = xs.back() + 3.0 * bw;

  CurveGrid out;
  out.grid.resize(grid_size);
  out.values.resize(grid_size);
  const double step = (hi - lo) / static_cast<double>(grid_size - 1);
  const double norm = 1.0 / (static_cast<double>(xs.size()) * bw * std::sqrt(2.0 * std::numbers::pi));
  // kernel terms beyond 9 bandwidths are below 1e-17 of the peak
  constexpr double kCutoff = 9.0;
  for (std::size_t g = 0; g < grid_size; ++g) {
    // fill from both ends so the grid mirrors exactly when lo == -hi
    const double x = 2 * g < grid_size ? lo + step * static_cast<double>(g)
                                       : hi - step * static_cast<double>(grid_size - 1 - g);
    out.grid[g] = x;
    const auto first = std::lower_bound(xs.begin(), xs.end(), x - kCutoff * bw);
    const auto last = std::upper_bound(xs.begin(), xs.end(), x + kCutoff * bw);
    double acc = 0.0;
    for (auto it = first; it != last; ++it) {
      const double z = (x - *it) / bw;
      acc += std::exp(-0.5 * z * z);
    }
    out.values[g] = acc * norm;
  }
  return out;
}

CurveGrid ecdf_curve(std::span<const double> samples, std::span<const double> grid) {
  if (samples.empty()) throw Error(Errc::TooFewSamples, "ECDF needs at least 1 sample");
  require_finite(samples, "samples");
  const auto xs = sorted_copy(samples);
  CurveGrid out;
  out.grid.assign(grid.begin(), grid.end());
  out.values.reserve(grid.size());
  const double n = static_cast<double>(xs.size());
  for (double g : grid) {
    const auto below = std::upper_bound(xs.begin(), xs.end(), g) - xs.begin();
    out.values.push_back(static_cast<double>(below) / n);
  }
  return out;
}

SummaryStats summarize(std::span<const double> estimates, double true_value) {
  if (estimates.size() < 2) throw Error(Errc::TooFewSamples, "summary needs at least 2 estimates");
  require_finite(estimates, "estimates");
  const double c = static_cast<double>(estimates.size());
  SummaryStats out;
  out.count = estimates.size();
  out.em = pairwise_sum(estimates) / c;
  std::vector<double> centred(estimates.size());
  std::vector<double> errors(estimates.size());
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    centred[i] = (estimates[i] - out.em) * (estimates[i] - out.em);
    errors[i] = (estimates[i] - true_value) * (estimates[i] - true_value);
  }
  out.ev = pairwise_sum(centred) / (c - 1.0);
  out.bias = out.em - true_value;
  out.rmse = std::sqrt(pairwise_sum(errors) / c);
  return out;
}

double variance_standard_error(std::span<const double> estimates) {
  if (estimates.size() < 4) {
    throw Error(Errc::TooFewSamples, "variance standard error needs at least 4 estimates");
  }
  const double c = static_cast<double>(estimates.size());
  const double mean = pairwise_sum(estimates) / c;
  std::vector<double> p2(estimates.size());
  std::vector<double> p4(estimates.size());
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    const double d2 = (estimates[i] - mean) * (estimates[i] - mean);
    p2[i] = d2;
    p4[i] = d2 * d2;
  }
  const double s2 = pairwise_sum(p2) / (c - 1.0);
  const double m4 = pairwise_sum(p4) / c;
  const double var_of_s2 = (m4 - (c - 3.0) / (c - 1.0) * s2 * s2) / c;
  return std::sqrt(std::max(var_of_s2, 0.0));
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(Errc::LengthMismatch, "x and y must have equal length");
  double acc = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) acc += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return acc;
}

}  // namespace footrule
