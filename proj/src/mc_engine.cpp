#include "footrule/mc_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include <boost/math/special_functions/erf.hpp>

#include "footrule/error.hpp"
#include "footrule/moments.hpp"
#include "footrule/rank_core.hpp"
#include "footrule/representations.hpp"

namespace footrule {
namespace {

double standard_normal_quantile(double p) {
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

void fill_uniform(StreamRng& rng, std::span<double> out) {
  for (double& x : out) x = rng.uniform_open();
}

// Contiguous blocks per worker; every slot depends only on its own index.
template <class Fn>
void parallel_fill(std::size_t count, unsigned threads, Fn&& fn) {
  const unsigned workers =
      static_cast<unsigned>(std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(count, 1)));
  if (workers <= 1) {
    fn(std::size_t{0}, count);
    return;
  }
  std::vector<std::jthread> pool;
  const std::size_t chunk = (count + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = std::min(count, chunk * w);
    const std::size_t end = std::min(count, begin + chunk);
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
}

}  // namespace

std::string_view label(KsCombination c) noexcept {
  switch (c) {
    case KsCombination::PhiVsNormal: return "phi-vs-normal";
    case KsCombination::PhiPrimeVsNormal: return "phiprime-vs-normal";
    case KsCombination::PhiDoublePrimeVsNormal: return "phidprime-vs-normal";
    case KsCombination::PhiVsPhiPrime: return "phi-vs-phiprime";
    case KsCombination::PhiVsPhiDoublePrime: return "phi-vs-phidprime";
    case KsCombination::PhiPrimeVsPhiDoublePrime: return "phiprime-vs-phidprime";
  }
  return "unknown";
}

std::uint64_t pool_seed(std::uint64_t seed, StudyTag tag, Statistic statistic, int n) noexcept {
  return derive_seed(seed, {static_cast<std::uint64_t>(tag),
                            static_cast<std::uint64_t>(statistic) + 1,
                            static_cast<std::uint64_t>(n)});
}

Draw draw_statistic(StreamKey key, int n, Statistic statistic, DrawOptions options) {
  if (n < 2) throw Error(Errc::NTooSmall, "draws need n >= 2");
  StreamRng rng(key);
  const auto size = static_cast<std::size_t>(n);
  std::vector<double> a(size);
  std::vector<double> b(size);
  Draw out;

  switch (statistic) {
    case Statistic::PhiN: {
      std::vector<int> r(size);
      std::vector<int> s(size);
      std::vector<std::size_t> order;
      for (;;) {
        fill_uniform(rng, a);
        fill_uniform(rng, b);
        if (options.normal_marginals) {
          for (double& x : a) x = standard_normal_quantile(x);
        }
        if (!detail::rank_into(a, r, order) && !detail::rank_into(b, s, order)) break;
        ++out.redraws;
      }
      std::int64_t d = 0;
      for (std::size_t i = 0; i < size; ++i) d += std::abs(r[i] - s[i]);
      out.value = footrule_phi(n, d);
      break;
    }
    case Statistic::PhiPrime:
      fill_uniform(rng, a);
      fill_uniform(rng, b);
      out.value = phi_prime(a, b);
      break;
    case Statistic::PhiDoublePrime:
      fill_uniform(rng, a);
      fill_uniform(rng, b);
      out.value = phi_double_prime(a, b);
      break;
  }
  if (options.scale_by_sqrt_n) out.value *= std::sqrt(static_cast<double>(n));
  return out;
}

SharedDraw draw_representations_shared(StreamKey key, int n) {
  if (n < 2) throw Error(Errc::NTooSmall, "draws need n >= 2");
  StreamRng rng(key);
  std::vector<double> u(static_cast<std::size_t>(n));
  std::vector<double> v(static_cast<std::size_t>(n));
  fill_uniform(rng, u);
  fill_uniform(rng, v);
  return {phi_prime(u, v), phi_double_prime(u, v)};
}

std::vector<double> simulate_draws(std::uint64_t seed, std::size_t replications, int n,
                                   Statistic statistic, DrawOptions options, unsigned threads,
                                   std::uint64_t* redraws) {
  if (n < 2) throw Error(Errc::NTooSmall, "draws need n >= 2");
  std::vector<double> values(replications);
  std::vector<unsigned> retries(replications, 0);
  parallel_fill(replications, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const Draw d = draw_statistic({seed, i}, n, statistic, options);
      values[i] = d.value;
      retries[i] = d.redraws;
    }
  });
  if (redraws != nullptr) {
    for (unsigned r : retries) *redraws += r;
  }
  return values;
}

MomentReport run_moment_study(const SimConfig& config) {
  if (config.replications < 2) throw Error(Errc::TooFewSamples, "moment study needs >= 2 replications");
  MomentReport report;
  for (int n : config.sample_sizes) {
    const DrawOptions options{config.scale_by_sqrt_n, config.normal_marginals};
    const auto values =
        simulate_draws(pool_seed(config.seed, StudyTag::Moments, config.statistic, n),
                       config.replications, n, config.statistic, options, config.threads,
                       &report.redraws);
    MomentRow row;
    row.statistic = config.statistic;
    row.n = n;
    row.summary = summarize(values, 0.0);
    row.ev_standard_error = values.size() >= 4 ? variance_standard_error(values) : 0.0;
    report.rows.push_back(row);
  }
  return report;
}

KsReport run_ks_study(const KsStudyConfig& config) {
  KsReport report;
  const auto reference = [](double x) { return normal_cdf(x, 0.0, limiting_variance()); };
  for (int n : config.sample_sizes) {
    std::vector<std::vector<double>> pools;
    for (Statistic s : kAllStatistics) {
      pools.push_back(simulate_draws(pool_seed(config.seed, StudyTag::KsTest, s, n), config.draws,
                                     n, s, {true, config.normal_marginals}, config.threads,
                                     &report.redraws));
    }
    const auto& phi = pools[0];
    const auto& prime = pools[1];
    const auto& dprime = pools[2];
    report.rows.push_back({n, KsCombination::PhiVsNormal, ks_one_sample(phi, reference)});
    report.rows.push_back({n, KsCombination::PhiPrimeVsNormal, ks_one_sample(prime, reference)});
    report.rows.push_back(
        {n, KsCombination::PhiDoublePrimeVsNormal, ks_one_sample(dprime, reference)});
    report.rows.push_back({n, KsCombination::PhiVsPhiPrime, ks_two_sample(phi, prime)});
    report.rows.push_back({n, KsCombination::PhiVsPhiDoublePrime, ks_two_sample(phi, dprime)});
    report.rows.push_back(
        {n, KsCombination::PhiPrimeVsPhiDoublePrime, ks_two_sample(prime, dprime)});
  }
  return report;
}

CurveReport run_curve_study(const CurveConfig& config) {
  CurveReport report;
  const double var = limiting_variance();
  for (int n : config.sample_sizes) {
    for (Statistic s : kAllStatistics) {
      auto draws = simulate_draws(pool_seed(config.seed, StudyTag::Curves, s, n),
                                  config.replications, n, s, {true, config.normal_marginals},
                                  config.threads, &report.redraws);
      CurveSet set;
      set.statistic = s;
      set.n = n;
      set.density = gaussian_kde(draws, config.grid_size);
      set.cdf = ecdf_curve(draws, set.density.grid);
      for (double g : set.density.grid) {
        set.normal_density.push_back(normal_pdf(g, 0.0, var));
        set.normal_cdf.push_back(normal_cdf(g, 0.0, var));
      }
      set.sup_gap =
          ks_one_sample(draws, [var](double x) { return normal_cdf(x, 0.0, var); }).statistic;
      std::sort(draws.begin(), draws.end());
      set.distinct_values = static_cast<std::size_t>(
          std::unique(draws.begin(), draws.end()) - draws.begin());
      report.sets.push_back(std::move(set));
    }
  }
  return report;
}

}  // namespace footrule
