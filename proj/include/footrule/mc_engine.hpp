#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "footrule/rng.hpp"
#include "footrule/statistic.hpp"
#include "footrule/stats.hpp"

namespace footrule {

struct DrawOptions {
  /// Multiply by sqrt(n) at draw time.
  bool scale_by_sqrt_n = false;
  /// PhiN only: X ~ N(0,1) (inverse CDF of the uniform stream) and
  /// Y ~ U(0,1) instead of two uniform margins. Ranks make the two
  /// choices equal in law.
  bool normal_marginals = false;
};

struct Draw {
  double value = 0.0;
  /// Replications discarded because a generated margin contained a tie.
  unsigned redraws = 0;
};

/// One replication of `statistic` at sample size n from the stream `key`.
/// Throws Error{NTooSmall} for n < 2.
Draw draw_statistic(StreamKey key, int n, Statistic statistic,
                    DrawOptions options = {});

/// Both representations evaluated on the same uniforms.
struct SharedDraw {
  double phi_prime = 0.0;
  double phi_double_prime = 0.0;
};

SharedDraw draw_representations_shared(StreamKey key, int n);

/// Values for stream ids 0..replications-1 under `seed`. Output is identical
/// for every thread count.
std::vector<double> simulate_draws(std::uint64_t seed, std::size_t replications,
                                   int n, Statistic statistic, DrawOptions options,
                                   unsigned threads, std::uint64_t* redraws = nullptr);

struct SimConfig {
  std::uint64_t seed = 42;
  std::size_t replications = 10'000;
  std::vector<int> sample_sizes;
  Statistic statistic = Statistic::PhiN;
  bool scale_by_sqrt_n = false;
  bool normal_marginals = false;
  unsigned threads = 1;
};

struct MomentRow {
  Statistic statistic = Statistic::PhiN;
  int n = 0;
  SummaryStats summary;
  /// Standard error of summary.ev, for calibrated comparisons.
  double ev_standard_error = 0.0;
};

struct MomentReport {
  std::vector<MomentRow> rows;
  std::uint64_t redraws = 0;
};

/// One summary per sample size against the null value 0.
MomentReport run_moment_study(const SimConfig& config);

enum class KsCombination {
  PhiVsNormal,
  PhiPrimeVsNormal,
  PhiDoublePrimeVsNormal,
  PhiVsPhiPrime,
  PhiVsPhiDoublePrime,
  PhiPrimeVsPhiDoublePrime,
};

inline constexpr std::size_t kKsCombinationCount = 6;

std::string_view label(KsCombination c) noexcept;

struct KsStudyConfig {
  std::uint64_t seed = 42;
  std::size_t draws = 1000;
  std::vector<int> sample_sizes;
  bool normal_marginals = false;
  unsigned threads = 1;
};

struct KsRow {
  int n = 0;
  KsCombination combination = KsCombination::PhiVsNormal;
  KsOutcome outcome;
};

struct KsReport {
  std::vector<KsRow> rows;
  std::uint64_t redraws = 0;
};

/// Per n: one pool of sqrt(n)-scaled draws per statistic (independent
/// seeds), reused by every combination; one-sample tests against
/// N(0, 0.4), two-sample tests pairwise.
KsReport run_ks_study(const KsStudyConfig& config);

struct CurveConfig {
  std::uint64_t seed = 42;
  std::size_t replications = 100'000;
  std::vector<int> sample_sizes;
  std::size_t grid_size = kDefaultGridSize;
  bool normal_marginals = false;
  unsigned threads = 1;
};

struct CurveSet {
  Statistic statistic = Statistic::PhiN;
  int n = 0;
  CurveGrid density;
  CurveGrid cdf;
  std::vector<double> normal_density;
  std::vector<double> normal_cdf;
  /// Exact sup |ECDF - N(0, 0.4) CDF| over the draws (not just the grid).
  double sup_gap = 0.0;
  std::size_t distinct_values = 0;
};

struct CurveReport {
  std::vector<CurveSet> sets;
  std::uint64_t redraws = 0;
};

/// KDE and ECDF of sqrt(n)-scaled draws plus the N(0, 0.4) reference, all
/// on the KDE grid.
CurveReport run_curve_study(const CurveConfig& config);

/// Seed of the pool used by a study for (statistic, n).
enum class StudyTag : std::uint64_t { Moments = 1, KsTest = 2, Curves = 3 };
std::uint64_t pool_seed(std::uint64_t seed, StudyTag tag, Statistic statistic, int n) noexcept;

}  // namespace footrule
