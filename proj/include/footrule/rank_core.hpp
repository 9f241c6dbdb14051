#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace footrule {

/// Paired observations (x_i, y_i). Construction checks equal lengths,
/// n >= 2 and finiteness; ties are only detected when ranking.
class PairedSample {
 public:
  PairedSample(std::vector<double> x, std::vector<double> y);

  std::span<const double> x() const noexcept { return x_; }
  std::span<const double> y() const noexcept { return y_; }
  std::size_t size() const noexcept { return x_.size(); }

 private:
  std::vector<double> x_;
  std::vector<double> y_;
};

/// Two permutations of {1..n}.
class RankPair {
 public:
  RankPair(std::vector<int> r, std::vector<int> s);

  std::span<const int> r() const noexcept { return r_; }
  std::span<const int> s() const noexcept { return s_; }
  int n() const noexcept { return static_cast<int>(r_.size()); }

 private:
  std::vector<int> r_;
  std::vector<int> s_;
};

struct FootruleResult {
  int n = 0;
  std::int64_t distance = 0;
  double phi = 0.0;
};

/// Result under the opt-in mid-rank tie policy. Distances may be
/// half-integers here, and the null theory no longer applies.
struct MidRankFootrule {
  int n = 0;
  double distance = 0.0;
  double phi = 0.0;
};

/// Ranks 1..n of tie-free finite data (rank_i = #{k : v_k <= v_i}).
/// Throws Error{TooShort | NonFinite | TiesPresent}.
std::vector<int> compute_ranks(std::span<const double> values);

/// Average ranks for tied groups. Not covered by any null result here.
std::vector<double> compute_mid_ranks(std::span<const double> values);

std::int64_t footrule_distance(const RankPair& ranks) noexcept;

/// Sum over all (i, j) of |r_i - s_j|; always n(n^2-1)/3 for permutations.
std::int64_t cross_distance_sum(const RankPair& ranks) noexcept;

/// 1 - 3 D / (n^2 - 1).
double footrule_phi(int n, std::int64_t distance) noexcept;

/// Largest footrule distance attainable at size n, floor(n^2 / 2).
std::int64_t max_distance(int n) noexcept;

FootruleResult footrule_coefficient(const PairedSample& sample);
MidRankFootrule footrule_coefficient_midrank(const PairedSample& sample);

/// Exact law of D under a uniformly random permutation, i.e. the null law
/// of the footrule distance for continuous independent data.
class ExactNullDistribution {
 public:
  ExactNullDistribution(int n, std::map<std::int64_t, std::uint64_t> counts);

  int n() const noexcept { return n_; }
  const std::map<std::int64_t, std::uint64_t>& counts() const noexcept {
    return counts_;
  }
  std::uint64_t total() const noexcept { return total_; }

  double probability(std::int64_t distance) const noexcept;
  double mean_distance() const noexcept;
  double phi_mean() const noexcept;
  double phi_variance() const noexcept;

  /// P(|phi| >= |phi_obs|) where phi_obs corresponds to `observed`.
  /// The comparison is carried out on integers.
  double two_sided_p(std::int64_t observed) const noexcept;

  /// (phi, P(Phi <= phi)) at every atom, ascending in phi.
  std::vector<std::pair<double, double>> phi_cdf() const;

 private:
  int n_;
  std::map<std::int64_t, std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

inline constexpr int kMaxEnumerationN = 10;

/// Enumerates all n! permutations (2 <= n <= 10). `threads` splits the work
/// by the value in the first position; the result does not depend on it.
ExactNullDistribution enumerate_null_distribution(int n, unsigned threads = 1);

namespace detail {

/// Ranks into `out` without throwing on ties. Returns the original indices
/// of one tied pair if ties are present. Values are assumed finite.
std::optional<std::pair<std::size_t, std::size_t>> rank_into(
    std::span<const double> values, std::span<int> out,
    std::vector<std::size_t>& order);

}  // namespace detail

}  // namespace footrule
