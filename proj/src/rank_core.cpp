#include "footrule/rank_core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>
#include <thread>

#include "footrule/error.hpp"

namespace footrule {
namespace {

void check_finite(std::span<const double> values, const char* what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw Error(Errc::NonFinite,
                  std::string(what) + ": non-finite value at index " + std::to_string(i), i);
    }
  }
}

void check_permutation(std::span<const int> p, const char* what) {
  std::vector<bool> seen(p.size() + 1, false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const int v = p[i];
    if (v < 1 || static_cast<std::size_t>(v) > p.size() || seen[v]) {
      throw Error(Errc::OutOfRange,
                  std::string(what) + " is not a permutation of 1..n (index " +
                      std::to_string(i) + ")",
                  i);
    }
    seen[v] = true;
  }
}

std::vector<std::size_t> argsort(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b] || (values[a] == values[b] && a < b);
  });
  return order;
}

}  // namespace

PairedSample::PairedSample(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() != y_.size()) {
    throw Error(Errc::LengthMismatch, "x and y must have equal length");
  }
  if (x_.size() < 2) throw Error(Errc::TooShort, "paired sample needs n >= 2");
  check_finite(x_, "x");
  check_finite(y_, "y");
}

RankPair::RankPair(std::vector<int> r, std::vector<int> s) : r_(std::move(r)), s_(std::move(s)) {
  if (r_.size() != s_.size()) {
    throw Error(Errc::LengthMismatch, "rank vectors must have equal length");
  }
  if (r_.empty()) throw Error(Errc::TooShort, "rank pair needs n >= 1");
  check_permutation(r_, "r");
  check_permutation(s_, "s");
}

namespace detail {

std::optional<std::pair<std::size_t, std::size_t>> rank_into(std::span<const double> values,
                                                             std::span<int> out,
                                                             std::vector<std::size_t>& order) {
  order.resize(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b] || (values[a] == values[b] && a < b);
  });
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k > 0 && values[order[k]] == values[order[k - 1]]) {
      return std::pair{order[k - 1], order[k]};
    }
    out[order[k]] = static_cast<int>(k + 1);
  }
  return std::nullopt;
}

}  // namespace detail

std::vector<int> compute_ranks(std::span<const double> values) {
  if (values.size() < 2) throw Error(Errc::TooShort, "ranking needs at least 2 values");
  check_finite(values, "values");
  std::vector<int> ranks(values.size());
  std::vector<std::size_t> order;
  if (auto tie = detail::rank_into(values, ranks, order)) {
    throw Error(Errc::TiesPresent,
                "tied values at indices " + std::to_string(tie->first) + " and " +
                    std::to_string(tie->second),
                tie->second);
  }
  return ranks;
}

std::vector<double> compute_mid_ranks(std::span<const double> values) {
  if (values.size() < 2) throw Error(Errc::TooShort, "ranking needs at least 2 values");
  check_finite(values, "values");
  const auto order = argsort(values);
  std::vector<double> ranks(values.size());
  std::size_t start = 0;
  while (start < order.size()) {
    std::size_t end = start + 1;
    while (end < order.size() && values[order[end]] == values[order[start]]) ++end;
    // positions start+1 .. end share their average
    const double mid = 0.5 * static_cast<double>(start + 1 + end);
    for (std::size_t k = start; k < end; ++k) ranks[order[k]] = mid;
    start = end;
  }
  return ranks;
}

std::int64_t footrule_distance(const RankPair& ranks) noexcept {
  std::int64_t d = 0;
  for (int i = 0; i < ranks.n(); ++i) d += std::abs(ranks.r()[i] - ranks.s()[i]);
  return d;
}

std::int64_t cross_distance_sum(const RankPair& ranks) noexcept {
  std::int64_t total = 0;
  for (int ri : ranks.r()) {
    for (int sj : ranks.s()) total += std::abs(ri - sj);
  }
  return total;
}

double footrule_phi(int n, std::int64_t distance) noexcept {
  const auto n64 = static_cast<std::int64_t>(n);
  return 1.0 - 3.0 * static_cast<double>(distance) / static_cast<double>(n64 * n64 - 1);
}

std::int64_t max_distance(int n) noexcept {
  const auto n64 = static_cast<std::int64_t>(n);
  return n64 * n64 / 2;
}

FootruleResult footrule_coefficient(const PairedSample& sample) {
  RankPair ranks(compute_ranks(sample.x()), compute_ranks(sample.y()));
  FootruleResult out;
  out.n = ranks.n();
  out.distance = footrule_distance(ranks);
  out.phi = footrule_phi(out.n, out.distance);
  return out;
}

MidRankFootrule footrule_coefficient_midrank(const PairedSample& sample) {
  const auto r = compute_mid_ranks(sample.x());
  const auto s = compute_mid_ranks(sample.y());
  MidRankFootrule out;
  out.n = static_cast<int>(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) out.distance += std::abs(r[i] - s[i]);
  const double nn = static_cast<double>(out.n);
  out.phi = 1.0 - 3.0 * out.distance / (nn * nn - 1.0);
  return out;
}

ExactNullDistribution::ExactNullDistribution(int n, std::map<std::int64_t, std::uint64_t> counts)
    : n_(n), counts_(std::move(counts)) {
  for (const auto& [d, c] : counts_) total_ += c;
}

double ExactNullDistribution::probability(std::int64_t distance) const noexcept {
  auto it = counts_.find(distance);
  if (it == counts_.end()) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(total_);
}

double ExactNullDistribution::mean_distance() const noexcept {
  std::uint64_t weighted = 0;
  for (const auto& [d, c] : counts_) weighted += static_cast<std::uint64_t>(d) * c;
  return static_cast<double>(weighted) / static_cast<double>(total_);
}

double ExactNullDistribution::phi_mean() const noexcept {
  // E phi = 1 - 3 E D / (n^2 - 1), with E D kept as an exact ratio
  std::uint64_t weighted = 0;
  for (const auto& [d, c] : counts_) weighted += static_cast<std::uint64_t>(d) * c;
  const auto m = static_cast<long double>(static_cast<std::int64_t>(n_) * n_ - 1);
  const long double num =
      m * static_cast<long double>(total_) - 3.0L * static_cast<long double>(weighted);
  return static_cast<double>(num / (m * static_cast<long double>(total_)));
}

double ExactNullDistribution::phi_variance() const noexcept {
  // Var phi = 9 Var D / (n^2-1)^2; Var D = (T S2 - S1^2) / T^2 in integers.
  unsigned __int128 s1 = 0;
  unsigned __int128 s2 = 0;
  for (const auto& [d, c] : counts_) {
    const auto du = static_cast<unsigned __int128>(d);
    s1 += du * c;
    s2 += du * du * c;
  }
  const auto t = static_cast<unsigned __int128>(total_);
  const unsigned __int128 num = t * s2 - s1 * s1;
  const auto m = static_cast<long double>(static_cast<std::int64_t>(n_) * n_ - 1);
  const long double var_d =
      static_cast<long double>(num) / (static_cast<long double>(t) * static_cast<long double>(t));
  return static_cast<double>(9.0L * var_d / (m * m));
}

double ExactNullDistribution::two_sided_p(std::int64_t observed) const noexcept {
  const std::int64_t m = static_cast<std::int64_t>(n_) * n_ - 1;
  const std::int64_t obs = std::llabs(m - 3 * observed);
  std::uint64_t tail = 0;
  for (const auto& [d, c] : counts_) {
    if (std::llabs(m - 3 * d) >= obs) tail += c;
  }
  return static_cast<double>(tail) / static_cast<double>(total_);
}

std::vector<std::pair<double, double>> ExactNullDistribution::phi_cdf() const {
  std::vector<std::pair<double, double>> out;
  out.reserve(counts_.size());
  std::uint64_t running = 0;
  // phi decreases in D, so walk the distances from the top
  for (auto it = counts_.rbegin(); it != counts_.rend(); ++it) {
    running += it->second;
    out.emplace_back(footrule_phi(n_, it->first),
                     static_cast<double>(running) / static_cast<double>(total_));
  }
  return out;
}

ExactNullDistribution enumerate_null_distribution(int n, unsigned threads) {
  if (n < 2) throw Error(Errc::NTooSmall, "enumeration needs n >= 2");
  if (n > kMaxEnumerationN) {
    throw Error(Errc::NTooLarge, "enumeration is capped at n = " + std::to_string(kMaxEnumerationN));
  }
  const auto width = static_cast<std::size_t>(max_distance(n) + 1);
  // one histogram per value placed first; merged in a fixed order below
  std::vector<std::vector<std::uint64_t>> partial(n, std::vector<std::uint64_t>(width, 0));

  auto work = [n, &partial](int first) {
    std::vector<int> rest;
    for (int v = 0; v < n; ++v) {
      if (v != first) rest.push_back(v);
    }
    auto& hist = partial[first];
    do {
      std::int64_t d = first;
      for (int i = 1; i < n; ++i) d += std::abs(i - rest[i - 1]);
      ++hist[d];
    } while (std::next_permutation(rest.begin(), rest.end()));
  };

  const unsigned workers = std::clamp(threads, 1u, static_cast<unsigned>(n));
  if (workers == 1) {
    for (int f = 0; f < n; ++f) work(f);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([w, workers, n, &work] {
        for (int f = static_cast<int>(w); f < n; f += static_cast<int>(workers)) work(f);
      });
    }
  }

  std::map<std::int64_t, std::uint64_t> counts;
  for (std::size_t d = 0; d < width; ++d) {
    std::uint64_t c = 0;
    for (const auto& hist : partial) c += hist[d];
    if (c != 0) counts.emplace(static_cast<std::int64_t>(d), c);
  }
  return ExactNullDistribution(n, std::move(counts));
}

}  // namespace footrule
