// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "footrule/cli.hpp"
#include "footrule/mc_engine.hpp"
#include "footrule/moments.hpp"
#include "footrule/rank_core.hpp"
#include "footrule/rng.hpp"
#include "footrule/stats.hpp"

using namespace footrule;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fmt(const char* pattern, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

double formula_variance(int n, Statistic s) {
  const double m = n;
  switch (s) {
    case Statistic::PhiN:
      return (2 * m * m + 7) / (5 * (m + 1) * (m - 1) * (m - 1));
    case Statistic::PhiPrime:
      return 2 * m * m / (5 * (m + 1) * (m + 1) * (m - 1));
    case Statistic::PhiDoublePrime:
      return 2 * m / (5 * (m + 1) * (m + 1));
  }
  return NAN;
}

// Mean and standard error of the mean.
struct Estimate {
  double mean;
  double se;
};

Estimate mean_se(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  double s = 0.0;
  for (double x : xs) s += x;
  const double mean = s / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (n - 1) / n)};
}

// Sample covariance with the delta-method standard error of its estimator.
Estimate covariance_se(const std::vector<double>& a, const std::vector<double>& b) {
  const Estimate ma = mean_se(a);
  const Estimate mb = mean_se(b);
  std::vector<double> prod(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) prod[i] = (a[i] - ma.mean) * (b[i] - mb.mean);
  return mean_se(prod);
}

Verdict exact_moments() {
  Verdict v;
  double worst = 0.0;
  for (int n = 2; n <= 8; ++n) {
    const auto dist = enumerate_null_distribution(n);
    // mean and variance straight from the counts
    double mean = 0.0;
    for (const auto& [d, c] : dist.counts()) {
      mean += footrule_phi(n, d) * static_cast<double>(c) / static_cast<double>(dist.total());
    }
    double var = 0.0;
    for (const auto& [d, c] : dist.counts()) {
      const double dev = footrule_phi(n, d) - mean;
      var += dev * dev * static_cast<double>(c) / static_cast<double>(dist.total());
    }
    const double err = std::max(std::abs(mean), std::abs(var - formula_variance(n, Statistic::PhiN)));
    worst = std::max(worst, err);
    v.require(err <= 1e-12, fmt("n=%d off by %.3g", n, err));
  }
  if (v.pass) v.detail = fmt("max deviation %.2g", worst);
  return v;
}

Verdict moment_table() {
  Verdict v;
  double worst_em = 0.0;
  double worst_ev = 0.0;
  for (Statistic s : kAllStatistics) {
    SimConfig cfg;
    cfg.replications = 10'000;
    cfg.sample_sizes = {10, 50, 100};
    cfg.statistic = s;
    for (const auto& row : run_moment_study(cfg).rows) {
      const double var = formula_variance(row.n, s);
      const double em_ratio = std::abs(row.summary.em) / std::sqrt(var / 10'000.0);
      const double ev_ratio = std::abs(row.summary.ev - var) / row.ev_standard_error;
      worst_em = std::max(worst_em, em_ratio);
      worst_ev = std::max(worst_ev, ev_ratio);
      const auto name = std::string(label(s)) + " n=" + std::to_string(row.n);
      v.require(em_ratio <= 3.0, fmt("%s |EM| = %.2f sd", name.c_str(), em_ratio));
      v.require(ev_ratio <= 3.0, fmt("%s EV off by %.2f SE", name.c_str(), ev_ratio));
      if (row.n == 10 && s == Statistic::PhiN) {
        v.require(row.summary.ev >= 0.0435 && row.summary.ev <= 0.0495,
                  fmt("phi EV at n=10 = %.5f", row.summary.ev));
      }
      if (row.n == 10 && s == Statistic::PhiPrime) {
        v.require(row.summary.ev >= 0.0352 && row.summary.ev <= 0.0383,
                  fmt("phiprime EV at n=10 = %.5f", row.summary.ev));
      }
    }
  }
  if (v.pass) v.detail = fmt("worst |EM| %.2f sd, worst EV %.2f SE", worst_em, worst_ev);
  return v;
}

Verdict rmse_trend() {
  Verdict v;
  std::vector<int> sizes;
  for (int n = 10; n <= 100; n += 10) sizes.push_back(n);
  double at10[3] = {};
  for (Statistic s : kAllStatistics) {
    SimConfig cfg;
    cfg.replications = 10'000;
    cfg.sample_sizes = sizes;
    cfg.statistic = s;
    const auto rows = run_moment_study(cfg).rows;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      v.require(rows[i].summary.rmse < rows[i - 1].summary.rmse,
                fmt("%s RMSE rises from n=%d to n=%d", std::string(label(s)).c_str(),
                    rows[i - 1].n, rows[i].n));
    }
    at10[static_cast<int>(s)] = rows.front().summary.rmse;
  }
  v.require(at10[0] > at10[1] && at10[0] > at10[2],
            fmt("RMSE at n=10: phi %.5f, phiprime %.5f, phidprime %.5f", at10[0], at10[1], at10[2]));
  if (v.pass) {
    v.detail = fmt("RMSE at n=10: %.5f > %.5f, %.5f", at10[0], at10[1], at10[2]);
  }
  return v;
}

const KsOutcome& ks_row(const KsReport& r, int n, KsCombination c) {
  for (const auto& row : r.rows) {
    if (row.n == n && row.combination == c) return row.outcome;
  }
  throw std::logic_error("missing KS row");
}

Verdict ks_pattern() {
  Verdict v;
  KsStudyConfig small;
  small.sample_sizes = {10};
  const auto r10 = run_ks_study(small);
  const double p_dprime = ks_row(r10, 10, KsCombination::PhiVsPhiDoublePrime).p_value;
  const double p_normal = ks_row(r10, 10, KsCombination::PhiVsNormal).p_value;
  v.require(p_dprime < 0.01, fmt("n=10 phi-vs-phidprime p = %.5f", p_dprime));
  v.require(p_normal < 0.01, fmt("n=10 phi-vs-normal p = %.5f", p_normal));

  int passes[2][kKsCombinationCount] = {};
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    KsStudyConfig cfg;
    cfg.seed = seed;
    cfg.sample_sizes = {50, 100};
    for (const auto& row : run_ks_study(cfg).rows) {
      passes[row.n == 100][static_cast<std::size_t>(row.combination)] += row.outcome.p_value > 0.01;
    }
  }
  int fewest = 10;
  for (int i = 0; i < 2; ++i) {
    for (std::size_t c = 0; c < kKsCombinationCount; ++c) {
      fewest = std::min(fewest, passes[i][c]);
      v.require(passes[i][c] >= 8,
                fmt("n=%d %s: %d/10 seeds with p > 0.01", i ? 100 : 50,
                    std::string(label(static_cast<KsCombination>(c))).c_str(), passes[i][c]));
    }
  }
  if (v.pass) {
    v.detail = fmt("n=10 p = %.5f, %.5f; n=50,100 at least %d/10 seeds", p_dprime, p_normal,
                   fewest);
  }
  return v;
}

Verdict projection_convergence() {
  Verdict v;
  auto draws = simulate_draws(pool_seed(42, StudyTag::Curves, Statistic::PhiDoublePrime, 100),
                              100'000, 100, Statistic::PhiDoublePrime, {true, false}, 1);
  std::sort(draws.begin(), draws.end());
  const double m = static_cast<double>(draws.size());
  double gap = 0.0;
  for (std::size_t i = 0; i < draws.size(); ++i) {
    const double f = 0.5 * std::erfc(-draws[i] / std::sqrt(2.0 * 0.4));
    gap = std::max({gap, std::abs(static_cast<double>(i + 1) / m - f),
                    std::abs(f - static_cast<double>(i) / m)});
  }
  v.require(gap < 0.01, fmt("sup gap %.5f", gap));
  if (v.pass) v.detail = fmt("sup gap %.5f", gap);
  return v;
}

Verdict distribution_free() {
  Verdict v;
  const auto dist = enumerate_null_distribution(8);
  auto draws = simulate_draws(pool_seed(42, StudyTag::Curves, Statistic::PhiN, 8), 200'000, 8,
                              Statistic::PhiN, {}, 1);
  std::sort(draws.begin(), draws.end());
  // both laws live on the same lattice, so checking each atom covers the sup
  double gap = 0.0;
  double cumulative = 0.0;
  for (auto it = dist.counts().rbegin(); it != dist.counts().rend(); ++it) {
    cumulative += static_cast<double>(it->second) / static_cast<double>(dist.total());
    const double phi = footrule_phi(8, it->first);
    const auto below = std::upper_bound(draws.begin(), draws.end(), phi + 1e-9) - draws.begin();
    gap = std::max(gap, std::abs(static_cast<double>(below) / draws.size() - cumulative));
  }
  v.require(gap < 0.005, fmt("sup gap %.5f", gap));
  if (v.pass) v.detail = fmt("sup gap %.5f", gap);
  return v;
}

Verdict hajek_residual() {
  Verdict v;
  constexpr std::size_t kReps = 10'000;
  const std::uint64_t seed = derive_seed(42, {7});
  double rms[2] = {};
  double corr = 0.0;
  for (int k = 0; k < 2; ++k) {
    const int n = k == 0 ? 50 : 100;
    std::vector<double> a(kReps);
    std::vector<double> b(kReps);
    double sq = 0.0;
    for (std::size_t i = 0; i < kReps; ++i) {
      const auto d = draw_representations_shared({derive_seed(seed, {static_cast<std::uint64_t>(n)}), i}, n);
      a[i] = std::sqrt(static_cast<double>(n)) * d.phi_prime;
      b[i] = std::sqrt(static_cast<double>(n)) * d.phi_double_prime;
      sq += (d.phi_prime - d.phi_double_prime) * (d.phi_prime - d.phi_double_prime);
    }
    rms[k] = std::sqrt(sq / kReps);
    if (n == 100) {
      const auto cov = covariance_se(a, b).mean;
      const auto va = covariance_se(a, a).mean;
      const auto vb = covariance_se(b, b).mean;
      corr = cov / std::sqrt(va * vb);
    }
  }
  const double ratio = rms[0] / rms[1];
  v.require(ratio >= 1.6 && ratio <= 2.5, fmt("RMS ratio %.3f", ratio));
  v.require(corr > 0.95, fmt("correlation %.4f", corr));
  if (v.pass) v.detail = fmt("RMS ratio %.3f, correlation %.4f", ratio, corr);
  return v;
}

Verdict lemma_constants() {
  Verdict v;
  constexpr std::size_t kDraws = 1'000'000;
  const std::uint64_t seed = derive_seed(42, {8});
  StreamRng rng({seed, 0});
  std::vector<double> absdiff(kDraws);
  std::vector<double> absdiff_other(kDraws);
  std::vector<double> u1mu(kDraws);
  std::vector<double> sq_absdiff(kDraws);
  std::vector<double> sq_u1mu(kDraws);
  for (std::size_t i = 0; i < kDraws; ++i) {
    const double u = rng.uniform_open();
    const double a = rng.uniform_open();
    const double b = rng.uniform_open();
    absdiff[i] = std::abs(u - a);
    absdiff_other[i] = std::abs(u - b);
    u1mu[i] = u * (1.0 - u);
  }
  struct Check {
    const char* name;
    Estimate est;
    Rational truth;
  };
  const Check checks[] = {
      {"E|U-V|", mean_se(absdiff), LemmaConstants::e_abs_diff},
      {"E U(1-U)", mean_se(u1mu), LemmaConstants::e_u_one_minus_u},
      {"Var|U-V|", covariance_se(absdiff, absdiff), LemmaConstants::var_abs_diff},
      {"Var U(1-U)", covariance_se(u1mu, u1mu), LemmaConstants::var_u_one_minus_u},
      {"Cov(|U-V|,U(1-U))", covariance_se(absdiff, u1mu), LemmaConstants::cov_absdiff_u1mu},
      {"Cov(|U-V|,|U-V'|)", covariance_se(absdiff, absdiff_other),
       LemmaConstants::cov_absdiff_shared},
  };
  double worst = 0.0;
  for (const auto& c : checks) {
    const double z = std::abs(c.est.mean - c.truth.value()) / c.est.se;
    worst = std::max(worst, z);
    v.require(z <= 4.0, fmt("%s off by %.2f SE", c.name, z));
  }

  StreamRng cond({seed, 1});
  for (int k = 1; k <= 9; ++k) {
    const double u = k / 10.0;
    std::vector<double> xs(100'000);
    for (double& x : xs) x = std::abs(u - cond.uniform_open());
    const auto est = mean_se(xs);
    const double z = std::abs(est.mean - cond_exp_abs_diff(u)) / est.se;
    worst = std::max(worst, z);
    v.require(z <= 4.0, fmt("E(|U-V| | U=%.1f) off by %.2f SE", u, z));
  }
  if (v.pass) v.detail = fmt("worst deviation %.2f SE over 15 checks", worst);
  return v;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Verdict determinism() {
  Verdict v;
  const fs::path dir = fs::temp_directory_path() / ("footrule_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  struct Command {
    std::vector<std::string> args;
    std::vector<std::string> outputs;
  };
  const std::vector<Command> commands = {
      {{"simulate", "moments", "--n-list", "10,50,100", "--reps", "10000"}, {""}},
      {{"simulate", "kstest", "--n-list", "10,50,100", "--reps", "1000"}, {""}},
      {{"simulate", "curves", "--n-list", "10,100", "--reps", "20000", "--grid-size", "128"},
       {"_density.csv", "_cdf.csv"}},
      {{"exact", "9"}, {""}},
  };
  int files = 0;
  for (std::size_t k = 0; k < commands.size(); ++k) {
    std::string reference;
    for (const char* threads : {"1", "3", "8"}) {
      const auto out = (dir / ("c" + std::to_string(k) + "_t" + threads)).string();
      auto args = commands[k].args;
      args.insert(args.end(), {"--threads", threads, "--out", out});
      std::ostringstream sink;
      if (cli::run(args, sink, sink) != 0) {
        v.require(false, "command failed: " + sink.str());
        continue;
      }
      std::string bytes;
      for (const auto& suffix : commands[k].outputs) bytes += read_file(out + suffix);
      files += static_cast<int>(commands[k].outputs.size());
      if (reference.empty()) reference = bytes;
      v.require(!bytes.empty() && bytes == reference,
                fmt("%s output differs at --threads %s", commands[k].args[commands[k].args[0] == "exact" ? 0 : 1].c_str(), threads));
    }
  }
  fs::remove_all(dir);
  if (v.pass) v.detail = fmt("%d CSV files identical across --threads 1, 3, 8", files);
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "exact null moments, n = 2..8", 10, exact_moments},
      {2, "moment table at n = 10, 50, 100", 60, moment_table},
      {3, "RMSE decreasing in n", 90, rmse_trend},
      {4, "KS p-value pattern", 60, ks_pattern},
      {5, "projection vs N(0, 0.4) at n = 100", 30, projection_convergence},
      {6, "simulated vs exact law at n = 8", 30, distribution_free},
      {7, "projection residual scaling", 30, hajek_residual},
      {8, "moment constants by Monte Carlo", 20, lemma_constants},
      {9, "output independent of --threads", 600, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    v.require(secs < c.limit_seconds, fmt("took %.1f s, limit %.0f s", secs, c.limit_seconds));
    failed += !v.pass;
    std::printf("%s [%d] %s: %s (%.2f s)\n", v.pass ? "PASS" : "FAIL", c.id, c.name,
                v.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
