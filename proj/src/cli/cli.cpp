#include "footrule/cli.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "footrule/error.hpp"

namespace footrule::cli {
namespace {

struct SimFlags {
  std::uint64_t seed = 42;
  std::optional<std::size_t> reps;
  std::vector<int> n_list;
  std::string out;
  unsigned threads = 1;
  bool full_precision = false;
  bool normal_marginals = false;
  std::size_t grid_size = kDefaultGridSize;
  std::vector<std::string> statistics;
};

void add_sim_flags(CLI::App* cmd, SimFlags& f) {
  cmd->add_option("--seed", f.seed, "Base seed")->capture_default_str();
  cmd->add_option("--reps", f.reps, "Replications per (statistic, n)");
  cmd->add_option("--n-list", f.n_list, "Comma-separated sample sizes")->delimiter(',');
  cmd->add_option("--out", f.out, "Output path");
  cmd->add_option("--threads", f.threads, "Worker threads (output does not depend on it)")
      ->envname("FOOTRULE_THREADS")
      ->check(CLI::Range(1u, 1024u));
  cmd->add_flag("--full-precision", f.full_precision, "Shortest round-trip decimals");
  cmd->add_flag("--normal-marginals", f.normal_marginals,
                "Draw phi from normal X and uniform Y instead of two uniform margins");
}

std::vector<int> default_n_list() { return {10, 20, 30, 40, 50, 60, 70, 80, 90, 100}; }

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<Statistic> parse_statistics(const std::vector<std::string>& names) {
  if (names.empty()) return {kAllStatistics.begin(), kAllStatistics.end()};
  std::vector<Statistic> out;
  for (const auto& name : names) {
    auto s = parse_statistic(name);
    if (!s) throw UsageError("unknown statistic '" + name + "' (expected phi, phiprime or phidprime)");
    out.push_back(*s);
  }
  return out;
}

void validate_sizes(const std::vector<int>& sizes) {
  if (sizes.empty()) throw UsageError("--n-list must not be empty");
  for (int n : sizes) {
    if (n < 2) throw UsageError("sample sizes must be >= 2, got " + std::to_string(n));
  }
}

// Writes through a temp file when a path is given, otherwise to `out`.
template <class WriteFn>
void emit(const std::string& path, std::ostream& out, WriteFn&& write) {
  if (path.empty() || path == "-") {
    write(out);
    return;
  }
  AtomicFile file(path);
  write(file.stream());
  file.commit();
}

int cmd_stat(const std::string& input, bool header, bool exact, const std::string& csv_out,
             const NumberFormat& fmt, std::ostream& out, std::ostream& err) {
  std::ifstream in(input);
  if (!in) {
    err << "error: cannot open " << input << "\n";
    return kExitUsage;
  }
  TwoColumnData data;
  try {
    data = read_two_column_csv(in, header);
  } catch (const CsvParseError& e) {
    err << "error: " << input << ": " << e.what() << "\n";
    return kExitUsage;
  }
  if (data.x.size() < 2) {
    err << "error: need at least 2 data rows, got " << data.x.size() << "\n";
    return kExitUsage;
  }
  // name the offending rows before the library reports bare indices
  for (int col = 0; col < 2; ++col) {
    const auto& values = col == 0 ? data.x : data.y;
    try {
      (void)compute_ranks(values);
    } catch (const Error& e) {
      if (e.code() != Errc::TiesPresent || !e.index()) throw;
      const std::size_t second = *e.index();
      const auto first = static_cast<std::size_t>(
          std::find(values.begin(), values.end(), values[second]) - values.begin());
      err << "error: tied " << (col == 0 ? "x" : "y") << " values on lines " << data.lines[first]
          << " and " << data.lines[second]
          << "; the footrule null theory assumes continuous data without ties\n";
      return kExitContinuity;
    }
  }
  const TestReport report = independence_test(PairedSample(data.x, data.y),
                                              exact ? TestMethod::Exact : TestMethod::Normal);
  if (exact && report.method != TestMethod::Exact) {
    err << "note: n = " << report.n << " exceeds the enumeration limit " << kMaxEnumerationN
        << "; using the normal approximation\n";
  }
  out << "n: " << report.n << "\n"
      << "distance: " << report.distance << "\n"
      << "phi: " << fmt(report.phi) << "\n"
      << "z: " << fmt(report.z) << "\n"
      << "p_value: " << fmt(report.p_two_sided) << "\n"
      << "method: " << label(report.method) << "\n";
  if (!csv_out.empty()) {
    emit(csv_out, out, [&](std::ostream& os) { write_test_report_csv(report, os, fmt); });
  }
  return kExitOk;
}

}  // namespace

void write_test_report_csv(const TestReport& report, std::ostream& os, const NumberFormat& fmt) {
  os << "n,distance,phi,z,p_value,method\n"
     << report.n << ',' << report.distance << ',' << fmt(report.phi) << ',' << fmt(report.z) << ','
     << fmt(report.p_two_sided) << ',' << label(report.method) << '\n';
}

void write_exact_csv(const ExactNullDistribution& dist, std::ostream& os, const NumberFormat& fmt) {
  os << "d,count,phi,probability\n";
  for (const auto& [d, c] : dist.counts()) {
    os << d << ',' << c << ',' << fmt(footrule_phi(dist.n(), d)) << ','
       << fmt(static_cast<double>(c) / static_cast<double>(dist.total())) << '\n';
  }
}

void write_moments_csv(const std::vector<MomentRow>& rows, std::ostream& os,
                       const NumberFormat& fmt) {
  os << "statistic,n,em,ev,bias,rmse\n";
  for (const auto& r : rows) {
    os << label(r.statistic) << ',' << r.n << ',' << fmt(r.summary.em) << ',' << fmt(r.summary.ev)
       << ',' << fmt(r.summary.bias) << ',' << fmt(r.summary.rmse) << '\n';
  }
}

void write_ks_csv(const KsReport& report, std::ostream& os, const NumberFormat& fmt) {
  os << "n,combination,ks_stat,p_value\n";
  for (const auto& r : report.rows) {
    os << r.n << ',' << label(r.combination) << ',' << fmt(r.outcome.statistic) << ','
       << fmt(r.outcome.p_value) << '\n';
  }
}

void write_density_csv(const CurveReport& report, std::ostream& os, const NumberFormat& fmt) {
  os << "statistic,n,grid,density,normal_density\n";
  for (const auto& set : report.sets) {
    for (std::size_t i = 0; i < set.density.grid.size(); ++i) {
      os << label(set.statistic) << ',' << set.n << ',' << fmt(set.density.grid[i]) << ','
         << fmt(set.density.values[i]) << ',' << fmt(set.normal_density[i]) << '\n';
    }
  }
}

void write_cdf_csv(const CurveReport& report, std::ostream& os, const NumberFormat& fmt) {
  os << "statistic,n,grid,cdf,normal_cdf\n";
  for (const auto& set : report.sets) {
    for (std::size_t i = 0; i < set.cdf.grid.size(); ++i) {
      os << label(set.statistic) << ',' << set.n << ',' << fmt(set.cdf.grid[i]) << ','
         << fmt(set.cdf.values[i]) << ',' << fmt(set.normal_cdf[i]) << '\n';
    }
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spearman's footrule: statistic, exact null law and simulation studies",
               "footrule"};
  app.require_subcommand(1);

  std::string stat_input;
  std::string stat_csv;
  bool stat_header = false;
  bool stat_exact = false;
  bool stat_full = false;
  auto* stat = app.add_subcommand("stat", "Footrule coefficient and independence test of a CSV");
  stat->add_option("input", stat_input, "Two-column CSV of reals")->required();
  stat->add_flag("--header", stat_header, "Skip the first non-empty line");
  stat->add_flag("--exact", stat_exact, "Exact permutation p-value (n <= 10)");
  stat->add_option("--csv", stat_csv, "Also write the report as CSV");
  stat->add_flag("--full-precision", stat_full, "Shortest round-trip decimals");

  int exact_n = 0;
  std::string exact_out;
  unsigned exact_threads = 1;
  bool exact_fixed = false;
  auto* exact = app.add_subcommand("exact", "Exact null distribution of the footrule distance");
  exact->add_option("n", exact_n, "Sample size, 2..10")->required();
  exact->add_option("--out", exact_out, "Output CSV (default: stdout)");
  exact->add_option("--threads", exact_threads, "Worker threads")
      ->envname("FOOTRULE_THREADS")
      ->check(CLI::Range(1u, 1024u));
  exact->add_flag("--fixed", exact_fixed, "5-decimal formatting instead of round-trip decimals");

  auto* sim = app.add_subcommand("simulate", "Seeded Monte Carlo studies");
  sim->require_subcommand(1);
  SimFlags mom_flags;
  auto* moments = sim->add_subcommand("moments", "EM, EV, bias and RMSE per statistic and n");
  add_sim_flags(moments, mom_flags);
  moments->add_option("--statistics", mom_flags.statistics, "Subset of phi,phiprime,phidprime")
      ->delimiter(',');
  SimFlags ks_flags;
  auto* kstest = sim->add_subcommand("kstest", "KS p-values for the six combinations");
  add_sim_flags(kstest, ks_flags);
  SimFlags curve_flags;
  auto* curves = sim->add_subcommand("curves", "KDE and ECDF curves of sqrt(n)-scaled draws");
  add_sim_flags(curves, curve_flags);
  curves->add_option("--grid-size", curve_flags.grid_size, "KDE grid points")
      ->capture_default_str()
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (stat->parsed()) {
      return cmd_stat(stat_input, stat_header, stat_exact, stat_csv, NumberFormat{stat_full},
                      out, err);
    }
    if (exact->parsed()) {
      if (exact_n < 2 || exact_n > kMaxEnumerationN) {
        err << "error: n must be in [2, " << kMaxEnumerationN << "], got " << exact_n << "\n";
        return kExitUsage;
      }
      const auto dist = enumerate_null_distribution(exact_n, exact_threads);
      emit(exact_out, out, [&](std::ostream& os) {
        write_exact_csv(dist, os, NumberFormat{!exact_fixed});
      });
      return kExitOk;
    }
    if (moments->parsed()) {
      auto& f = mom_flags;
      if (f.n_list.empty()) f.n_list = default_n_list();
      validate_sizes(f.n_list);
      const std::size_t reps = f.reps.value_or(10'000);
      if (reps < 2) throw UsageError("--reps must be >= 2 for moments");
      const auto stats = parse_statistics(f.statistics);
      std::vector<MomentRow> rows;
      std::uint64_t redraws = 0;
      for (Statistic s : stats) {
        SimConfig cfg;
        cfg.seed = f.seed;
        cfg.replications = reps;
        cfg.sample_sizes = f.n_list;
        cfg.statistic = s;
        cfg.normal_marginals = f.normal_marginals;
        cfg.threads = f.threads;
        auto report = run_moment_study(cfg);
        rows.insert(rows.end(), report.rows.begin(), report.rows.end());
        redraws += report.redraws;
      }
      emit(f.out, out, [&](std::ostream& os) { write_moments_csv(rows, os, NumberFormat{f.full_precision}); });
      if (redraws != 0) err << "note: " << redraws << " replications redrawn because of ties\n";
      return kExitOk;
    }
    if (kstest->parsed()) {
      auto& f = ks_flags;
      if (f.n_list.empty()) f.n_list = default_n_list();
      validate_sizes(f.n_list);
      KsStudyConfig cfg;
      cfg.seed = f.seed;
      cfg.draws = f.reps.value_or(1000);
      if (cfg.draws < 2) throw UsageError("--reps must be >= 2 for kstest");
      cfg.sample_sizes = f.n_list;
      cfg.normal_marginals = f.normal_marginals;
      cfg.threads = f.threads;
      const auto report = run_ks_study(cfg);
      emit(f.out, out, [&](std::ostream& os) { write_ks_csv(report, os, NumberFormat{f.full_precision}); });
      if (report.redraws != 0) {
        err << "note: " << report.redraws << " replications redrawn because of ties\n";
      }
      return kExitOk;
    }
    if (curves->parsed()) {
      auto& f = curve_flags;
      if (f.n_list.empty()) f.n_list = {10, 20, 30, 100};
      validate_sizes(f.n_list);
      if (f.out.empty() || f.out == "-") {
        throw UsageError("curves writes two files; give --out PREFIX");
      }
      CurveConfig cfg;
      cfg.seed = f.seed;
      cfg.replications = f.reps.value_or(100'000);
      if (cfg.replications < 2) throw UsageError("--reps must be >= 2 for curves");
      cfg.sample_sizes = f.n_list;
      cfg.grid_size = f.grid_size;
      cfg.normal_marginals = f.normal_marginals;
      cfg.threads = f.threads;
      const auto report = run_curve_study(cfg);
      const NumberFormat fmt{f.full_precision};
      // both files appear together or not at all
      AtomicFile density(f.out + "_density.csv");
      AtomicFile cdf(f.out + "_cdf.csv");
      write_density_csv(report, density.stream(), fmt);
      write_cdf_csv(report, cdf.stream(), fmt);
      density.commit();
      cdf.commit();
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == Errc::TiesPresent ? kExitContinuity : kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  err << "error: no command\n";
  return kExitUsage;
}

}  // namespace footrule::cli
