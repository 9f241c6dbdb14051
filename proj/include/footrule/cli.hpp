#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "footrule/csv.hpp"
#include "footrule/inference.hpp"
#include "footrule/mc_engine.hpp"
#include "footrule/rank_core.hpp"

namespace footrule::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitContinuity = 3;

/// Entry point of the `footrule` executable. `args` excludes the program
/// name. Never throws; every failure maps to an exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

void write_test_report_csv(const TestReport& report, std::ostream& os, const NumberFormat& fmt);
void write_exact_csv(const ExactNullDistribution& dist, std::ostream& os, const NumberFormat& fmt);
void write_moments_csv(const std::vector<MomentRow>& rows, std::ostream& os, const NumberFormat& fmt);
void write_ks_csv(const KsReport& report, std::ostream& os, const NumberFormat& fmt);
void write_density_csv(const CurveReport& report, std::ostream& os, const NumberFormat& fmt);
void write_cdf_csv(const CurveReport& report, std::ostream& os, const NumberFormat& fmt);

}  // namespace footrule::cli
