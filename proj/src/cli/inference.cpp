#include "footrule/inference.hpp"

#include <cmath>
#include <numbers>

#include "footrule/moments.hpp"

namespace footrule {

std::string_view label(TestMethod m) noexcept {
  return m == TestMethod::Exact ? "exact" : "normal";
}

TestReport independence_test(const PairedSample& sample, TestMethod requested) {
  const FootruleResult fr = footrule_coefficient(sample);
  TestReport report;
  report.n = fr.n;
  report.distance = fr.distance;
  report.phi = fr.phi;
  report.z = std::sqrt(static_cast<double>(fr.n)) * fr.phi / std::sqrt(limiting_variance());
  if (requested == TestMethod::Exact && fr.n <= kMaxEnumerationN) {
    report.method = TestMethod::Exact;
    report.p_two_sided = enumerate_null_distribution(fr.n).two_sided_p(fr.distance);
  } else {
    report.method = TestMethod::Normal;
    report.p_two_sided = std::erfc(std::abs(report.z) / std::numbers::sqrt2);
  }
  return report;
}

}  // namespace footrule
