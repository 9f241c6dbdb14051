#pragma once

#include <cstdint>
#include <string_view>

#include "footrule/rank_core.hpp"

namespace footrule {

enum class TestMethod { Exact, Normal };

std::string_view label(TestMethod m) noexcept;

struct TestReport {
  int n = 0;
  std::int64_t distance = 0;
  double phi = 0.0;
  /// sqrt(n) phi / sqrt(2/5)
  double z = 0.0;
  double p_two_sided = 1.0;
  TestMethod method = TestMethod::Normal;
};

/// Independence test based on the footrule coefficient.
///
/// Normal: p = 2 (1 - Phi(|z|)) from the N(0, 2/5) limit of sqrt(n) phi.
/// Exact:  p = P(|phi| >= |phi_obs|) under uniformly random permutations,
///         available for n <= kMaxEnumerationN. Larger samples silently use
///         the normal method; check `method` on the result.
TestReport independence_test(const PairedSample& sample, TestMethod requested);

}  // namespace footrule
