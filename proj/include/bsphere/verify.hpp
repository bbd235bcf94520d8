// Named verification suites bundling the library's end-to-end accuracy and
// consistency checks (kernel identity, asymptotic rates, coefficient fits,
// chart coverage, special-function cross-checks) behind a uniform pass/fail
// report used by the CLI and the acceptance gate.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bsphere/types.hpp"

namespace bsphere::verify {

/// One named check: `observed` compared against `threshold` under
/// `comparison` ("<=", ">=", or "in [lo,hi]" with the range in detail).
struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  double observed = 0.0;
  double threshold = 0.0;
  std::string comparison = "<=";
  std::string detail;
};

/// Optional overrides; zero / NaN / empty fields keep each suite's pinned
/// defaults.  Overrides apply only where they make sense for the suite
/// (e.g. `n` restricts multi-dimension suites to a single dimension).
struct VerifyOptions {
  int n = 0;
  double p = kUnsetP;
  double hbar = 0.0;
  std::vector<double> hbar_grid;
  std::uint64_t seed = 42;
  int nodes = 0;

  static constexpr double kUnsetP = -1.0e300;
  bool p_set() const { return p != kUnsetP; }
};

/// Suite keys in report order; the pseudo-suite "all" runs every entry.
const std::vector<std::string>& suite_names();

/// True when `name` is a valid suite key (including "all").
bool is_suite(const std::string& name);

/// Run one suite (or "all") and return its checks in a stable order.
std::vector<CheckResult> run_suite(const std::string& suite,
                                   const VerifyOptions& opt = {});

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace bsphere::verify
