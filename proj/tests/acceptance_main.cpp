// Acceptance gate: runs every verification suite and prints exactly one
// PASS/FAIL line per criterion (AC-1 .. AC-10).  Tolerances are pinned
// inside the suites; a failing criterion lists its failing checks and the
// process exits nonzero.
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "bsphere/verify.hpp"

namespace {

struct Criterion {
  const char* id;
  const char* suite;
  const char* what;
};

constexpr Criterion kCriteria[] = {
    {"AC-1", "kernel-identity",
     "quadrature coherent-state inner products match the closed kernel"},
    {"AC-2", "norm-asymptotic",
     "two-term norm expansion remainder decays at second order"},
    {"AC-3", "g-coefficient",
     "fitted large-argument 1/z coefficient matches the assembled value"},
    {"AC-4", "corollary",
     "monomial covariant symbols match the Bessel-ratio closed form"},
    {"AC-5", "expansion",
     "first-order symbol expansion holds on the smooth corpus"},
    {"AC-6", "stationary-phase",
     "localized phase-integral remainder decays at second order"},
    {"AC-7", "egorov",
     "assembled-operator covariant symbols converge to principal symbols"},
    {"AC-8", "parseval",
     "coherent transform preserves monomial inner products"},
    {"AC-9", "cover", "chart atlas covers uniform samples with reassignment"},
    {"AC-10", "bessel",
     "Bessel series/asymptotic handoff and recurrence consistency"},
};

}  // namespace

int main() {
  int failures = 0;
  for (const auto& c : kCriteria) {
    std::vector<bsphere::verify::CheckResult> results;
    std::string error;
    try {
      results = bsphere::verify::run_suite(c.suite);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const bool ok = error.empty() && bsphere::verify::all_passed(results);
    std::printf("%-5s %s  %s: %s (%zu checks)\n", c.id,
                ok ? "PASS" : "FAIL", c.suite, c.what, results.size());
    if (!ok) {
      ++failures;
      if (!error.empty()) std::printf("      error: %s\n", error.c_str());
      for (const auto& r : results) {
        if (r.passed) continue;
        std::printf("      failed: %s (observed %.6g, needs %s %.6g) %s\n",
                    r.name.c_str(), r.observed, r.comparison.c_str(),
                    r.threshold, r.detail.c_str());
      }
    }
    std::fflush(stdout);
  }
  if (failures > 0) {
    std::printf("acceptance: %d of %zu criteria failed\n", failures,
                std::size(kCriteria));
    return 1;
  }
  std::printf("acceptance: all %zu criteria passed\n", std::size(kCriteria));
  return 0;
}
