#pragma once

#include <string>
#include <vector>

namespace rtm::checks {

struct CheckResult {
  int criterion = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

// Exact / deterministic criteria.
CheckResult moment_table_reproduction();   // 1
CheckResult gaussian_sandwich();           // 2
CheckResult trace_theorem_bounds_check();  // 3
CheckResult class_sums_check();            // 4
CheckResult bijection_check();             // 5
CheckResult sd_recursion_check();          // 6
CheckResult rainbow_gf_check();            // 7
CheckResult mp_law_check();                // 8
CheckResult variant_ensembles_check();     // 14

// Monte Carlo criteria (finite-size statistical proxies, fixed seeds).
CheckResult mc_lambda_max_check(int threads);         // 9
CheckResult mc_density_check(int threads);            // 10
CheckResult mc_cross_validation_check(int threads);   // 11
CheckResult smallest_eigenvalue_check(int threads);   // 12
CheckResult concentration_check(int threads);         // 13

std::vector<CheckResult> run_exact_checks();
std::vector<CheckResult> run_monte_carlo_checks(int threads);

}  // namespace rtm::checks
