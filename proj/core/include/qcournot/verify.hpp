#pragma once

#include <string>
#include <vector>

// Cross-oracle verification suite. Every closed-form claim the library
// makes is checked here against a route that does not share code with it:
// phase-space simulation against algebraic formulas, grid-scanned
// deviations against solved equilibria, independent entropy expressions
// against each other. The CLI `verify` subcommand is a thin printer over
// run_all_checks.
namespace qcournot::verify {

// One named check. Passing means residual <= threshold; for checks that
// demonstrate a defect or a lower bound, the residual is constructed so
// the same rule applies (e.g. bound minus measured value).
struct CheckResult {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string detail;  // extra context, empty when the name says it all
};

struct Options {
  // Grid size for unilateral-deviation scans.
  int deviation_grid_points = 1001;
  // Multiplies every threshold; > 1 loosens, < 1 tightens. Residuals are
  // reported unchanged either way.
  double tol_scale = 1.0;
};

std::vector<CheckResult> run_all_checks(const Options& options = {});

bool all_passed(const std::vector<CheckResult>& checks);

}  // namespace qcournot::verify
