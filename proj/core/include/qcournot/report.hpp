#pragma once

#include "qcournot/entangle.hpp"
#include "qcournot/market.hpp"

namespace qcournot {

enum class SolveMethod { closed_form, linear_solve, iteration };

// Diagnostics attached to a solved equilibrium. foc_norm is the largest
// own-payoff gradient magnitude at the solution; max_deviation_gain is
// the best unilateral payoff improvement a grid scan over [0, k] plus the
// analytic best response could find (0 when the scan is skipped because
// no grid points were requested).
struct Residuals {
  double foc_norm = 0.0;
  double max_deviation_gain = 0.0;
  bool deviation_checked = false;
};

struct EquilibriumReport {
  StrategyProfile x_star;
  QuantityPair q_star;
  double price = 0.0;
  PayoffPair u_star;
  double u_total = 0.0;
  double eta = 0.0;
  double entropy = 0.0;
  double asymmetry = 0.0;
  SolveMethod method = SolveMethod::closed_form;
  Residuals residuals;
};

}  // namespace qcournot
