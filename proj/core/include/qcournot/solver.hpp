#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "qcournot/game.hpp"
#include "qcournot/report.hpp"

// Equilibrium solvers that do not presuppose the closed form: an analytic
// best-response map, a 2x2 linear solve of the first-order conditions, a
// damped fixed-point iteration, and a brute-force deviation scan. They
// exist to confirm the closed form, so none of them may call it.
namespace qcournot::solver {

// Best response of one player as a function of the other's move, before
// the clamp at zero: x = intercept + slope * x_opp. The slope is always
// negative (moves are strategic substitutes) and the intercept positive.
struct BestResponseLine {
  double intercept = 0.0;
  double slope = 0.0;
};

BestResponseLine best_response_line(const EntangleParams& params,
                                    const MarketParams& market, int player);

// Clamped best response max(0, intercept + slope * x_opp).
// player is 1 or 2; x_opp must be finite and >= 0.
double best_response(const EntangleParams& params, const MarketParams& market,
                     int player, double x_opp);

// Unilateral-deviation audit of a candidate profile: for each player,
// scan a uniform grid of grid_points strategies over [0, k] plus that
// player's analytic best response, holding the other fixed. max_gain is
// the largest payoff improvement found (>= 0 since staying put gains 0);
// payoff ties within 1e-15 keep the smaller strategy value. player is 0
// when no deviation improves on the candidate.
struct DeviationCheck {
  double max_gain = 0.0;
  int player = 0;
  double best_deviation = 0.0;
};

DeviationCheck verify_equilibrium(const EntangleParams& params,
                                  const MarketParams& market,
                                  const StrategyProfile& candidate,
                                  int grid_points = 1001);

// Assembles the full report (quantities, price, payoffs, entanglement
// block, residuals) for a solved profile. deviation_grid_points > 0 runs
// verify_equilibrium and records its gain; 0 skips the scan.
EquilibriumReport make_equilibrium_report(const EntangleParams& params,
                                          const MarketParams& market,
                                          const StrategyProfile& x,
                                          SolveMethod method,
                                          int deviation_grid_points = 1001);

// Solves the two first-order conditions as a linear system with a pivoted
// LU factorization. Numerically independent of nash_closed_form; the two
// must agree to roundoff and the CLI cross-checks them on every call.
EquilibriumReport solve_nash_linear(const EntangleParams& params,
                                    const MarketParams& market,
                                    int deviation_grid_points = 1001);

struct IterationOptions {
  double damping = 1.0;   // in (0, 1]; 1 is the plain best-response map
  double tol = 1e-12;     // max-norm step size declaring convergence
  int max_iter = 10000;
  StrategyProfile start;  // defaults to the origin
};

struct IterationTrace {
  std::vector<StrategyProfile> iterates;  // includes the starting point
  bool converged = false;
  int iterations = 0;
};

class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, IterationTrace trace);

  const IterationTrace& trace() const noexcept { return trace_; }

 private:
  IterationTrace trace_;
};

// Damped simultaneous best-response iteration
//   x <- (1 - damping) x + damping BR(x).
// The best-response map is a contraction for every admissible parameter
// point (the product of the squared slopes stays below 1), so the
// undamped iteration already converges; damping only smooths the path.
// Throws NonConvergenceError with the trace attached if max_iter is hit.
IterationTrace iterate_best_response(const EntangleParams& params,
                                     const MarketParams& market,
                                     const IterationOptions& options = {});

}  // namespace qcournot::solver
