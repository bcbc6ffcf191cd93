#include "qcournot/solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace qcournot::solver {

namespace {

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) {
    throw std::domain_error(std::string(name) + " must be finite");
  }
}

struct GameCoeffs {
  double c;
  double s;
  double a1;
  double a2;
  double k;
};

GameCoeffs coeffs(const EntangleParams& params, const MarketParams& market) {
  game::TotalQuantityCoeffs ab = game::total_quantity_coeffs(params);
  return {std::cosh(params.gamma12()), std::sinh(params.gamma12()), ab.a1,
          ab.a2, market.k()};
}

double payoff_of(const EntangleParams& params, const MarketParams& market,
                 int player, const StrategyProfile& x) {
  PayoffPair u = game::quantum_payoffs(params, market, x);
  return player == 1 ? u.u1 : u.u2;
}

}  // namespace

BestResponseLine best_response_line(const EntangleParams& params,
                                    const MarketParams& market, int player) {
  if (player != 1 && player != 2) {
    throw std::invalid_argument("player must be 1 or 2");
  }
  GameCoeffs g = coeffs(params, market);
  // From d u_j / d x_j = 0 at fixed opponent move; own coefficient first.
  double own = (player == 1) ? g.a1 : g.a2;
  double other = (player == 1) ? g.a2 : g.a1;
  double cross = g.c * other + g.s * own;
  return {g.k / (2.0 * own), -cross / (2.0 * g.c * own)};
}

double best_response(const EntangleParams& params, const MarketParams& market,
                     int player, double x_opp) {
  require_finite(x_opp, "x_opp");
  if (x_opp < 0.0) {
    throw std::domain_error("x_opp must be >= 0");
  }
  BestResponseLine line = best_response_line(params, market, player);
  return std::max(0.0, line.intercept + line.slope * x_opp);
}

DeviationCheck verify_equilibrium(const EntangleParams& params,
                                  const MarketParams& market,
                                  const StrategyProfile& candidate,
                                  int grid_points) {
  if (grid_points < 2) {
    throw std::invalid_argument("grid_points must be >= 2");
  }
  double k = market.k();
  DeviationCheck best;
  std::vector<double> moves;
  moves.reserve(static_cast<std::size_t>(grid_points) + 1);
  for (int player : {1, 2}) {
    double base = payoff_of(params, market, player, candidate);
    double opp = (player == 1) ? candidate.x2 : candidate.x1;
    moves.clear();
    for (int i = 0; i < grid_points; ++i) {
      moves.push_back(k * i / (grid_points - 1));
    }
    // The payoff is concave in the own move, so the analytic best response
    // dominates every off-grid point; adding it makes the scan exact even
    // when the response lies outside [0, k].
    moves.push_back(best_response(params, market, player, opp));
    std::sort(moves.begin(), moves.end());
    for (double move : moves) {
      StrategyProfile trial = candidate;
      (player == 1 ? trial.x1 : trial.x2) = move;
      double gain = payoff_of(params, market, player, trial) - base;
      // Strict improvement by more than 1e-15 so payoff ties keep the
      // smaller strategy value (and the earlier player).
      if (gain > best.max_gain + 1e-15) {
        best = {gain, player, move};
      }
    }
  }
  return best;
}

EquilibriumReport make_equilibrium_report(const EntangleParams& params,
                                          const MarketParams& market,
                                          const StrategyProfile& x,
                                          SolveMethod method,
                                          int deviation_grid_points) {
  EquilibriumReport report;
  report.x_star = x;
  report.q_star = game::quantities(params, x);
  report.price = clamped_price(market, report.q_star.total());
  report.u_star = game::quantum_payoffs(params, market, x);
  report.u_total = report.u_star.total();
  game::EntropyReport ent =
      game::eta_and_entropy(params.gamma12(), params.dgamma());
  report.eta = ent.eta;
  report.entropy = ent.entropy;
  report.asymmetry = game::asymmetry_closed_form(params);
  report.method = method;
  std::array<double, 2> grad = game::own_payoff_gradient(params, market, x);
  report.residuals.foc_norm = std::max(std::abs(grad[0]), std::abs(grad[1]));
  if (deviation_grid_points > 0) {
    DeviationCheck dev =
        verify_equilibrium(params, market, x, deviation_grid_points);
    report.residuals.max_deviation_gain = dev.max_gain;
    report.residuals.deviation_checked = true;
  }
  return report;
}

EquilibriumReport solve_nash_linear(const EntangleParams& params,
                                    const MarketParams& market,
                                    int deviation_grid_points) {
  GameCoeffs g = coeffs(params, market);
  Eigen::Matrix2d m;
  m << 2.0 * g.c * g.a1, g.c * g.a2 + g.s * g.a1,
       g.c * g.a1 + g.s * g.a2, 2.0 * g.c * g.a2;
  Eigen::Vector2d rhs(g.c * g.k, g.c * g.k);
  double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  double scale = m.cwiseAbs().maxCoeff();
  // Unreachable for admissible parameters (the determinant is bounded
  // below by 3 in well-scaled form); guards corrupted inputs.
  if (std::abs(det) <= 1e-12 * std::max(1.0, scale * scale)) {
    throw std::runtime_error("first-order condition system is singular");
  }
  Eigen::Vector2d x = m.partialPivLu().solve(rhs);
  if (!std::isfinite(x(0)) || !std::isfinite(x(1)) || x(0) < 0.0 ||
      x(1) < 0.0) {
    throw std::runtime_error(
        "linear equilibrium solve overflowed; parameters are outside the"
        " representable range");
  }
  return make_equilibrium_report(params, market, {x(0), x(1)},
                                 SolveMethod::linear_solve,
                                 deviation_grid_points);
}

NonConvergenceError::NonConvergenceError(const std::string& what,
                                         IterationTrace trace)
    : std::runtime_error(what), trace_(std::move(trace)) {}

IterationTrace iterate_best_response(const EntangleParams& params,
                                     const MarketParams& market,
                                     const IterationOptions& options) {
  if (!(options.damping > 0.0) || !(options.damping <= 1.0) ||
      !std::isfinite(options.damping)) {
    throw std::invalid_argument("damping must lie in (0, 1]");
  }
  if (!(options.tol > 0.0) || !std::isfinite(options.tol)) {
    throw std::invalid_argument("tol must be > 0");
  }
  if (options.max_iter < 1) {
    throw std::invalid_argument("max_iter must be >= 1");
  }
  if (!std::isfinite(options.start.x1) || !std::isfinite(options.start.x2) ||
      options.start.x1 < 0.0 || options.start.x2 < 0.0) {
    throw std::invalid_argument("start must be finite and >= 0");
  }
  IterationTrace trace;
  trace.iterates.push_back(options.start);
  StrategyProfile x = options.start;
  double d = options.damping;
  for (int it = 1; it <= options.max_iter; ++it) {
    double b1 = best_response(params, market, 1, x.x2);
    double b2 = best_response(params, market, 2, x.x1);
    StrategyProfile next{(1.0 - d) * x.x1 + d * b1,
                         (1.0 - d) * x.x2 + d * b2};
    double step = std::max(std::abs(next.x1 - x.x1), std::abs(next.x2 - x.x2));
    x = next;
    trace.iterates.push_back(x);
    trace.iterations = it;
    if (step < options.tol) {
      trace.converged = true;
      break;
    }
  }
  if (!trace.converged) {
    throw NonConvergenceError(
        "best-response iteration did not converge within max_iter steps",
        std::move(trace));
  }
  return trace;
}

}  // namespace qcournot::solver
