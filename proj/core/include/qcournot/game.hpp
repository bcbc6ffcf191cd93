#pragma once

#include <array>

#include "qcournot/entangle.hpp"
#include "qcournot/market.hpp"

// Strategic layer of the entangled duopoly. With c = cosh(gamma12) and
// s = sinh(gamma12), measuring the final state maps a strategy pair onto
// outputs
//   q1 = exp(gamma1) (x1 c + x2 s),   q2 = exp(gamma2) (x2 c + x1 s),
// so each firm's quantity mixes both moves once gamma12 > 0. Payoffs are
// the classical profits evaluated at these quantities.
namespace qcournot::game {

// Coefficients (A, B) of the total quantity Q = A x1 + B x2:
//   A = exp(gamma1) c + exp(gamma2) s,   B = exp(gamma2) c + exp(gamma1) s.
// Both are strictly positive.
struct TotalQuantityCoeffs {
  double a1 = 0.0;
  double a2 = 0.0;
};

TotalQuantityCoeffs total_quantity_coeffs(const EntangleParams& params);

// Expected output pair at the given strategies. Strategies must be finite
// and >= 0; outputs are then >= 0 as well.
QuantityPair quantities(const EntangleParams& params,
                        const StrategyProfile& x);

// Profit of each firm at the given strategies: the classical payoff of
// the induced quantities, price clamp included.
PayoffPair quantum_payoffs(const EntangleParams& params,
                           const MarketParams& market,
                           const StrategyProfile& x);

// Derivative of each player's own payoff with respect to their own
// strategy, on the unclamped branch of the price:
//   d u1/d x1 = exp(gamma1) [c k - 2 c A x1 - (c B + s A) x2],
//   d u2/d x2 = exp(gamma2) [c k - 2 c B x2 - (c A + s B) x1].
// Both vanish exactly at the interior equilibrium.
std::array<double, 2> own_payoff_gradient(const EntangleParams& params,
                                          const MarketParams& market,
                                          const StrategyProfile& x);

// Which closed-form equilibrium expression to evaluate.
//
// corrected: denominator (e^{2 gamma1} + e^{2 gamma2}) sinh(2 gamma12)
//   + e^{gamma1 + gamma2} (2 cosh(2 gamma12) + 1); the unique solution of
//   both first-order conditions for every admissible parameter point.
// as_printed: a published variant whose denominator carries first-power
//   exponentials in the leading term. It coincides with `corrected` when
//   gamma1 = gamma2 = 0 or gamma12 = 0 and violates the first-order
//   conditions at generic parameters otherwise. Kept so the verification
//   suite can exhibit the defect; never used by the solver or the sweep
//   pipeline.
enum class EquilibriumFormula { corrected, as_printed };

// Closed-form equilibrium strategies. With dg = gamma1 - gamma2,
// the corrected form reads
//   x_j = k cosh(gamma12) exp(-gamma_j) / D,
//   D = 1 + 2 cosh(2 gamma12) + 2 cosh(dg) sinh(2 gamma12).
StrategyProfile nash_closed_form(
    const EntangleParams& params, const MarketParams& market,
    EquilibriumFormula formula = EquilibriumFormula::corrected);

// Equilibrium profits from (gamma12, dgamma) alone. With c = cosh(gamma12),
// s = sinh(gamma12) and D as above:
//   u1 = c (c + s e^{dg})^2 (c + s e^{-dg}) k^2 / D^2,
//   u2 = c (c + s e^{-dg})^2 (c + s e^{dg}) k^2 / D^2.
// Agrees with quantum_payoffs at nash_closed_form for every split of
// dgamma; exceeding k^2/4 in total is impossible.
PayoffPair equilibrium_profits(double gamma12, double dgamma, double k);

// Entanglement measure of the pre-measurement state. eta determines the
// reduced symplectic eigenvalue nu = sqrt(eta^2 + 1)/2 and through it the
// von Neumann entropy; eta = sinh(2 gamma12) cosh(dgamma).
struct EntropyReport {
  double eta = 0.0;
  double nu = 0.0;
  double entropy = 0.0;
};

EntropyReport eta_and_entropy(double gamma12, double dgamma);

// Logarithmic form S = ln(eta/2) + sqrt(eta^2+1)/2 ln[...] of the same
// entropy, for eta > 0. Algebraically identical to the nu route; kept as
// an independent cross-check. Returns 0 at eta = 0 (the removable limit).
double entropy_eta_form(double eta);

// Two-mode-squeezed special case cosh^2 ln cosh^2 - sinh^2 ln sinh^2,
// valid only at dgamma = 0. Cross-check companion to entropy_eta_form.
double entropy_symmetric_form(double gamma12);

// Normalized X-variance imbalance of the entangled vacuum,
//   (var X1 - var X2) / (var X1 + var X2) = -tanh(dgamma)/cosh(2 gamma12).
// Zero iff gamma1 = gamma2; bounded by 1 in magnitude.
double asymmetry_closed_form(const EntangleParams& params);

// Inverse of the entropy map at fixed dgamma: the unique gamma12 >= 0
// with entropy(gamma12, dgamma) = entropy_target. Monotone bisection on
// eta; round-trips to 1e-9. entropy_target must be >= 0 and reachable in
// double precision, else std::domain_error.
double gamma12_for_entropy(double entropy_target, double dgamma);

}  // namespace qcournot::game
