#include "qcournot/game.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "qcournot/gaussian.hpp"

namespace qcournot::game {

namespace {

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) {
    throw std::domain_error(std::string(name) + " must be finite");
  }
}

void require_strategies(const StrategyProfile& x) {
  require_finite(x.x1, "x1");
  require_finite(x.x2, "x2");
  if (x.x1 < 0.0 || x.x2 < 0.0) {
    throw std::domain_error("strategies must be >= 0");
  }
}

}  // namespace

TotalQuantityCoeffs total_quantity_coeffs(const EntangleParams& params) {
  double c = std::cosh(params.gamma12());
  double s = std::sinh(params.gamma12());
  double e1 = std::exp(params.gamma1());
  double e2 = std::exp(params.gamma2());
  return {e1 * c + e2 * s, e2 * c + e1 * s};
}

QuantityPair quantities(const EntangleParams& params,
                        const StrategyProfile& x) {
  require_strategies(x);
  double c = std::cosh(params.gamma12());
  double s = std::sinh(params.gamma12());
  double q1 = std::exp(params.gamma1()) * (x.x1 * c + x.x2 * s);
  double q2 = std::exp(params.gamma2()) * (x.x2 * c + x.x1 * s);
  return {q1, q2};
}

PayoffPair quantum_payoffs(const EntangleParams& params,
                           const MarketParams& market,
                           const StrategyProfile& x) {
  return classical_payoffs(market, quantities(params, x));
}

std::array<double, 2> own_payoff_gradient(const EntangleParams& params,
                                          const MarketParams& market,
                                          const StrategyProfile& x) {
  require_strategies(x);
  double c = std::cosh(params.gamma12());
  double s = std::sinh(params.gamma12());
  TotalQuantityCoeffs ab = total_quantity_coeffs(params);
  double k = market.k();
  double g1 = std::exp(params.gamma1()) *
              (c * k - 2.0 * c * ab.a1 * x.x1 - (c * ab.a2 + s * ab.a1) * x.x2);
  double g2 = std::exp(params.gamma2()) *
              (c * k - 2.0 * c * ab.a2 * x.x2 - (c * ab.a1 + s * ab.a2) * x.x1);
  return {g1, g2};
}

StrategyProfile nash_closed_form(const EntangleParams& params,
                                 const MarketParams& market,
                                 EquilibriumFormula formula) {
  double c = std::cosh(params.gamma12());
  double s2 = std::sinh(2.0 * params.gamma12());
  double dg = params.dgamma();
  double k = market.k();
  // Both variants are evaluated with numerator and denominator divided by
  // exp(gamma1 + gamma2), which cancels the common growth and keeps the
  // quotient well scaled for strongly asymmetric parameters.
  double denom;
  if (formula == EquilibriumFormula::corrected) {
    denom = 1.0 + 2.0 * std::cosh(2.0 * params.gamma12()) +
            2.0 * std::cosh(dg) * s2;
  } else {
    denom = 1.0 + 2.0 * std::cosh(2.0 * params.gamma12()) +
            (std::exp(-params.gamma1()) + std::exp(-params.gamma2())) * s2;
  }
  return {k * c * std::exp(-params.gamma1()) / denom,
          k * c * std::exp(-params.gamma2()) / denom};
}

PayoffPair equilibrium_profits(double gamma12, double dgamma, double k) {
  require_finite(gamma12, "gamma12");
  require_finite(dgamma, "dgamma");
  require_finite(k, "k");
  if (gamma12 < 0.0) throw std::domain_error("gamma12 must be >= 0");
  if (k <= 0.0) throw std::domain_error("k must be > 0");
  double c = std::cosh(gamma12);
  double s = std::sinh(gamma12);
  double denom = 1.0 + 2.0 * std::cosh(2.0 * gamma12) +
                 2.0 * std::cosh(dgamma) * std::sinh(2.0 * gamma12);
  double f1 = c + s * std::exp(dgamma);
  double f2 = c + s * std::exp(-dgamma);
  double scale = k * k / (denom * denom);
  return {c * f1 * f1 * f2 * scale, c * f2 * f2 * f1 * scale};
}

EntropyReport eta_and_entropy(double gamma12, double dgamma) {
  require_finite(gamma12, "gamma12");
  require_finite(dgamma, "dgamma");
  if (gamma12 < 0.0) throw std::domain_error("gamma12 must be >= 0");
  EntropyReport r;
  r.eta = std::sinh(2.0 * gamma12) * std::cosh(dgamma);
  r.nu = std::hypot(r.eta, 1.0) / 2.0;
  r.entropy = std::isfinite(r.nu)
                  ? gaussian::vn_entropy_from_nu(r.nu)
                  : std::numeric_limits<double>::infinity();
  return r;
}

double entropy_eta_form(double eta) {
  require_finite(eta, "eta");
  if (eta < 0.0) throw std::domain_error("eta must be >= 0");
  if (eta == 0.0) return 0.0;
  double t = std::hypot(eta, 1.0);
  return std::log(eta / 2.0) + 0.5 * t * std::log((t + 1.0) / (t - 1.0));
}

double entropy_symmetric_form(double gamma12) {
  require_finite(gamma12, "gamma12");
  if (gamma12 < 0.0) throw std::domain_error("gamma12 must be >= 0");
  double c2 = std::cosh(gamma12) * std::cosh(gamma12);
  double s2 = std::sinh(gamma12) * std::sinh(gamma12);
  if (s2 == 0.0) return 0.0;
  return c2 * std::log(c2) - s2 * std::log(s2);
}

double asymmetry_closed_form(const EntangleParams& params) {
  return -std::tanh(params.dgamma()) / std::cosh(2.0 * params.gamma12());
}

double gamma12_for_entropy(double entropy_target, double dgamma) {
  require_finite(entropy_target, "entropy_target");
  require_finite(dgamma, "dgamma");
  if (entropy_target < 0.0) {
    throw std::domain_error("entropy_target must be >= 0");
  }
  if (entropy_target == 0.0) return 0.0;
  auto entropy_at = [](double eta) {
    return gaussian::vn_entropy_from_nu(std::hypot(eta, 1.0) / 2.0);
  };
  // The entropy is strictly increasing in eta, so bracket the target by
  // doubling and bisect on eta, then undo eta = sinh(2 gamma12) cosh(dgamma).
  double hi = 1.0;
  while (entropy_at(hi) < entropy_target) {
    hi *= 2.0;
    if (hi > 1e300) {
      throw std::domain_error(
          "entropy_target exceeds the range representable in double");
    }
  }
  double lo = hi > 1.0 ? hi / 2.0 : 0.0;
  for (int i = 0; i < 200 && (hi - lo) > 1e-16 * hi; ++i) {
    double mid = 0.5 * (lo + hi);
    (entropy_at(mid) < entropy_target ? lo : hi) = mid;
  }
  double eta = 0.5 * (lo + hi);
  return 0.5 * std::asinh(eta / std::cosh(dgamma));
}

}  // namespace qcournot::game
