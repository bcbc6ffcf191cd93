#pragma once

namespace qcournot {

// Linear-demand duopoly market. The inverse demand is p = a - (q1 + q2),
// clamped at zero; both firms produce at constant unit cost c. Only the
// margin k = a - c enters equilibrium quantities and profits.
class MarketParams {
 public:
  // Requires finite inputs with a > c.
  MarketParams(double intercept, double unit_cost);

  // Convenience for the common zero-cost normalization: a = margin, c = 0.
  static MarketParams from_margin(double margin);

  double a() const noexcept { return a_; }
  double c() const noexcept { return c_; }
  double k() const noexcept { return a_ - c_; }

 private:
  double a_;
  double c_;
};

struct QuantityPair {
  double q1 = 0.0;
  double q2 = 0.0;

  double total() const noexcept { return q1 + q2; }
};

struct PayoffPair {
  double u1 = 0.0;
  double u2 = 0.0;

  double total() const noexcept { return u1 + u2; }
};

// Market price at the given total quantity, never below zero.
// total_quantity must be finite and >= 0.
double clamped_price(const MarketParams& market, double total_quantity);

// Profit of each firm at the given output pair: u_j = q_j * (p - c) with
// p the clamped price. Quantities must be finite and >= 0.
PayoffPair classical_payoffs(const MarketParams& market, const QuantityPair& q);

// Closed-form references for the unentangled game: the symmetric
// one-shot equilibrium, the joint-profit-maximizing split, and the
// total-profit ceiling no strategy pair can exceed.
struct ClassicalBenchmarks {
  QuantityPair nash_q;
  PayoffPair nash_u;
  QuantityPair cooperative_q;
  PayoffPair cooperative_u;
  double max_total_profit = 0.0;
};

ClassicalBenchmarks classical_benchmarks(const MarketParams& market);

}  // namespace qcournot
