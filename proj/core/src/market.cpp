#include "qcournot/market.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qcournot {

namespace {

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) {
    throw std::domain_error(std::string(name) + " must be finite");
  }
}

}  // namespace

MarketParams::MarketParams(double intercept, double unit_cost)
    : a_(intercept), c_(unit_cost) {
  require_finite(intercept, "intercept");
  require_finite(unit_cost, "unit_cost");
  if (!(intercept > unit_cost)) {
    throw std::domain_error("market margin k = a - c must be positive");
  }
}

MarketParams MarketParams::from_margin(double margin) {
  return MarketParams(margin, 0.0);
}

double clamped_price(const MarketParams& market, double total_quantity) {
  require_finite(total_quantity, "total_quantity");
  if (total_quantity < 0.0) {
    throw std::domain_error("total_quantity must be >= 0");
  }
  double p = market.a() - total_quantity;
  return p > 0.0 ? p : 0.0;
}

PayoffPair classical_payoffs(const MarketParams& market,
                             const QuantityPair& q) {
  require_finite(q.q1, "q1");
  require_finite(q.q2, "q2");
  if (q.q1 < 0.0 || q.q2 < 0.0) {
    throw std::domain_error("quantities must be >= 0");
  }
  double margin = clamped_price(market, q.total()) - market.c();
  return {q.q1 * margin, q.q2 * margin};
}

ClassicalBenchmarks classical_benchmarks(const MarketParams& market) {
  double k = market.k();
  ClassicalBenchmarks b;
  b.nash_q = {k / 3.0, k / 3.0};
  b.nash_u = {k * k / 9.0, k * k / 9.0};
  b.cooperative_q = {k / 4.0, k / 4.0};
  b.cooperative_u = {k * k / 8.0, k * k / 8.0};
  b.max_total_profit = k * k / 4.0;
  return b;
}

}  // namespace qcournot
