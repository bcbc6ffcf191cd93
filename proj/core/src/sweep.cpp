#include "qcournot/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <utility>

#include "qcournot/solver.hpp"
#include "qcournot/version.hpp"

namespace qcournot::sweep {

namespace {

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) {
    throw std::domain_error(std::string(name) + " must be finite");
  }
}

void validate(const SweepSpec& spec) {
  require_finite(spec.from, "from");
  require_finite(spec.to, "to");
  require_finite(spec.fixed_value, "fixed_value");
  require_finite(spec.k, "k");
  if (spec.steps < 2) {
    throw std::invalid_argument("steps must be >= 2");
  }
  if (spec.from > spec.to) {
    throw std::invalid_argument("sweep range must satisfy from <= to");
  }
  if (spec.k <= 0.0) {
    throw std::domain_error("k must be > 0");
  }
  double min_gamma12 =
      (spec.varying == Axis::gamma12) ? spec.from : spec.fixed_value;
  if (min_gamma12 < 0.0) {
    throw std::domain_error("gamma12 values must be >= 0");
  }
}

EntangleParams params_at(const SweepSpec& spec, double value) {
  double gamma12 =
      (spec.varying == Axis::gamma12) ? value : spec.fixed_value;
  double dgamma = (spec.varying == Axis::dgamma) ? value : spec.fixed_value;
  return EntangleParams::from_dgamma(gamma12, dgamma, spec.split);
}

std::string_view split_name(DgammaSplit split) {
  switch (split) {
    case DgammaSplit::symmetric: return "symmetric";
    case DgammaSplit::player1: return "player1";
    case DgammaSplit::player2: return "player2";
  }
  return "symmetric";
}

std::string spec_description(const SweepSpec& spec) {
  std::string_view fixed_axis =
      (spec.varying == Axis::gamma12) ? "dgamma" : "gamma12";
  std::string out;
  out += "varying=";
  out += axis_name(spec.varying);
  out += " from=" + format_number(spec.from);
  out += " to=" + format_number(spec.to);
  out += " steps=" + std::to_string(spec.steps);
  out += " ";
  out += fixed_axis;
  out += "=" + format_number(spec.fixed_value);
  out += " split=";
  out += split_name(spec.split);
  return out;
}

}  // namespace

std::string_view axis_name(Axis axis) {
  return axis == Axis::gamma12 ? "gamma12" : "dgamma";
}

SweepRow evaluate_point(const EntangleParams& params, double k) {
  MarketParams market = MarketParams::from_margin(k);
  StrategyProfile x = game::nash_closed_form(params, market);
  std::array<double, 2> grad = game::own_payoff_gradient(params, market, x);
  double foc = std::max(std::abs(grad[0]), std::abs(grad[1]));
  if (!(foc <= 1e-8 * k * k)) {
    throw std::runtime_error(
        "computed equilibrium violates its first-order conditions");
  }
  QuantityPair q = game::quantities(params, x);
  PayoffPair u = game::quantum_payoffs(params, market, x);
  game::EntropyReport ent =
      game::eta_and_entropy(params.gamma12(), params.dgamma());
  SweepRow row;
  row.gamma1 = params.gamma1();
  row.gamma2 = params.gamma2();
  row.gamma12 = params.gamma12();
  row.dgamma = params.dgamma();
  row.x1 = x.x1;
  row.x2 = x.x2;
  row.q1 = q.q1;
  row.q2 = q.q2;
  row.price = clamped_price(market, q.total());
  row.u1 = u.u1;
  row.u2 = u.u2;
  row.u_total = u.total();
  row.eta = ent.eta;
  row.entropy = ent.entropy;
  row.asymmetry = game::asymmetry_closed_form(params);
  return row;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, int threads) {
  validate(spec);
  if (threads < 1) {
    throw std::invalid_argument("threads must be >= 1");
  }
  int n = spec.steps;
  std::vector<SweepRow> rows(static_cast<std::size_t>(n));
  auto value_at = [&spec, n](int i) {
    return spec.from + (spec.to - spec.from) * i / (n - 1);
  };
  auto work = [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      rows[static_cast<std::size_t>(i)] =
          evaluate_point(params_at(spec, value_at(i)), spec.k);
    }
  };
  int used = std::min(threads, n);
  if (used == 1) {
    work(0, n);
    return rows;
  }
  // Fixed contiguous partition into preallocated slots: the output is
  // byte-identical to the serial run whatever the thread count.
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(used));
  pool.reserve(static_cast<std::size_t>(used));
  for (int t = 0; t < used; ++t) {
    int begin = n * t / used;
    int end = n * (t + 1) / used;
    pool.emplace_back([&, begin, end, t] {
      try {
        work(begin, end);
      } catch (...) {
        errors[static_cast<std::size_t>(t)] = std::current_exception();
      }
    });
  }
  for (std::thread& worker : pool) {
    worker.join();
  }
  for (const std::exception_ptr& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  return rows;
}

FigureId parse_figure_id(std::string_view token) {
  if (token == "2" || token == "fig2" || token == "fig2_dr_fixed") {
    return FigureId::fig2_dr_fixed;
  }
  if (token == "3" || token == "fig3" || token == "fig3_r12_fixed") {
    return FigureId::fig3_r12_fixed;
  }
  if (token == "4" || token == "fig4" || token == "fig4_s_vs_u") {
    return FigureId::fig4_s_vs_u;
  }
  if (token == "5" || token == "fig5" || token == "fig5_profit_diff") {
    return FigureId::fig5_profit_diff;
  }
  throw std::invalid_argument("unknown figure id: " + std::string(token));
}

std::string_view figure_name(FigureId id) {
  switch (id) {
    case FigureId::fig2_dr_fixed: return "fig2_dr_fixed";
    case FigureId::fig3_r12_fixed: return "fig3_r12_fixed";
    case FigureId::fig4_s_vs_u: return "fig4_s_vs_u";
    case FigureId::fig5_profit_diff: return "fig5_profit_diff";
  }
  throw std::invalid_argument("unknown figure id");
}

std::vector<FigureSeries> figure_series(FigureId id, double k, int threads) {
  std::vector<FigureSeries> out;
  auto add = [&](std::string_view axis_label, double fixed, SweepSpec spec) {
    spec.fixed_value = fixed;
    spec.k = k;
    std::string label =
        std::string(axis_label) + "=" + format_number(fixed);
    out.push_back({std::move(label), spec, run_sweep(spec, threads)});
  };
  switch (id) {
    case FigureId::fig2_dr_fixed:
    case FigureId::fig4_s_vs_u:
      // Same grids; fig4 is read as (entropy, u_total) pairs downstream.
      for (double dgamma : {0.0, 1.0, 2.0}) {
        add("dgamma", dgamma, {Axis::gamma12, 0.0, 3.0, 301});
      }
      break;
    case FigureId::fig3_r12_fixed:
      for (double gamma12 : {0.5, 1.0, 2.0}) {
        add("gamma12", gamma12, {Axis::dgamma, 0.0, 6.0, 301});
      }
      break;
    case FigureId::fig5_profit_diff:
      for (double gamma12 : {0.5, 1.0, 2.0}) {
        add("gamma12", gamma12, {Axis::dgamma, -6.0, 6.0, 601});
      }
      break;
  }
  return out;
}

std::vector<SweepRow> equal_entropy_comparison(double entropy_target,
                                               std::span<const double> dgamma_values,
                                               double k, DgammaSplit split) {
  require_finite(entropy_target, "entropy_target");
  require_finite(k, "k");
  if (entropy_target <= 0.0) {
    throw std::domain_error("entropy_target must be > 0");
  }
  if (k <= 0.0) {
    throw std::domain_error("k must be > 0");
  }
  std::vector<SweepRow> rows;
  rows.reserve(dgamma_values.size());
  for (double dgamma : dgamma_values) {
    double gamma12 = game::gamma12_for_entropy(entropy_target, dgamma);
    rows.push_back(
        evaluate_point(EntangleParams::from_dgamma(gamma12, dgamma, split), k));
  }
  return rows;
}

std::string format_number(double value) {
  if (value == 0.0) value = 0.0;  // collapse negative zero
  char buf[40];
  auto result = std::to_chars(buf, buf + sizeof(buf), value,
                              std::chars_format::general, 12);
  return std::string(buf, result.ptr);
}

std::string format_row(const SweepRow& r) {
  const double values[] = {r.gamma1, r.gamma2,  r.gamma12, r.dgamma,
                           r.x1,     r.x2,      r.q1,      r.q2,
                           r.price,  r.u1,      r.u2,      r.u_total,
                           r.eta,    r.entropy, r.asymmetry};
  std::string line;
  for (double v : values) {
    if (!line.empty()) line += ',';
    line += format_number(v);
  }
  return line;
}

void write_csv(std::ostream& os, const SweepSpec& spec,
               std::span<const SweepRow> rows) {
  validate(spec);
  os << "# qcournot " << kVersion << "\n";
  os << "# sweep: " << spec_description(spec)
     << " k=" << format_number(spec.k) << "\n";
  os << kCsvHeader << "\n";
  for (const SweepRow& row : rows) {
    os << format_row(row) << "\n";
  }
}

void write_figure_csv(std::ostream& os, FigureId id, double k,
                      std::span<const FigureSeries> series) {
  os << "# qcournot " << kVersion << "\n";
  os << "# figure: " << figure_name(id) << "\n";
  os << "# k: " << format_number(k) << "\n";
  if (id == FigureId::fig4_s_vs_u) {
    os << "# axes: x=entropy y=u_total\n";
  }
  os << kCsvHeader << "\n";
  for (const FigureSeries& s : series) {
    os << "# series: " << s.label << " " << spec_description(s.spec) << "\n";
    for (const SweepRow& row : s.rows) {
      os << format_row(row) << "\n";
    }
  }
}

}  // namespace qcournot::sweep
