// Acceptance suite: one line per criterion, exit code equal to the number
// of failed criteria. Each criterion exercises the library end to end and
// compares against values that were computed independently of this code.
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "oracle_values.hpp"
#include "subprocess.hpp"

#include "qcournot/entangle.hpp"
#include "qcournot/game.hpp"
#include "qcournot/gaussian.hpp"
#include "qcournot/market.hpp"
#include "qcournot/report.hpp"
#include "qcournot/solver.hpp"
#include "qcournot/sweep.hpp"

namespace {

namespace game = qcournot::game;
namespace gaussian = qcournot::gaussian;
namespace solver = qcournot::solver;
namespace sweep = qcournot::sweep;
using qcournot::EntangleParams;
using qcournot::MarketParams;
using qcournot::QuantityPair;
using qcournot::StrategyProfile;

int failures = 0;

void report(int number, const char* description, bool pass,
            const std::string& note = "") {
  std::printf("[%s] criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", number,
              description, note.empty() ? "" : " ", note.c_str());
  if (!pass) ++failures;
}

std::string worst_note(double value) {
  return "(worst residual " + sweep::format_number(value) + ")";
}

std::vector<EntangleParams> parameter_grid() {
  std::vector<EntangleParams> grid;
  for (int i = 0; i <= 12; ++i) {
    double gamma12 = 0.25 * i;
    for (int j = -6; j <= 6; ++j) {
      double dgamma = 0.5 * j;
      grid.push_back(EntangleParams::from_dgamma(gamma12, dgamma));
    }
  }
  return grid;
}

void criterion_1_classical_benchmarks() {
  double worst = 0.0;
  for (double k : {1.0, 2.0, 3.0}) {
    MarketParams market = MarketParams::from_margin(k);
    qcournot::ClassicalBenchmarks bench =
        qcournot::classical_benchmarks(market);
    EntangleParams off{0.0, 0.0, 0.0};
    StrategyProfile x = game::nash_closed_form(off, market);
    qcournot::PayoffPair u = game::quantum_payoffs(off, market, x);
    worst = std::max(
        {worst, std::abs(bench.nash_q.q1 - k / 3.0),
         std::abs(bench.nash_q.q2 - k / 3.0),
         std::abs(bench.nash_u.u1 - k * k / 9.0),
         std::abs(bench.nash_u.u2 - k * k / 9.0),
         std::abs(bench.cooperative_q.q1 - k / 4.0),
         std::abs(bench.cooperative_q.q2 - k / 4.0),
         std::abs(bench.cooperative_u.u1 - k * k / 8.0),
         std::abs(bench.cooperative_u.u2 - k * k / 8.0),
         std::abs(bench.max_total_profit - k * k / 4.0),
         std::abs(x.x1 - k / 3.0), std::abs(x.x2 - k / 3.0),
         std::abs(u.u1 - k * k / 9.0), std::abs(u.u2 - k * k / 9.0)});
  }
  report(1,
         "classical Nash and cooperative benchmarks at k = 1, 2, 3 are "
         "exact",
         worst <= 1e-12, worst_note(worst));
}

void criterion_2_single_mode_squeezing_is_classical() {
  double worst = 0.0;
  for (double k : {1.0, 2.5}) {
    MarketParams market = MarketParams::from_margin(k);
    for (int i = -2; i <= 2; ++i) {
      for (int j = -2; j <= 2; ++j) {
        EntangleParams p(static_cast<double>(i), static_cast<double>(j),
                         0.0);
        StrategyProfile x = game::nash_closed_form(p, market);
        QuantityPair q = game::quantities(p, x);
        qcournot::PayoffPair u = game::quantum_payoffs(p, market, x);
        worst = std::max({worst, std::abs(q.q1 - k / 3.0),
                          std::abs(q.q2 - k / 3.0),
                          std::abs(u.u1 - k * k / 9.0),
                          std::abs(u.u2 - k * k / 9.0)});
      }
    }
  }
  report(2,
         "single-mode squeezing alone reproduces the classical outcome on a "
         "5x5 grid",
         worst <= 1e-10, worst_note(worst));
}

void criterion_3_solution_routes_agree() {
  MarketParams market = MarketParams::from_margin(1.0);
  double worst_route = 0.0;
  double worst_gain = 0.0;
  solver::IterationOptions iter_opts;
  iter_opts.tol = 1e-12;
  iter_opts.max_iter = 50000;
  for (const EntangleParams& p : parameter_grid()) {
    StrategyProfile closed = game::nash_closed_form(p, market);
    qcournot::EquilibriumReport linear = solver::solve_nash_linear(p, market);
    solver::IterationTrace trace =
        solver::iterate_best_response(p, market, iter_opts);
    const StrategyProfile& iterated = trace.iterates.back();
    worst_route = std::max(
        {worst_route, std::abs(closed.x1 - linear.x_star.x1),
         std::abs(closed.x2 - linear.x_star.x2),
         std::abs(closed.x1 - iterated.x1),
         std::abs(closed.x2 - iterated.x2),
         std::abs(linear.x_star.x1 - iterated.x1),
         std::abs(linear.x_star.x2 - iterated.x2)});
    solver::DeviationCheck dev =
        solver::verify_equilibrium(p, market, closed);
    worst_gain = std::max(worst_gain, dev.max_gain);
  }
  bool pass = worst_route <= 1e-9 && worst_gain <= 1e-8;
  report(3,
         "closed-form, linear-solve and iterated equilibria agree on a "
         "13x13 parameter grid with no profitable unilateral deviation",
         pass,
         "(route residual " + sweep::format_number(worst_route) +
             ", best deviation gain " + sweep::format_number(worst_gain) +
             ")");
}

void criterion_4_printed_point_audit() {
  MarketParams market = MarketParams::from_margin(1.0);
  EntangleParams p{1.0, 0.0, 0.5};
  StrategyProfile printed{testvals::kPrintedX1, testvals::kPrintedX2};
  solver::DeviationCheck dev = solver::verify_equilibrium(p, market, printed);
  bool printed_improvable =
      dev.player == 1 &&
      std::abs(dev.max_gain - testvals::kPrintedGain) <= 5e-4 &&
      std::abs(dev.best_deviation - testvals::kPrintedDeviation) <= 5e-4;
  StrategyProfile corrected = game::nash_closed_form(p, market);
  solver::DeviationCheck clean =
      solver::verify_equilibrium(p, market, corrected);
  bool pass = printed_improvable && clean.max_gain <= 1e-8;
  report(4,
         "the previously published example point admits a unilateral "
         "improvement of about 0.0269 while the corrected point admits none",
         pass,
         "(gain " + sweep::format_number(dev.max_gain) + " at move " +
             sweep::format_number(dev.best_deviation) +
             ", corrected residual gain " +
             sweep::format_number(clean.max_gain) + ")");
}

void criterion_5_profit_formula() {
  MarketParams market = MarketParams::from_margin(1.0);
  double worst = 0.0;
  for (const EntangleParams& p : parameter_grid()) {
    qcournot::PayoffPair direct =
        game::quantum_payoffs(p, market, game::nash_closed_form(p, market));
    qcournot::PayoffPair formula =
        game::equilibrium_profits(p.gamma12(), p.dgamma(), 1.0);
    worst = std::max({worst, std::abs(direct.u1 - formula.u1),
                      std::abs(direct.u2 - formula.u2)});
  }
  qcournot::PayoffPair spot = game::equilibrium_profits(0.5, 1.0, 1.0);
  bool spots_ok = std::abs(spot.u1 - testvals::kAsymU1) <= 1e-4 &&
                  std::abs(spot.u2 - testvals::kAsymU2) <= 1e-4;
  report(5,
         "the closed-form equilibrium profits match the payoff route on "
         "the grid and at the reference point",
         worst <= 1e-9 && spots_ok, worst_note(worst));
}

void criterion_6_simulation_reproduces_quantities() {
  double worst_mean = 0.0;
  double worst_pure = 0.0;
  const double moves[] = {0.0, 0.1, 0.5, 1.0};
  for (const EntangleParams& p : parameter_grid()) {
    for (double x1 : moves) {
      for (double x2 : moves) {
        StrategyProfile x{x1, x2};
        gaussian::GaussianTwoModeState fs = gaussian::final_state(p, x);
        QuantityPair q = game::quantities(p, x);
        worst_mean = std::max(
            {worst_mean, std::abs(fs.mean(0) - q.q1),
             std::abs(fs.mean(2) - q.q2), std::abs(fs.mean(1)),
             std::abs(fs.mean(3))});
        worst_pure = std::max(
            worst_pure,
            (fs.cov - 0.5 * Eigen::Matrix4d::Identity())
                .cwiseAbs()
                .maxCoeff());
        auto nus = gaussian::symplectic_eigenvalues(fs.cov);
        worst_pure = std::max({worst_pure, std::abs(nus[0] - 0.5),
                               std::abs(nus[1] - 0.5)});
      }
    }
  }
  bool pass = worst_mean <= 1e-10 && worst_pure <= 1e-10;
  report(6,
         "phase-space simulation reproduces the quantity map and returns a "
         "pure final state",
         pass,
         "(mean residual " + sweep::format_number(worst_mean) +
             ", purity residual " + sweep::format_number(worst_pure) + ")");
}

void criterion_7_entropy_routes_agree() {
  double worst = 0.0;
  for (const EntangleParams& p : parameter_grid()) {
    if (p.gamma12() == 0.0) continue;  // entropy is zero there by definition
    game::EntropyReport closed = game::eta_and_entropy(p.gamma12(),
                                                       p.dgamma());
    double via_eta = game::entropy_eta_form(closed.eta);
    gaussian::GaussianTwoModeState ev = gaussian::entangled_vacuum(p);
    double s1 = gaussian::vn_entropy_from_nu(
        gaussian::reduced_mode_stats(ev, 1).nu);
    double s2 = gaussian::vn_entropy_from_nu(
        gaussian::reduced_mode_stats(ev, 2).nu);
    worst = std::max({worst, std::abs(s1 - closed.entropy),
                      std::abs(s2 - closed.entropy),
                      std::abs(via_eta - closed.entropy)});
    if (p.dgamma() == 0.0) {
      worst = std::max(worst,
                       std::abs(game::entropy_symmetric_form(p.gamma12()) -
                                closed.entropy));
    }
  }
  double sym_spot = game::eta_and_entropy(1.0, 0.0).entropy;
  double asym_spot = game::eta_and_entropy(0.5, 1.0).entropy;
  bool spots_ok = std::abs(sym_spot - 1.6198) <= 1e-3 &&
                  std::abs(asym_spot - 0.993) <= 2e-3;
  report(7,
         "independent entropy expressions and both simulated reduced modes "
         "agree",
         worst <= 1e-9 && spots_ok, worst_note(worst));
}

void criterion_8_asymmetry() {
  double worst = 0.0;
  for (const EntangleParams& p : parameter_grid()) {
    gaussian::GaussianTwoModeState ev = gaussian::entangled_vacuum(p);
    gaussian::ReducedModeStats r1 = gaussian::reduced_mode_stats(ev, 1);
    gaussian::ReducedModeStats r2 = gaussian::reduced_mode_stats(ev, 2);
    double simulated = (r1.var_x - r2.var_x) / (r1.var_x + r2.var_x);
    worst = std::max(worst,
                     std::abs(simulated - game::asymmetry_closed_form(p)));
  }
  double spot = game::asymmetry_closed_form({1.0, 0.0, 0.5});
  bool spot_ok = std::abs(spot - testvals::kAsymAsymmetry) <= 1e-4;
  bool zero_ok =
      game::asymmetry_closed_form(EntangleParams::from_dgamma(1.3, 0.0)) ==
      0.0;
  report(8,
         "the variance imbalance between the modes matches its closed form "
         "and vanishes for equal squeezing",
         worst <= 1e-10 && spot_ok && zero_ok, worst_note(worst));
}

void criterion_9_limits() {
  bool pass = true;
  std::string note;
  for (double k : {1.0, 2.0}) {
    qcournot::PayoffPair saturated = game::equilibrium_profits(3.0, 0.0, k);
    pass = pass &&
           std::abs(saturated.total() - 0.25 * k * k) <= 1e-3 * k * k;
    qcournot::PayoffPair lopsided = game::equilibrium_profits(1.0, 6.0, k);
    pass = pass && lopsided.u1 >= 0.249 * k * k &&
           lopsided.u2 <= 1e-3 * k * k;
    if (k == 1.0) {
      note = "(total " + sweep::format_number(saturated.total()) +
             ", split " + sweep::format_number(lopsided.u1) + " / " +
             sweep::format_number(lopsided.u2) + ")";
    }
  }
  report(9,
         "strong symmetric entanglement saturates the joint profit bound "
         "k^2/4 while strong asymmetry hands it to one player",
         pass, note);
}

void criterion_10_equal_entropy_comparison() {
  double target = game::eta_and_entropy(0.25, 0.0).entropy;
  const double dgammas[] = {0.0, 3.0};
  bool pass = true;
  std::string note;
  for (double k : {1.0, 2.0}) {
    std::vector<sweep::SweepRow> rows =
        sweep::equal_entropy_comparison(target, dgammas, k);
    double gap = rows[0].u_total - rows[1].u_total;
    pass = pass && std::abs(rows[0].entropy - target) <= 1e-9 &&
           std::abs(rows[1].entropy - target) <= 1e-9 &&
           std::abs(gap - 0.0017433611343802761 * k * k) <= 3e-4 * k * k;
    if (k == 1.0) note = "(profit gap " + sweep::format_number(gap) + ")";
  }
  report(10,
         "holding the entropy level fixed, the evenly split squeezing "
         "keeps more total profit than a lopsided split",
         pass, note);
}

void criterion_11_monotonicity() {
  bool pass = true;
  for (const sweep::FigureSeries& series :
       sweep::figure_series(sweep::FigureId::fig2_dr_fixed, 1.0)) {
    for (std::size_t i = 1; i < series.rows.size(); ++i) {
      pass = pass &&
             series.rows[i].entropy > series.rows[i - 1].entropy &&
             series.rows[i].u_total >= series.rows[i - 1].u_total - 1e-12;
    }
  }
  for (const sweep::FigureSeries& series :
       sweep::figure_series(sweep::FigureId::fig3_r12_fixed, 1.0)) {
    for (std::size_t i = 1; i < series.rows.size(); ++i) {
      pass = pass && series.rows[i].entropy > series.rows[i - 1].entropy;
    }
  }
  report(11,
         "entropy grows strictly with either squeezing knob and total "
         "profit never falls as collective squeezing grows",
         pass);
}

void criterion_12_deterministic_output() {
  namespace fs = std::filesystem;
  std::string cli = std::string("\"") + QCOURNOT_CLI_PATH + "\"";
  bool pass = true;
  for (const char* id : {"2", "3", "4", "5"}) {
    std::string base = cli + " figure --id " + id;
    CommandResult a = run_command(base + " 2>/dev/null");
    CommandResult b = run_command(base + " 2>/dev/null");
    CommandResult c = run_command(base + " --threads 4 2>/dev/null");
    pass = pass && a.exit_code == 0 && b.exit_code == 0 && c.exit_code == 0 &&
           a.output == b.output && a.output == c.output && !a.output.empty();
  }
  fs::path spec_path =
      fs::temp_directory_path() / "qcournot_acceptance_spec.json";
  {
    std::ofstream os(spec_path);
    os << "{\"varying\":\"dgamma\",\"from\":-3,\"to\":3,\"steps\":301,"
          "\"fixed_value\":1.5,\"split\":\"symmetric\",\"k\":2}\n";
  }
  std::string base = cli + " sweep --spec \"" + spec_path.string() + "\"";
  CommandResult serial = run_command(base + " 2>/dev/null");
  CommandResult threaded = run_command(base + " --threads 4 2>/dev/null");
  pass = pass && serial.exit_code == 0 && threaded.exit_code == 0 &&
         serial.output == threaded.output && !serial.output.empty();
  fs::remove(spec_path);
  report(12,
         "figure and sweep output is byte-identical across reruns and "
         "thread counts",
         pass);
}

}  // namespace

int main() {
  criterion_1_classical_benchmarks();
  criterion_2_single_mode_squeezing_is_classical();
  criterion_3_solution_routes_agree();
  criterion_4_printed_point_audit();
  criterion_5_profit_formula();
  criterion_6_simulation_reproduces_quantities();
  criterion_7_entropy_routes_agree();
  criterion_8_asymmetry();
  criterion_9_limits();
  criterion_10_equal_entropy_comparison();
  criterion_11_monotonicity();
  criterion_12_deterministic_output();
  std::printf("%d of 12 criteria passed\n", 12 - failures);
  return failures;
}
