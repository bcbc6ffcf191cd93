#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qcournot/entangle.hpp"
#include "qcournot/game.hpp"

// Parameter sweeps over the equilibrium surface and their CSV projection.
// All numeric output goes through format_number, so files are
// byte-identical across runs and thread counts.
namespace qcournot::sweep {

enum class Axis { gamma12, dgamma };

std::string_view axis_name(Axis axis);

struct SweepSpec {
  Axis varying = Axis::gamma12;
  double from = 0.0;
  double to = 1.0;
  int steps = 2;              // grid points, endpoints included; >= 2
  double fixed_value = 0.0;   // value of the non-varying axis
  DgammaSplit split = DgammaSplit::symmetric;
  double k = 1.0;
};

// One equilibrium point in column order of the CSV schema.
struct SweepRow {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double gamma12 = 0.0;
  double dgamma = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;
  double q1 = 0.0;
  double q2 = 0.0;
  double price = 0.0;
  double u1 = 0.0;
  double u2 = 0.0;
  double u_total = 0.0;
  double eta = 0.0;
  double entropy = 0.0;
  double asymmetry = 0.0;
};

// Equilibrium, price, payoffs and entanglement block at one parameter
// point. Throws std::runtime_error if the computed equilibrium fails its
// own first-order conditions beyond 1e-8 * k^2 (a corruption guard, not a
// reachable state for admissible inputs).
SweepRow evaluate_point(const EntangleParams& params, double k);

// Evaluates the spec's grid (uniform, endpoints included). threads > 1
// partitions the rows over that many workers writing into preallocated
// slots; the result is byte-identical to the serial run.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, int threads = 1);

// Canned multi-series datasets behind the figures the library reproduces.
enum class FigureId {
  fig2_dr_fixed,     // gamma12 in [0, 3], one series per dgamma in {0, 1, 2}
  fig3_r12_fixed,    // dgamma in [0, 6], one series per gamma12 in {0.5, 1, 2}
  fig4_s_vs_u,       // (entropy, u_total) pairs along the fig2 grids
  fig5_profit_diff,  // u1 - u2 over dgamma in [-6, 6] per gamma12 in {0.5, 1, 2}
};

// Accepts "2".."5", "fig2".."fig5", or the full id name ("fig5_profit_diff").
FigureId parse_figure_id(std::string_view token);

std::string_view figure_name(FigureId id);

struct FigureSeries {
  std::string label;  // e.g. "dgamma=1"
  SweepSpec spec;
  std::vector<SweepRow> rows;
};

std::vector<FigureSeries> figure_series(FigureId id, double k,
                                        int threads = 1);

// Rows holding entropy fixed while dgamma varies: for each requested
// dgamma, gamma12 is solved from the entropy target first. Output order
// follows the input order. entropy_target must be > 0.
std::vector<SweepRow> equal_entropy_comparison(
    double entropy_target, std::span<const double> dgamma_values, double k,
    DgammaSplit split = DgammaSplit::symmetric);

inline constexpr std::string_view kCsvHeader =
    "gamma1,gamma2,gamma12,dgamma,x1,x2,q1,q2,price,u1,u2,u_total,eta,"
    "entropy,asymmetry";

// Shortest decimal form with 12 significant digits, C locale, negative
// zero normalized to "0". The single formatting path for every CSV and
// JSON number the project emits.
std::string format_number(double value);

// One CSV line in kCsvHeader column order, no trailing newline.
std::string format_row(const SweepRow& row);

// CSV with `# key: value` metadata lines, the fixed header, one row per
// grid point.
void write_csv(std::ostream& os, const SweepSpec& spec,
               std::span<const SweepRow> rows);

// Multi-series CSV: shared metadata and header, each series introduced by
// a `# series:` line carrying its label and grid.
void write_figure_csv(std::ostream& os, FigureId id, double k,
                      std::span<const FigureSeries> series);

}  // namespace qcournot::sweep
