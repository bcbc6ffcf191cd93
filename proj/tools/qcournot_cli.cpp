#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qcournot/entangle.hpp"
#include "qcournot/game.hpp"
#include "qcournot/market.hpp"
#include "qcournot/report.hpp"
#include "qcournot/solver.hpp"
#include "qcournot/sweep.hpp"
#include "qcournot/verify.hpp"
#include "qcournot/version.hpp"

namespace {

namespace qc = qcournot;

// Exit contract: 0 success, 1 usage error, 2 failed consistency or
// verification check, 3 non-finite or otherwise invalid computed values.
constexpr int kExitUsage = 1;
constexpr int kExitFailedCheck = 2;
constexpr int kExitNonFinite = 3;

std::string num(double v) { return qc::sweep::format_number(v); }

std::string json_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
  return out;
}

// Assembles one JSON object in insertion order; every number passes
// through the shared 12-digit formatter.
class JsonObject {
 public:
  explicit JsonObject(bool compact = false) : compact_(compact) {}

  void number(std::string_view key, double v) { raw(key, num(v)); }
  void integer(std::string_view key, long v) { raw(key, std::to_string(v)); }
  void boolean(std::string_view key, bool v) {
    raw(key, v ? "true" : "false");
  }
  void text(std::string_view key, std::string_view v) {
    raw(key, json_quote(v));
  }
  void raw(std::string_view key, std::string_view value) {
    if (first_) {
      body_ += compact_ ? "" : "\n  ";
    } else {
      body_ += compact_ ? ", " : ",\n  ";
    }
    first_ = false;
    body_ += json_quote(key);
    body_ += ": ";
    body_ += value;
  }
  std::string str() const {
    return compact_ ? "{" + body_ + "}" : "{" + body_ + "\n}\n";
  }

 private:
  std::string body_;
  bool compact_;
  bool first_ = true;
};

int emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
    return 0;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) {
    std::cerr << "qcournot: cannot open --out file '" << out_path << "'\n";
    return kExitUsage;
  }
  file << content;
  file.flush();
  if (!file.good()) {
    std::cerr << "qcournot: write to '" << out_path << "' failed\n";
    return kExitUsage;
  }
  return 0;
}

// Returns the name of the first non-finite value, or nullptr.
const char* first_non_finite(
    std::initializer_list<std::pair<const char*, double>> values) {
  for (const auto& [name, v] : values) {
    if (!std::isfinite(v)) return name;
  }
  return nullptr;
}

struct NashArgs {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double gamma12 = 0.0;
  double k = 1.0;
  std::string format = "json";
  std::string out;
};

int run_nash(const NashArgs& a) {
  qc::EntangleParams params(a.gamma1, a.gamma2, a.gamma12);
  qc::MarketParams market = qc::MarketParams::from_margin(a.k);
  qc::StrategyProfile closed = qc::game::nash_closed_form(params, market);
  if (!std::isfinite(closed.x1) || !std::isfinite(closed.x2)) {
    std::cerr << "qcournot: equilibrium overflows at gamma1="
              << num(a.gamma1) << " gamma2=" << num(a.gamma2)
              << " gamma12=" << num(a.gamma12)
              << "; parameters are outside the representable range\n";
    return kExitNonFinite;
  }
  qc::EquilibriumReport rep = qc::solver::make_equilibrium_report(
      params, market, closed, qc::SolveMethod::closed_form);
  qc::EquilibriumReport lin = qc::solver::solve_nash_linear(params, market, 0);
  double residual = std::max(std::abs(rep.x_star.x1 - lin.x_star.x1),
                             std::abs(rep.x_star.x2 - lin.x_star.x2));
  bool consistent = residual <= 1e-8 * a.k;

  if (const char* bad = first_non_finite(
          {{"x1", rep.x_star.x1},
           {"x2", rep.x_star.x2},
           {"q1", rep.q_star.q1},
           {"q2", rep.q_star.q2},
           {"price", rep.price},
           {"u1", rep.u_star.u1},
           {"u2", rep.u_star.u2},
           {"eta", rep.eta},
           {"entropy", rep.entropy},
           {"asymmetry", rep.asymmetry},
           {"foc_norm", rep.residuals.foc_norm},
           {"max_deviation_gain", rep.residuals.max_deviation_gain},
           {"solver_residual", residual}})) {
    std::cerr << "qcournot: computed value '" << bad
              << "' is not finite at gamma1=" << num(a.gamma1)
              << " gamma2=" << num(a.gamma2)
              << " gamma12=" << num(a.gamma12)
              << "; parameters are outside the representable range\n";
    return kExitNonFinite;
  }

  std::string content;
  if (a.format == "json") {
    JsonObject j;
    j.number("gamma1", params.gamma1());
    j.number("gamma2", params.gamma2());
    j.number("gamma12", params.gamma12());
    j.number("dgamma", params.dgamma());
    j.number("k", a.k);
    j.text("method", "closed_form");
    j.number("x1", rep.x_star.x1);
    j.number("x2", rep.x_star.x2);
    j.number("q1", rep.q_star.q1);
    j.number("q2", rep.q_star.q2);
    j.number("price", rep.price);
    j.number("u1", rep.u_star.u1);
    j.number("u2", rep.u_star.u2);
    j.number("u_total", rep.u_total);
    j.number("eta", rep.eta);
    j.number("entropy", rep.entropy);
    j.number("asymmetry", rep.asymmetry);
    j.number("foc_norm", rep.residuals.foc_norm);
    j.number("max_deviation_gain", rep.residuals.max_deviation_gain);
    j.number("solver_residual", residual);
    j.boolean("consistent", consistent);
    content = j.str();
  } else if (a.format == "text") {
    std::string t;
    auto line = [&t](std::string_view key, const std::string& value) {
      t += key;
      t += ' ';
      t += value;
      t += '\n';
    };
    line("gamma1", num(params.gamma1()));
    line("gamma2", num(params.gamma2()));
    line("gamma12", num(params.gamma12()));
    line("dgamma", num(params.dgamma()));
    line("k", num(a.k));
    line("method", "closed_form");
    line("x1", num(rep.x_star.x1));
    line("x2", num(rep.x_star.x2));
    line("q1", num(rep.q_star.q1));
    line("q2", num(rep.q_star.q2));
    line("price", num(rep.price));
    line("u1", num(rep.u_star.u1));
    line("u2", num(rep.u_star.u2));
    line("u_total", num(rep.u_total));
    line("eta", num(rep.eta));
    line("entropy", num(rep.entropy));
    line("asymmetry", num(rep.asymmetry));
    line("foc_norm", num(rep.residuals.foc_norm));
    line("max_deviation_gain", num(rep.residuals.max_deviation_gain));
    line("solver_residual", num(residual));
    line("consistent", consistent ? "true" : "false");
    content = t;
  } else {
    qc::sweep::SweepRow row{params.gamma1(),  params.gamma2(),
                            params.gamma12(), params.dgamma(),
                            rep.x_star.x1,    rep.x_star.x2,
                            rep.q_star.q1,    rep.q_star.q2,
                            rep.price,        rep.u_star.u1,
                            rep.u_star.u2,    rep.u_total,
                            rep.eta,          rep.entropy,
                            rep.asymmetry};
    content = std::string(qc::sweep::kCsvHeader) + "\n" +
              qc::sweep::format_row(row) + "\n";
  }
  if (int rc = emit(content, a.out)) return rc;
  if (!consistent) {
    std::cerr << "qcournot: closed-form and linear-solve equilibria disagree"
              << " (residual " << num(residual) << ", limit "
              << num(1e-8 * a.k) << ")\n";
    return kExitFailedCheck;
  }
  return 0;
}

struct EntropyArgs {
  double gamma12 = 0.0;
  double dgamma = 0.0;
  std::string format = "json";
  std::string out;
};

int run_entropy(const EntropyArgs& a) {
  qc::game::EntropyReport r = qc::game::eta_and_entropy(a.gamma12, a.dgamma);
  if (const char* bad = first_non_finite(
          {{"eta", r.eta}, {"nu", r.nu}, {"entropy", r.entropy}})) {
    std::cerr << "qcournot: computed value '" << bad
              << "' is not finite at gamma12=" << num(a.gamma12)
              << " dgamma=" << num(a.dgamma)
              << "; parameters are outside the representable range\n";
    return kExitNonFinite;
  }
  std::string content;
  if (a.format == "json") {
    JsonObject j;
    j.number("gamma12", a.gamma12);
    j.number("dgamma", a.dgamma);
    j.number("eta", r.eta);
    j.number("nu", r.nu);
    j.number("entropy", r.entropy);
    content = j.str();
  } else if (a.format == "text") {
    content = "eta " + num(r.eta) + "\nnu " + num(r.nu) + "\nentropy " +
              num(r.entropy) + "\n";
  } else {
    content = "gamma12,dgamma,eta,nu,entropy\n" + num(a.gamma12) + "," +
              num(a.dgamma) + "," + num(r.eta) + "," + num(r.nu) + "," +
              num(r.entropy) + "\n";
  }
  return emit(content, a.out);
}

struct SweepArgs {
  std::string spec_path;
  std::string out;
  int threads = 1;
};

qc::sweep::SweepSpec parse_sweep_spec(const std::string& path) {
  std::ifstream file(path);
  if (!file) {
    throw std::invalid_argument("cannot open --spec file '" + path + "'");
  }
  qc::sweep::SweepSpec spec;
  try {
    nlohmann::json j = nlohmann::json::parse(file);
    if (!j.is_object()) {
      throw std::invalid_argument("sweep spec must be a JSON object");
    }
    static const std::set<std::string> known = {
        "varying", "from", "to", "steps", "fixed_value", "split", "k"};
    for (const auto& item : j.items()) {
      if (!known.count(item.key())) {
        throw std::invalid_argument("unknown key '" + item.key() +
                                    "' in sweep spec");
      }
    }
    std::string varying = j.at("varying").get<std::string>();
    if (varying == "gamma12") {
      spec.varying = qc::sweep::Axis::gamma12;
    } else if (varying == "dgamma") {
      spec.varying = qc::sweep::Axis::dgamma;
    } else {
      throw std::invalid_argument(
          "sweep spec 'varying' must be \"gamma12\" or \"dgamma\"");
    }
    spec.from = j.at("from").get<double>();
    spec.to = j.at("to").get<double>();
    spec.steps = j.at("steps").get<int>();
    if (j.contains("fixed_value")) {
      spec.fixed_value = j["fixed_value"].get<double>();
    }
    if (j.contains("k")) spec.k = j["k"].get<double>();
    if (j.contains("split")) {
      std::string split = j["split"].get<std::string>();
      if (split == "symmetric") {
        spec.split = qc::DgammaSplit::symmetric;
      } else if (split == "player1") {
        spec.split = qc::DgammaSplit::player1;
      } else if (split == "player2") {
        spec.split = qc::DgammaSplit::player2;
      } else {
        throw std::invalid_argument("sweep spec 'split' must be one of"
                                    " \"symmetric\", \"player1\","
                                    " \"player2\"");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("sweep spec '" + path + "': " + e.what());
  }
  return spec;
}

int run_sweep_cmd(const SweepArgs& a) {
  qc::sweep::SweepSpec spec = parse_sweep_spec(a.spec_path);
  std::vector<qc::sweep::SweepRow> rows = qc::sweep::run_sweep(spec, a.threads);
  std::ostringstream os;
  qc::sweep::write_csv(os, spec, rows);
  return emit(os.str(), a.out);
}

struct FigureArgs {
  std::string id;
  double k = 1.0;
  std::string out;
  int threads = 1;
};

int run_figure(const FigureArgs& a) {
  qc::sweep::FigureId id;
  try {
    id = qc::sweep::parse_figure_id(a.id);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("--id: ") + e.what());
  }
  auto series = qc::sweep::figure_series(id, a.k, a.threads);
  std::ostringstream os;
  qc::sweep::write_figure_csv(os, id, a.k, series);
  return emit(os.str(), a.out);
}

struct VerifyArgs {
  int grid_points = 1001;
  double tol_scale = 1.0;
  std::string format = "json";
  std::string out;
};

int run_verify(const VerifyArgs& a) {
  qc::verify::Options opts;
  opts.deviation_grid_points = a.grid_points;
  opts.tol_scale = a.tol_scale;
  std::vector<qc::verify::CheckResult> checks = qc::verify::run_all_checks(opts);
  long failures = 0;
  for (const auto& c : checks) {
    if (!c.pass) ++failures;
  }

  std::string content;
  if (a.format == "json") {
    std::string arr = "[";
    for (std::size_t i = 0; i < checks.size(); ++i) {
      JsonObject j(true);
      j.text("name", checks[i].name);
      j.number("residual", checks[i].residual);
      j.number("threshold", checks[i].threshold);
      j.boolean("pass", checks[i].pass);
      if (!checks[i].detail.empty()) j.text("detail", checks[i].detail);
      arr += "\n    " + j.str();
      if (i + 1 < checks.size()) arr += ",";
    }
    arr += "\n  ]";
    JsonObject top;
    top.text("tool", "qcournot");
    top.text("version", qc::kVersion);
    top.integer("grid_points", a.grid_points);
    top.number("tol_scale", a.tol_scale);
    top.raw("checks", arr);
    top.integer("failures", failures);
    top.boolean("all_passed", failures == 0);
    content = top.str();
  } else {
    std::string t;
    for (const auto& c : checks) {
      t += c.name;
      t += " residual " + num(c.residual);
      t += " threshold " + num(c.threshold);
      if (!c.detail.empty()) t += " (" + c.detail + ")";
      t += c.pass ? " PASS\n" : " FAIL\n";
    }
    content = t;
    std::cerr << "qcournot: " << checks.size() << " checks, " << failures
              << " failures\n";
  }
  if (int rc = emit(content, a.out)) return rc;
  return failures == 0 ? 0 : kExitFailedCheck;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Cournot duopoly equilibria under asymmetric two-mode squeezing"};
  app.set_version_flag("--version", std::string(qc::kVersion));
  app.require_subcommand(1);

  NashArgs nash;
  CLI::App* nash_cmd =
      app.add_subcommand("nash", "Equilibrium report for one parameter point");
  nash_cmd->add_option("--gamma1", nash.gamma1,
                       "Player 1 single-mode squeezing (default 0)");
  nash_cmd->add_option("--gamma2", nash.gamma2,
                       "Player 2 single-mode squeezing (default 0)");
  nash_cmd->add_option("--gamma12", nash.gamma12, "Two-mode squeezing")
      ->required()
      ->check(CLI::NonNegativeNumber);
  nash_cmd->add_option("--k", nash.k, "Demand margin a - c (default 1)")
      ->check(CLI::PositiveNumber);
  nash_cmd->add_option("--format", nash.format, "json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  nash_cmd->add_option("--out", nash.out, "Write to file instead of stdout");

  EntropyArgs entropy;
  CLI::App* entropy_cmd = app.add_subcommand(
      "entropy", "Entanglement entropy of the shared initial state");
  entropy_cmd->add_option("--gamma12", entropy.gamma12, "Two-mode squeezing")
      ->required()
      ->check(CLI::NonNegativeNumber);
  entropy_cmd->add_option("--dgamma", entropy.dgamma,
                          "Squeezing difference gamma1 - gamma2 (default 0)");
  entropy_cmd->add_option("--format", entropy.format, "json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  entropy_cmd->add_option("--out", entropy.out,
                          "Write to file instead of stdout");

  SweepArgs sweep;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "Equilibrium grid from a JSON sweep spec");
  sweep_cmd->add_option("--spec", sweep.spec_path, "Path to sweep spec JSON")
      ->required();
  sweep_cmd->add_option("--threads", sweep.threads, "Worker threads")
      ->check(CLI::Range(1, 256));
  sweep_cmd->add_option("--out", sweep.out, "Write to file instead of stdout");

  FigureArgs figure;
  CLI::App* figure_cmd =
      app.add_subcommand("figure", "CSV data for one of the built-in figures");
  figure_cmd
      ->add_option("--id", figure.id,
                   "fig2_dr_fixed, fig3_r12_fixed, fig4_s_vs_u,"
                   " fig5_profit_diff, or a bare number 2..5")
      ->required();
  figure_cmd->add_option("--k", figure.k, "Demand margin a - c (default 1)")
      ->check(CLI::PositiveNumber);
  figure_cmd->add_option("--threads", figure.threads, "Worker threads")
      ->check(CLI::Range(1, 256));
  figure_cmd->add_option("--out", figure.out,
                         "Write to file instead of stdout");

  VerifyArgs verify;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "Run the full invariant check suite");
  verify_cmd
      ->add_option("--grid-points", verify.grid_points,
                   "Deviation scan grid density (default 1001)")
      ->check(CLI::Range(2, 1000001));
  verify_cmd
      ->add_option("--tol-scale", verify.tol_scale,
                   "Multiplier applied to every check threshold (default 1)")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--format", verify.format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));
  verify_cmd->add_option("--out", verify.out,
                         "Write to file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*nash_cmd) return run_nash(nash);
    if (*entropy_cmd) return run_entropy(entropy);
    if (*sweep_cmd) return run_sweep_cmd(sweep);
    if (*figure_cmd) return run_figure(figure);
    if (*verify_cmd) return run_verify(verify);
  } catch (const std::domain_error& e) {
    std::cerr << "qcournot: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "qcournot: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "qcournot: " << e.what() << "\n";
    return kExitNonFinite;
  }
  return 0;
}
