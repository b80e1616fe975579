// Command-line front end: Pareto curves, single frontier points, the
// verification suite, and the stretched CG table, as CSV or JSON.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "spintradeoff/angular.hpp"
#include "spintradeoff/errors.hpp"
#include "spintradeoff/tradeoff.hpp"
#include "spintradeoff/verify.hpp"

namespace {

using nlohmann::json;
using namespace spintradeoff;

constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// All commands assemble their output in memory first; a partially written
// file never masquerades as a result.
int emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open '" << out_path << "' for writing\n";
    return kExitIo;
  }
  out << content;
  out.flush();
  if (!out) {
    std::cerr << "error: write to '" << out_path << "' failed\n";
    return kExitIo;
  }
  return 0;
}

json point_to_json(const TradeoffPoint& pt, bool with_ho) {
  json row{{"p", pt.p},         {"G", pt.G},
           {"F", pt.F},         {"I", pt.I},
           {"D", pt.D},         {"trace_xi", pt.trace_xi},
           {"lambda_max", pt.lambda_max}};
  if (with_ho) row["D_ho"] = ho_tradeoff(pt.I);
  return row;
}

void csv_point_row(std::ostringstream& os, const TradeoffPoint& pt, bool with_ho) {
  os << fmt12(pt.p) << ',' << fmt12(pt.G) << ',' << fmt12(pt.F) << ','
     << fmt12(pt.I) << ',' << fmt12(pt.D) << ',' << fmt12(pt.trace_xi) << ','
     << fmt12(pt.lambda_max);
  if (with_ho) os << ',' << fmt12(ho_tradeoff(pt.I));
}

int cmd_curve(int two_j, int points, bool ho_overlay, const std::string& format,
              const std::string& out_path) {
  const SpinJ j(two_j);
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) grid[i] = static_cast<double>(i) / (points - 1);
  const SweepResult sweep = sweep_curve(j, grid);
  for (const std::string& w : sweep.warnings) std::cerr << "warning: " << w << '\n';

  std::ostringstream os;
  if (format == "json") {
    json doc{{"two_j", two_j}, {"points", json::array()}};
    for (const TradeoffPoint& pt : sweep.points)
      doc["points"].push_back(point_to_json(pt, ho_overlay));
    os << doc.dump(2) << '\n';
  } else {
    os << "p,G,F,I,D,trace_xi,lambda_max";
    if (ho_overlay) os << ",D_ho";
    os << '\n';
    for (const TradeoffPoint& pt : sweep.points) {
      csv_point_row(os, pt, ho_overlay);
      os << '\n';
    }
  }
  return emit(os.str(), out_path);
}

int cmd_point(int two_j, double g_target, double tol, const std::string& format,
              const std::string& out_path) {
  const SpinJ j(two_j);
  const TradeoffPoint pt = solve_for_G(j, g_target, tol);

  std::ostringstream os;
  if (format == "json") {
    json doc = point_to_json(pt, false);
    doc["two_j"] = two_j;
    doc["a"] = json::array();
    for (int i = 0; i < j.dimension(); ++i) doc["a"].push_back(pt.xi.a(i));
    os << doc.dump(2) << '\n';
  } else {
    os << "p,G,F,I,D,trace_xi,lambda_max";
    for (int i = 0; i < j.dimension(); ++i) os << ",a" << i;
    os << '\n';
    csv_point_row(os, pt, false);
    for (int i = 0; i < j.dimension(); ++i) os << ',' << fmt12(pt.xi.a(i));
    os << '\n';
  }
  return emit(os.str(), out_path);
}

int cmd_verify(int two_j, long samples, std::uint64_t seed, const std::string& format,
               const std::string& out_path) {
  const SpinJ j(two_j);
  const VerificationReport report = run_suite(j, samples, seed);

  std::ostringstream os;
  if (format == "json") {
    json doc{{"two_j", two_j},
             {"samples", samples},
             {"seed", seed},
             {"checks", json::array()},
             {"all_passed", report.all_passed()}};
    for (const VerificationCheck& c : report.checks)
      doc["checks"].push_back({{"name", c.name},
                               {"status", c.skipped ? "skipped" : (c.passed ? "pass" : "fail")},
                               {"residual", c.residual},
                               {"threshold", c.threshold}});
    os << doc.dump(2) << '\n';
  } else {
    int passed = 0, failed = 0, skipped = 0;
    for (const VerificationCheck& c : report.checks) {
      if (c.skipped) {
        ++skipped;
        os << "SKIPPED " << c.name << " (full-space checks need 2j <= 6)\n";
      } else {
        (c.passed ? ++passed : ++failed);
        os << (c.passed ? "PASS    " : "FAIL    ") << c.name
           << "  residual=" << fmt12(c.residual)
           << "  threshold=" << fmt12(c.threshold) << '\n';
      }
    }
    os << (report.all_passed() ? "RESULT PASS" : "RESULT FAIL") << " (" << passed
       << " passed, " << failed << " failed, " << skipped << " skipped)\n";
  }
  const int io = emit(os.str(), out_path);
  if (io != 0) return io;
  return report.all_passed() ? 0 : kExitNumeric;
}

int cmd_cg_table(int two_j, const std::string& format, const std::string& out_path) {
  const SpinJ j(two_j);
  const CGTable table = CGTable::build(j);
  const int d = j.dimension();

  std::ostringstream os;
  if (format == "json") {
    json doc{{"two_j", two_j}, {"m", json::array()}, {"c", json::array()}};
    for (int k = 0; k < d; ++k) doc["m"].push_back(0.5 * j.two_m_at(k));
    for (int r = 0; r < d; ++r) {
      json row = json::array();
      for (int c = 0; c < d; ++c) row.push_back(table.c(r, c));
      doc["c"].push_back(row);
    }
    os << doc.dump(2) << '\n';
  } else {
    for (int k = 0; k < d; ++k) os << (k ? "," : "") << fmt12(0.5 * j.two_m_at(k));
    os << '\n';
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) os << (c ? "," : "") << fmt12(table.c(r, c));
      os << '\n';
    }
  }
  return emit(os.str(), out_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal information-disturbance tradeoff for spin coherent state estimation"};
  app.require_subcommand(1);

  int two_j = 2;
  int points = 101;
  double g_target = 0.0;
  double tol = 1e-8;
  long samples = 100000;
  std::uint64_t seed = 12345;
  std::string format = "csv";
  std::string out_path;
  bool ho_overlay = false;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--two-j", two_j, "Spin as the integer 2j")
        ->required()
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", out_path, "Output path (default: stdout)");
  };

  CLI::App* curve = app.add_subcommand("curve", "Sweep the Pareto frontier over a uniform p-grid");
  add_common(curve);
  curve->add_option("--points", points, "Grid size")->check(CLI::Range(2, 1000000));
  curve->add_flag("--ho-overlay", ho_overlay,
                  "Append the harmonic-oscillator curve D_ho(I) as a column");

  CLI::App* point = app.add_subcommand("point", "Minimum-disturbing instrument at a fixed estimation fidelity");
  add_common(point);
  point->add_option("--g", g_target, "Estimation fidelity target")->required();
  point->add_option("--tol", tol, "Bisection tolerance on G")->check(CLI::PositiveNumber);

  CLI::App* verify = app.add_subcommand("verify", "Run the numerical oracle suite");
  add_common(verify);
  verify->add_option("--samples", samples, "Monte Carlo sample count")
      ->check(CLI::Range(1000L, 1000000000L));
  verify->add_option("--seed", seed, "Monte Carlo seed")
      ->envname("SPIN_TRADEOFF_SEED");

  CLI::App* cg = app.add_subcommand("cg-table", "Emit the stretched Clebsch-Gordan table");
  add_common(cg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (app.got_subcommand(curve))
      return cmd_curve(two_j, points, ho_overlay, format, out_path);
    if (app.got_subcommand(point))
      return cmd_point(two_j, g_target, tol, format, out_path);
    if (app.got_subcommand(verify))
      return cmd_verify(two_j, samples, seed, format, out_path);
    if (app.got_subcommand(cg))
      return cmd_cg_table(two_j, format, out_path);
    std::cerr << "error: no subcommand\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const numeric_error& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
}
