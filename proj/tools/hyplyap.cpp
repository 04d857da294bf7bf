#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyplyap/calabi_yau.hpp"
#include "hyplyap/error.hpp"
#include "hyplyap/experiments.hpp"
#include "hyplyap/geodesic.hpp"
#include "hyplyap/hodge.hpp"
#include "hyplyap/lyapunov.hpp"
#include "hyplyap/monodromy.hpp"
#include "hyplyap/params.hpp"
#include "hyplyap/winding.hpp"

namespace {

using json = nlohmann::json;
using namespace hyplyap;

struct GlobalOptions {
  std::uint64_t digits = 0;  // 0: experiment default
  std::uint64_t seed = 1;
  int workers = 1;
  int windows = 20;
  int qr_period = 8;
  int refresh = geodesic::kDefaultRefreshPeriod;
  std::string time = "flow";
  std::string out;
  bool json_output = false;
  bool one_sided = false;
};

lyapunov::RunConfig run_config(const GlobalOptions& g, std::uint64_t default_digits) {
  lyapunov::RunConfig cfg;
  cfg.digits = g.digits > 0 ? g.digits : default_digits;
  cfg.seed = g.seed;
  cfg.workers = g.workers;
  cfg.windows = g.windows;
  cfg.qr_period = g.qr_period;
  cfg.refresh_period = g.refresh;
  cfg.time = lyapunov::parse_time_normalization(g.time);
  cfg.two_sided = !g.one_sided;
  return cfg;
}

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json row_json(const experiments::ResultRow& row) {
  json j;
  j["experiment"] = row.experiment;
  j["point"] = row.point;
  for (const auto& [key, value] : {std::pair{"C", row.C}, {"d", row.d}, {"mu1", row.mu1}, {"mu2", row.mu2},
                                   {"r", row.r}, {"x", row.x}, {"y", row.y}}) {
    j[key] = number(value);
  }
  j["n"] = row.n;
  j["lambda"] = row.lambda;
  j["stderr"] = row.lambda_stderr;
  j["sum_positive"] = number(row.sum_positive);
  j["sum_positive_stderr"] = number(row.sum_positive_stderr);
  j["deg_par"] = row.deg_par;
  j["reference"] = number(row.reference);
  j["gap"] = number(row.gap);
  j["gap_stderr"] = number(row.gap_stderr);
  j["flag"] = row.flag;
  j["zone"] = row.zone;
  j["line3"] = number(row.line3);
  j["runtime_s"] = number(row.runtime_s);
  j["digits"] = row.digits;
  j["seed"] = row.seed;
  return j;
}

// Writes to --out when given, stdout otherwise.
void emit(const GlobalOptions& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(g.out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + g.out);
  file << text;
}

void emit_rows(const GlobalOptions& g, const std::vector<experiments::ResultRow>& rows) {
  if (g.json_output) {
    json arr = json::array();
    for (const auto& r : rows) arr.push_back(row_json(r));
    emit(g, arr.dump(2) + "\n");
    return;
  }
  std::ostringstream os;
  experiments::write_csv(os, rows);
  emit(g, os.str());
}

json complex_matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

json estimate_json(const lyapunov::LyapunovEstimate& est) {
  return json{{"exponents", est.exponents},
              {"stderr", est.standard_errors},
              {"sum_positive", est.sum_positive},
              {"sum_positive_stderr", est.sum_positive_stderr},
              {"time", est.elapsed_time},
              {"digits", est.digits_used}};
}

HGParams params_from(const std::string& alpha, const std::string& beta) {
  return HGParams::make(parse_real_list(alpha), parse_real_list(beta));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lyapunov exponents and Hodge invariants of hypergeometric local systems"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file mirroring the command line flags");

  GlobalOptions g;
  app.add_option("--digits", g.digits, "Continued-fraction digits per estimate (0: experiment default)");
  app.add_option("--seed", g.seed, "64-bit seed");
  app.add_option("--workers", g.workers, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--windows", g.windows, "Batches for the standard errors")->check(CLI::Range(2, 100000));
  app.add_option("--qr-period", g.qr_period, "Factors between QR renormalizations")->check(CLI::PositiveNumber);
  app.add_option("--refresh", g.refresh, "Digits between geodesic restarts")->check(CLI::PositiveNumber);
  app.add_option("--time", g.time, "Time normalization: flow, length or digit")
      ->check(CLI::IsMember({"flow", "length", "digit"}));
  app.add_option("--out", g.out, "Output file (default stdout)");
  app.add_flag("--json", g.json_output, "JSON instead of CSV");
  app.add_flag("--one-sided", g.one_sided, "Skip the dual cocycle; the contracting half may lose accuracy");

  auto* cy_table = app.add_subcommand("cy-table", "The 14 Calabi-Yau cases (default 2e6 digits)");

  auto* cy_mu_cmd = app.add_subcommand("cy-mu", "Spectrum (mu1, mu2) of (TS)^-1");
  double cy_c = 0.0, cy_d = 0.0;
  cy_mu_cmd->add_option("--C", cy_c)->required();
  cy_mu_cmd->add_option("--d", cy_d)->required();

  auto* scan_mu = app.add_subcommand("scan-mu", "Calabi-Yau scan of the (mu1, mu2) plane (default 2e5 digits)");
  int grid = 20;
  std::optional<double> mu1_opt, mu2_opt;
  scan_mu->add_option("--grid", grid, "Points (i, j)/(2 grid), 1 <= i <= j <= grid")->check(CLI::PositiveNumber);
  scan_mu->add_option("--mu1", mu1_opt, "Single point instead of a grid");
  scan_mu->add_option("--mu2", mu2_opt);

  auto* n2 = app.add_subcommand("n2", "Rank 2: alpha = (r, 2r), beta = (0, x) (default 1e6 digits)");
  std::optional<double> n2_r, n2_x;
  double rmin = 0.05, rmax = 0.45, xmin = 0.05, xmax = 0.95;
  int rn = 9, xn = 19;
  n2->add_option("--r", n2_r, "Single point r");
  n2->add_option("--x", n2_x, "Single point x");
  n2->add_option("--rmin", rmin);
  n2->add_option("--rmax", rmax);
  n2->add_option("--rn", rn)->check(CLI::PositiveNumber);
  n2->add_option("--xmin", xmin);
  n2->add_option("--xmax", xmax);
  n2->add_option("--xn", xn)->check(CLI::PositiveNumber);

  auto* weight2 = app.add_subcommand("weight2", "Rank 3 weight 2 scan, gaps (x, x, 1/2, y, y) (default 2e5 digits)");
  double wxmin = 0.02, wxmax = 0.12, wymin = 0.02, wymax = 0.12;
  int wxn = 6, wyn = 6;
  weight2->add_option("--xmin", wxmin);
  weight2->add_option("--xmax", wxmax);
  weight2->add_option("--xn", wxn)->check(CLI::PositiveNumber);
  weight2->add_option("--ymin", wymin);
  weight2->add_option("--ymax", wymax);
  weight2->add_option("--yn", wyn)->check(CLI::PositiveNumber);

  std::string alpha, beta;
  auto* hodge_cmd = app.add_subcommand("hodge", "Diagram, Hodge numbers and parabolic degrees (JSON)");
  hodge_cmd->add_option("--alpha", alpha, "Comma separated, decimals or p/q")->required();
  hodge_cmd->add_option("--beta", beta, "Comma separated, decimals or p/q")->required();

  auto* lyap = app.add_subcommand("lyapunov", "Exponents for hypergeometric parameters or a Calabi-Yau (C, d)");
  std::optional<double> ly_c, ly_d;
  lyap->add_option("--alpha", alpha);
  lyap->add_option("--beta", beta);
  lyap->add_option("--C", ly_c);
  lyap->add_option("--d", ly_d);

  auto* mono = app.add_subcommand("monodromy", "Build and verify (M0, M1, Minf) (JSON)");
  mono->add_option("--alpha", alpha)->required();
  mono->add_option("--beta", beta)->required();

  auto* digits_cmd = app.add_subcommand("digits", "Dump the digit stream as CSV");
  std::uint64_t dump_count = 100;
  digits_cmd->add_option("--count", dump_count)->check(CLI::PositiveNumber);

  auto* winding_cmd = app.add_subcommand("winding", "Dump the winding runs as CSV");
  winding_cmd->add_option("--count", dump_count, "Digits to trace")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (cy_table->parsed()) {
      emit_rows(g, experiments::cy_table(run_config(g, 2'000'000)));
    } else if (cy_mu_cmd->parsed()) {
      const auto mu = calabi_yau::cy_mu(cy_c, cy_d);
      emit(g, json{{"C", cy_c}, {"d", cy_d}, {"mu1", mu.mu1}, {"mu2", mu.mu2}}.dump(2) + "\n");
    } else if (scan_mu->parsed()) {
      std::vector<std::pair<double, double>> points;
      if (mu1_opt || mu2_opt) {
        if (!(mu1_opt && mu2_opt)) throw Error(ErrorCode::InvalidParams, "--mu1 and --mu2 go together");
        points.emplace_back(*mu1_opt, *mu2_opt);
      } else {
        points = experiments::mu_grid(grid);
      }
      emit_rows(g, experiments::scan_mu_plane(points, run_config(g, 200'000)));
    } else if (n2->parsed()) {
      const auto cfg = run_config(g, 1'000'000);
      if (n2_r || n2_x) {
        if (!(n2_r && n2_x)) throw Error(ErrorCode::InvalidParams, "--r and --x go together");
        emit_rows(g, {experiments::n2_point(*n2_r, *n2_x, cfg)});
      } else {
        emit_rows(g, experiments::n2_scan(experiments::linspace(rmin, rmax, rn),
                                          experiments::linspace(xmin, xmax, xn), cfg));
      }
    } else if (weight2->parsed()) {
      emit_rows(g, experiments::weight2_scan(experiments::linspace(wxmin, wxmax, wxn),
                                             experiments::linspace(wymin, wymax, wyn), run_config(g, 200'000)));
    } else if (hodge_cmd->parsed()) {
      const HGParams p = params_from(alpha, beta);
      const hodge::Diagram d = hodge::analyze(p);
      const hodge::DegreeReport deg = hodge::parabolic_degrees(d);
      json out{{"f_alpha", d.f_alpha},
               {"f_beta", d.f_beta},
               {"h", d.h},
               {"gamma", d.gamma},
               {"gamma_floor", d.gamma_floor},
               {"signature", {d.p, d.q}},
               {"delta", deg.delta},
               {"deg_par", deg.deg_par}};
      emit(g, out.dump(2) + "\n");
    } else if (lyap->parsed()) {
      const auto cfg = run_config(g, 1'000'000);
      json out;
      if (ly_c || ly_d) {
        if (!(ly_c && ly_d)) throw Error(ErrorCode::InvalidParams, "--C and --d go together");
        out = estimate_json(lyapunov::estimate(calabi_yau::monodromy_set(*ly_c, *ly_d), cfg));
      } else {
        if (alpha.empty() || beta.empty()) throw Error(ErrorCode::InvalidParams, "need --alpha/--beta or --C/--d");
        out = estimate_json(lyapunov::estimate(monodromy::build(params_from(alpha, beta)), cfg));
      }
      emit(g, out.dump(2) + "\n");
    } else if (mono->parsed()) {
      const HGParams p = params_from(alpha, beta);
      const auto ms = monodromy::build(p);
      const auto rep = monodromy::verify(ms, p);
      json out{{"m0", complex_matrix_json(ms.m0)},
               {"m1", complex_matrix_json(ms.m1)},
               {"minf", complex_matrix_json(ms.minf)},
               {"condition_estimate", ms.trace->condition_estimate},
               {"relation_residual", rep.relation.value},
               {"m0_spectrum_distance", rep.m0_spectrum.value},
               {"minf_spectrum_distance", rep.minf_spectrum.value},
               {"m1_rank", rep.m1_rank},
               {"pass", rep.all_pass()}};
      emit(g, out.dump(2) + "\n");
    } else if (digits_cmd->parsed()) {
      std::ostringstream os;
      os.precision(17);
      os << "index,digit,letter,roofTime,refreshed\n";
      const auto stream = geodesic::digit_stream(g.seed, dump_count, g.refresh);
      for (std::size_t i = 0; i < stream.size(); ++i) {
        const auto& e = stream[i];
        os << i << ',' << e.digit << ',' << to_char(e.letter) << ',' << e.roof_time << ','
           << (e.refreshed ? 1 : 0) << '\n';
      }
      emit(g, os.str());
    } else if (winding_cmd->parsed()) {
      std::ostringstream os;
      os << "runIndex,letter,runLength,cusp,turns\n";
      const auto stream = geodesic::digit_stream(g.seed, dump_count, g.refresh);
      winding::Coset c = winding::Coset::Id;
      for (std::size_t i = 0; i < stream.size(); ++i) {
        const auto& e = stream[i];
        const auto ev = winding::classify_run(c, e.letter, e.digit);
        c = winding::run_next(c, e.letter, e.digit);
        os << i << ',' << to_char(e.letter) << ',' << e.digit << ',' << winding::to_char(ev.cusp) << ','
           << ev.turns << '\n';
      }
      emit(g, os.str());
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
