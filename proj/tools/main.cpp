// entwig: entropy operators and Wigner surfaces for a qubit coupled
// dispersively to a cavity mode.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "entwig/run.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitResidual = 2;
constexpr int kExitGuard = 3;

void write_output(const std::string& path, const std::string& payload,
                  const std::string& summary) {
  if (path.empty() || path == "-") {
    std::cout << payload;
    if (!summary.empty()) std::cerr << summary << '\n';
  } else {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw entwig::ValidationError("cannot open output file '" + path + "'");
    out << payload;
    if (!summary.empty()) std::cout << summary << '\n';
  }
}

struct CliOptions {
  entwig::RunConfig cfg;
  std::string chit_spec;
  double t_start = 0.0, t_end = 0.0;
  int t_steps = 1;
  bool chi_given = false;
  std::string grid_x = "-3:3:21";
  std::string grid_y = "-3:3:21";
  std::string source = "both";
  std::string convention = "paper";
  std::string format = "csv";
  std::string out_path;
};

void resolve_common(CliOptions& o) {
  if (!o.chit_spec.empty()) {
    if (o.chi_given) {
      throw entwig::ValidationError("--chit and --chi are mutually exclusive");
    }
    o.cfg.use_chit = true;
    o.cfg.scan_given = true;
    o.cfg.chit = entwig::RangeSpec::parse(o.chit_spec);
  } else if (o.chi_given) {
    o.cfg.use_chit = false;
    o.cfg.scan_given = true;
    o.cfg.t_range = {o.t_start, o.t_end, o.t_steps};
  }
  if (o.format == "csv") {
    o.cfg.format = entwig::OutputFormat::csv;
  } else if (o.format == "json") {
    o.cfg.format = entwig::OutputFormat::json;
  } else {
    throw entwig::ValidationError("--format must be csv or json");
  }
  if (o.convention == "paper") {
    o.cfg.convention = entwig::WignerConvention::paper;
  } else if (o.convention == "standard") {
    o.cfg.convention = entwig::WignerConvention::standard;
  } else {
    throw entwig::ValidationError("--convention must be paper or standard");
  }
  if (o.source == "series") {
    o.cfg.source = entwig::WignerSource::series;
  } else if (o.source == "closed") {
    o.cfg.source = entwig::WignerSource::closed;
  } else if (o.source == "both") {
    o.cfg.source = entwig::WignerSource::both;
  } else {
    throw entwig::ValidationError("--source must be series, closed or both");
  }
}

void add_common_flags(CLI::App* sub, CliOptions& o, double& beta_re, double& beta_im) {
  sub->add_option("--beta-re", beta_re, "coherent amplitude, real part");
  sub->add_option("--beta-im", beta_im, "coherent amplitude, imaginary part");
  sub->add_option("--chit", o.chit_spec,
                  "dimensionless interaction phase chi*t: single value or lo:hi:count "
                  "(fixes chi=1)");
  sub->add_option("--chi", o.cfg.chi, "interaction constant (rad/s)")
      ->each([&o](const std::string&) { o.chi_given = true; });
  sub->add_option("--t-start", o.t_start, "scan start time (s)");
  sub->add_option("--t-end", o.t_end, "scan end time (s)");
  sub->add_option("--t-steps", o.t_steps, "scan step count");
  sub->add_option("--dim", o.cfg.dim, "Fock truncation (0 = auto from |beta|)");
  sub->add_option("--format", o.format, "csv or json");
  sub->add_option("--out", o.out_path, "output path ('-' or empty = stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entropy operators of a dispersively coupled qubit-cavity pair, "
               "with the Wigner surface of the field entropy operator"};
  app.require_subcommand(1);

  CliOptions scan_o, wig_o, ver_o;
  double scan_bre = 1.0, scan_bim = 0.0;
  double wig_bre = 1.0, wig_bim = 0.0;
  double ver_bre = 1.0, ver_bim = 0.0;

  CLI::App* scan = app.add_subcommand(
      "entropy-scan", "entropy, fluctuation and subsystem-equality time series");
  add_common_flags(scan, scan_o, scan_bre, scan_bim);

  CLI::App* wig = app.add_subcommand(
      "wigner", "Wigner surface of the field entropy operator on a phase-space grid");
  add_common_flags(wig, wig_o, wig_bre, wig_bim);
  wig->add_option("--grid-x", wig_o.grid_x, "alpha_x grid as min:max:count");
  wig->add_option("--grid-y", wig_o.grid_y, "alpha_y grid as min:max:count");
  wig->add_option("--source", wig_o.source, "series, closed or both");
  wig->add_option("--convention", wig_o.convention,
                  "paper (bare parity sum) or standard (times 2/pi)");

  CLI::App* ver = app.add_subcommand(
      "verify", "run the identity suite and report residuals vs tolerances");
  add_common_flags(ver, ver_o, ver_bre, ver_bim);
  ver->add_option("--tol-scale", ver_o.cfg.tol_scale,
                  "scale all verification tolerances (diagnostic)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (scan->parsed()) {
      scan_o.cfg.beta = {scan_bre, scan_bim};
      resolve_common(scan_o);
      const entwig::EntropyScan result = entwig::run_entropy_scan(scan_o.cfg);
      const std::string payload = scan_o.cfg.format == entwig::OutputFormat::csv
                                      ? entwig::to_csv(result)
                                      : entwig::to_json(result);
      write_output(scan_o.out_path, payload, "");
      return kExitOk;
    }
    if (wig->parsed()) {
      wig_o.cfg.beta = {wig_bre, wig_bim};
      wig_o.cfg.grid_x = entwig::RangeSpec::parse(wig_o.grid_x);
      wig_o.cfg.grid_y = entwig::RangeSpec::parse(wig_o.grid_y);
      resolve_common(wig_o);
      const entwig::WignerGrid grid = entwig::run_wigner(wig_o.cfg);
      const std::string payload = wig_o.cfg.format == entwig::OutputFormat::csv
                                      ? entwig::to_csv(grid)
                                      : entwig::to_json(grid, wig_o.cfg);
      std::string summary;
      if (grid.series && grid.closed) {
        summary = "max |series - closed| = " + entwig::format_double(grid.max_abs_diff);
      }
      write_output(wig_o.out_path, payload, summary);
      return kExitOk;
    }
    // verify
    ver_o.cfg.beta = {ver_bre, ver_bim};
    resolve_common(ver_o);
    const entwig::VerifyReport report = entwig::run_verify(ver_o.cfg);
    const std::string payload = ver_o.cfg.format == entwig::OutputFormat::csv
                                    ? entwig::to_csv(report)
                                    : entwig::to_json(report);
    write_output(ver_o.out_path, payload, "");
    for (const auto& c : report.checks) {
      std::cerr << (c.pass ? "PASS " : "FAIL ") << c.name
                << " residual=" << entwig::format_double(c.residual)
                << " tol=" << entwig::format_double(c.tolerance) << '\n';
    }
    return report.pass ? kExitOk : kExitResidual;
  } catch (const entwig::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const entwig::TruncationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitGuard;
  } catch (const entwig::NearPureError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitGuard;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}
