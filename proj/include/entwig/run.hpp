#pragma once

#include <string>
#include <vector>

#include "entwig/wigner.hpp"

namespace entwig {

/// "lo:hi:count" (count >= 1; lo==hi allowed when count==1).
struct RangeSpec {
  double lo = 0.0;
  double hi = 0.0;
  int count = 1;

  static RangeSpec parse(const std::string& text);
  std::vector<double> points() const;
};

enum class OutputFormat { csv, json };

/// Resolved configuration for one CLI invocation.
struct RunConfig {
  Complex beta{1.0, 0.0};
  double chi = 1.0;
  // either a dimensionless chi*t scan...
  bool use_chit = true;
  bool scan_given = false;  // user supplied a time parameterization
  RangeSpec chit{0.0, 0.0, 1};
  // ...or physical chi with a time range
  RangeSpec t_range{0.0, 0.0, 1};
  int dim = 0;  // 0 = auto
  RangeSpec grid_x{-3.0, 3.0, 21};
  RangeSpec grid_y{-3.0, 3.0, 21};
  WignerSource source = WignerSource::both;
  WignerConvention convention = WignerConvention::paper;
  OutputFormat format = OutputFormat::csv;
  Tolerances tol;
  double tol_scale = 1.0;  // verify only: scales every check tolerance

  std::vector<double> times() const;  // physical t values of the scan
  ModelParams params_at(double t) const;
  void validate() const;
};

/// One row of the entropy time series.
struct EntropyScanRow {
  double t = 0.0;
  double eps = 0.0;
  double det = 0.25;
  double s_a_mean = 0.0;
  double s_a_fluct = 0.0;
  double s_b_mean = 0.0;
  double entropy_gap = 0.0;  // |<S_A> - Tr(rho_B S_B)|
};

struct EntropyScan {
  RunConfig cfg;
  std::vector<EntropyScanRow> rows;
};

struct VerifyCheck {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerifyReport {
  RunConfig cfg;
  std::vector<VerifyCheck> checks;
  std::vector<std::string> notes;
  bool pass = true;
};

EntropyScan run_entropy_scan(const RunConfig& cfg);
WignerGrid run_wigner(const RunConfig& cfg);
VerifyReport run_verify(const RunConfig& cfg);

/// Serializers. Deterministic: fixed column order, fixed row order, every
/// number printed with 17 significant digits, '\n' line ends.
std::string to_csv(const EntropyScan& scan);
std::string to_json(const EntropyScan& scan);
std::string to_csv(const WignerGrid& grid);
std::string to_json(const WignerGrid& grid, const RunConfig& cfg);
std::string to_csv(const VerifyReport& report);
std::string to_json(const VerifyReport& report);

/// %.17g rendering used by every serializer.
std::string format_double(double v);

}  // namespace entwig
