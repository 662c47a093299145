#pragma once

#include <optional>
#include <vector>

#include "entwig/field_entropy.hpp"

namespace entwig {

/// alpha = x + i y in the field phase space.
struct PhasePoint {
  double x = 0.0;
  double y = 0.0;

  Complex alpha() const { return {x, y}; }
};

/// `paper` keeps the bare parity expectation sum_n (-1)^n <alpha,n|M|alpha,n>;
/// `standard` multiplies by the customary 2/pi.
enum class WignerConvention { paper, standard };

enum class WignerSource { series, closed, both };

/// Wigner value of a Hermitian field operator at alpha, summed over the
/// displaced-number-state parity series. The sum stops once the tail
/// terms fall below series_tol; throws TruncationError if that never
/// happens inside the truncated basis. The imaginary residue must stay
/// below 1e-10 and is discarded.
double wigner_series(const FieldOperator& op, PhasePoint a, const ModelParams& p,
                     WignerConvention conv = WignerConvention::paper);

/// Closed form of the entropy-operator Wigner function for real beta:
///   e^{-2 beta^2 - 2|alpha|^2 + 4 beta a_x cos(chit)} *
///     [ (F1 + F2/(2 det)) cosh(4 beta a_y sin(chit))
///       - (F2/(2 det)) cos(2 beta [beta sin(2 chit) - 2 a_x sin(chit)]) ].
/// Rejects beta with a nonzero imaginary part.
double wigner_closed_form(PhasePoint a, const ModelParams& p,
                          WignerConvention conv = WignerConvention::paper);

/// Phase-space surface of the field entropy operator over a rectangular
/// grid. When both routes run, max_abs_diff reports their largest
/// disagreement. Row i / column j corresponds to (xs[i], ys[j]).
struct WignerGrid {
  std::vector<double> xs, ys;
  std::optional<Eigen::MatrixXd> series;
  std::optional<Eigen::MatrixXd> closed;
  double max_abs_diff = 0.0;
  ModelParams meta;
  WignerConvention convention = WignerConvention::paper;

  const Eigen::MatrixXd& values() const { return series ? *series : *closed; }
};

/// Unless p.dim overrides it, the truncation is widened to hold the
/// displacement headroom |beta| + max|alpha| over the grid.
WignerGrid wigner_grid(const ModelParams& p, const std::vector<double>& xs,
                       const std::vector<double>& ys, WignerSource source,
                       WignerConvention conv = WignerConvention::paper);

}  // namespace entwig
