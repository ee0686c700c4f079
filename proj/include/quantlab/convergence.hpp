#pragma once

// Least-squares convergence-order fits on log-log data.

#include <vector>

namespace quantlab {

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  int points = 0;
  /// All residuals sat at or below the floor, so there is nothing to fit.
  bool exact = false;
  bool monotone = true;
};

/// Fits log y = slope log x + intercept over the points with y > floor.
SlopeFit loglog_slope(const std::vector<double>& x, const std::vector<double>& y, double floor = 1e-13);

/// A slope criterion that also accepts residuals sitting at the roundoff floor.
inline bool slope_at_most(const SlopeFit& fit, double bound) { return fit.exact || fit.slope <= bound; }

}  // namespace quantlab
