#include "quantlab/convergence.hpp"

#include <cmath>

#include "quantlab/errors.hpp"

namespace quantlab {

SlopeFit loglog_slope(const std::vector<double>& x, const std::vector<double>& y, double floor) {
  if (x.size() != y.size()) throw ShapeError("slope fit needs equally many abscissae and values");
  SlopeFit fit;
  for (std::size_t i = 1; i < y.size(); ++i)
    if (y[i] > y[i - 1] && y[i] > floor) fit.monotone = false;

  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0)) throw DomainError("slope fit abscissae must be positive");
    if (y[i] > floor) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  fit.points = static_cast<int>(lx.size());
  if (fit.points < 2) {
    fit.exact = fit.points == 0;
    fit.slope = fit.exact ? -INFINITY : NAN;
    return fit;
  }
  const double n = fit.points;
  double sx = 0, sy = 0;
  for (int i = 0; i < fit.points; ++i) {
    sx += lx[i];
    sy += ly[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (int i = 0; i < fit.points; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0.0) throw DomainError("slope fit needs at least two distinct abscissae");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

}  // namespace quantlab
