#include "bilmax/fit.hpp"

#include <cmath>

#include "bilmax/errors.hpp"

namespace bilmax {

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw FitError("fit needs equally many x and y values");
  if (x.size() < 2) throw FitError("fit needs at least two samples");
  const double count = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= count;
  my /= count;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw FitError("fit needs at least two distinct x values");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - fit.intercept - fit.slope * x[i];
    ss += r * r;
  }
  fit.residual_rms = std::sqrt(ss / count);
  return fit;
}

bool DecayFitReport::recompute_verdict() const {
  if (check == SlopeCheck::within) return std::abs(slope - bound) <= tolerance;
  return slope <= bound + tolerance;
}

DecayFitReport fit_log2_slope(std::string axis, const std::vector<double>& x,
                              const std::vector<double>& values, double bound, double tolerance,
                              SlopeCheck check) {
  std::vector<double> logs;
  logs.reserve(values.size());
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw FitError("log2 fit needs positive finite values along axis " + axis);
    logs.push_back(std::log2(v));
  }
  const LinearFit fit = least_squares(x, logs);
  DecayFitReport report;
  report.axis = std::move(axis);
  report.x = x;
  report.log2_values = std::move(logs);
  report.slope = fit.slope;
  report.intercept = fit.intercept;
  report.residual_rms = fit.residual_rms;
  report.bound = bound;
  report.tolerance = tolerance;
  report.check = check;
  report.verdict = report.recompute_verdict();
  return report;
}

}  // namespace bilmax
