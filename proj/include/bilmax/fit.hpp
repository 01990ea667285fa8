#pragma once

#include <string>
#include <vector>

namespace bilmax {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
};

/// Ordinary least squares y = intercept + slope * x; needs two distinct x.
LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

enum class SlopeCheck {
  at_most,  ///< slope <= bound + tolerance
  within,   ///< |slope - bound| <= tolerance
};

// Fitted log2-slope of a decaying quantity against one axis, with the raw
// samples kept so the verdict can be recomputed offline.
struct DecayFitReport {
  std::string axis;
  std::vector<double> x;
  std::vector<double> log2_values;
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
  double bound = 0.0;
  double tolerance = 0.0;
  SlopeCheck check = SlopeCheck::at_most;
  bool verdict = false;

  bool recompute_verdict() const;
};

/// Fits log2(values) against x; values must be positive.
DecayFitReport fit_log2_slope(std::string axis, const std::vector<double>& x,
                              const std::vector<double>& values, double bound, double tolerance,
                              SlopeCheck check = SlopeCheck::at_most);

}  // namespace bilmax
