#pragma once

#include <string>
#include <vector>

#include "bilmax/grid.hpp"
#include "bilmax/symbol.hpp"

namespace bilmax {

/// Non-fatal findings attached to a computation.
struct Diagnostics {
  std::vector<std::string> warnings;
  void warn(std::string message) { warnings.push_back(std::move(message)); }
  bool clean() const { return warnings.empty(); }
};

// Log-uniform positive dilations. Endpoint grids serve suprema; midpoint grids
// carry weights for integrals in ds/s.
class DilationGrid {
 public:
  /// count points from t_min to t_max inclusive.
  static DilationGrid log_uniform(double t_min, double t_max, std::size_t count);
  /// per_octave points per doubling, endpoints included.
  static DilationGrid per_octave(double t_min, double t_max, int per_octave);
  /// Midpoints in log s of count equal cells of [s_lo, s_hi]; weight = cell width.
  static DilationGrid log_midpoint(double s_lo, double s_hi, std::size_t count);

  const std::vector<double>& t_values() const { return t_; }
  double t_min() const { return t_.front(); }
  double t_max() const { return t_.back(); }
  std::size_t count() const { return t_.size(); }
  /// Quadrature weight in d(log t) of every node.
  double log_weight() const { return log_weight_; }
  bool midpoint() const { return midpoint_; }

  /// Superset with the log spacing halved.
  DilationGrid refined() const;

 private:
  std::vector<double> t_;
  double log_weight_ = 0.0;
  bool midpoint_ = false;
};

// Dilations for which m(t xi, t eta) is represented faithfully on the
// frequency grid of `spatial`: its features keep at least 4 samples
// (t <= w L / 4) and its support reaches the frequency box
// (t >= inner / (sqrt(2n) nyquist)).
struct DilationRange {
  double t_lo = 0.0;
  double t_hi = 0.0;
};

DilationRange valid_dilation_range(const Symbol& m, const Grid& spatial);

void check_dilation(const Symbol& m, const Grid& spatial, double t, Diagnostics* diag);

}  // namespace bilmax
