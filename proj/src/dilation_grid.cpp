#include "bilmax/dilation_grid.hpp"

#include <cmath>
#include <sstream>

namespace bilmax {

DilationGrid DilationGrid::log_uniform(double t_min, double t_max, std::size_t count) {
  if (count == 0) throw InvalidParameterError("dilation grid must not be empty");
  if (!(t_min > 0.0) || !(t_max >= t_min))
    throw InvalidParameterError("dilation grid needs 0 < t_min <= t_max");
  if (count == 1 && t_max != t_min)
    throw InvalidParameterError("a single-point dilation grid needs t_min == t_max");
  DilationGrid g;
  const double a = std::log(t_min), b = std::log(t_max);
  const double step = count > 1 ? (b - a) / static_cast<double>(count - 1) : 0.0;
  g.t_.resize(count);
  for (std::size_t i = 0; i < count; ++i) g.t_[i] = std::exp(a + step * static_cast<double>(i));
  g.t_.front() = t_min;
  g.t_.back() = t_max;
  g.log_weight_ = step;
  return g;
}

DilationGrid DilationGrid::per_octave(double t_min, double t_max, int per_octave) {
  if (per_octave < 1) throw InvalidParameterError("per-octave density must be >= 1");
  if (!(t_min > 0.0) || !(t_max >= t_min))
    throw InvalidParameterError("dilation grid needs 0 < t_min <= t_max");
  const double octaves = std::log2(t_max / t_min);
  const auto count = static_cast<std::size_t>(std::ceil(octaves * per_octave - 1e-9)) + 1;
  return log_uniform(t_min, t_max, count);
}

DilationGrid DilationGrid::log_midpoint(double s_lo, double s_hi, std::size_t count) {
  if (count == 0) throw InvalidParameterError("dilation grid must not be empty");
  if (!(s_lo > 0.0) || !(s_hi > s_lo))
    throw InvalidParameterError("midpoint grid needs 0 < s_lo < s_hi");
  DilationGrid g;
  const double a = std::log(s_lo);
  const double step = (std::log(s_hi) - a) / static_cast<double>(count);
  g.t_.resize(count);
  for (std::size_t i = 0; i < count; ++i)
    g.t_[i] = std::exp(a + step * (static_cast<double>(i) + 0.5));
  g.log_weight_ = step;
  g.midpoint_ = true;
  return g;
}

DilationGrid DilationGrid::refined() const {
  if (midpoint_) {
    const double half = 0.5 * log_weight_;
    return log_midpoint(std::exp(std::log(t_.front()) - half), std::exp(std::log(t_.back()) + half),
                        2 * t_.size());
  }
  if (t_.size() == 1) return *this;
  DilationGrid g = log_uniform(t_.front(), t_.back(), 2 * (t_.size() - 1) + 1);
  // Reuse the original nodes bit for bit so the refinement is a superset.
  for (std::size_t i = 0; i < t_.size(); ++i) g.t_[2 * i] = t_[i];
  return g;
}

DilationRange valid_dilation_range(const Symbol& m, const Grid& spatial) {
  const double L = spatial.extent;
  const double nyq = spatial.nyquist();
  DilationRange range;
  range.t_hi = m.feature_width() * L / 4.0;
  range.t_lo = m.support().inner / (std::sqrt(static_cast<double>(m.freq_dim())) * nyq);
  return range;
}

void check_dilation(const Symbol& m, const Grid& spatial, double t, Diagnostics* diag) {
  if (!diag) return;
  const DilationRange range = valid_dilation_range(m, spatial);
  if (t > range.t_hi || t < range.t_lo) {
    std::ostringstream os;
    os << "dilation t = " << t << " outside the faithful range [" << range.t_lo << ", "
       << range.t_hi << "] of " << m.name() << " on " << describe(spatial);
    diag->warn(os.str());
  }
}

}  // namespace bilmax
