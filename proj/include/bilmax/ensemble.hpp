#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "bilmax/field.hpp"
#include "bilmax/square_function.hpp"

namespace bilmax {

// Random inputs for operator-norm proxies. Each trial draws a few Gaussian
// wave packets whose spectra are multiplied by a smooth window supported in
// the band, so f^ vanishes outside the band exactly. Inputs have unit L^2 norm.
struct TrialEnsemble {
  std::uint64_t seed = 0;
  std::size_t count = 1;
  Grid grid;
  Band band_f;
  Band band_g;
  int packets = 3;
  /// Packet centers are drawn from [-spread L, spread L]^n.
  double spread = 0.125;

  /// Trial i depends only on (seed, i).
  std::pair<Field, Field> draw(std::size_t trial) const;
};

/// Unit-L^2 band-limited packet field; stream selects an independent draw.
Field random_band_limited(const Grid& grid, const Band& band, std::uint64_t seed,
                          std::uint64_t stream, int packets = 3, double spread = 0.125);

struct RatioStatistics {
  std::vector<double> ratios;  ///< per trial, in trial order
  double max = 0.0;
  double mean = 0.0;
  double median = 0.0;
  double q90 = 0.0;
};

using BilinearOp = std::function<Field(const Field&, const Field&)>;

/// ||T(f,g)||_{L^1} over unit-norm pairs; a lower bound for the operator norm.
RatioStatistics norm_ratio_estimate(const BilinearOp& op, const TrialEnsemble& ensemble);

RatioStatistics summarize(std::vector<double> ratios);

}  // namespace bilmax
