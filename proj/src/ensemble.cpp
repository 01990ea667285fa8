#include "bilmax/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "bilmax/fft.hpp"
#include "bilmax/norms.hpp"
#include "bilmax/parallel.hpp"
#include "bilmax/partition.hpp"

namespace bilmax {

namespace {

// 1 inside the band, smooth roll-off inside 10% of its width at each edge.
double band_window(double r, const Band& band) {
  const double width = band.hi - band.lo;
  if (!(width > 0.0)) return 0.0;
  const double edge = 0.1 * width;
  if (r >= band.hi || (band.lo > 0.0 && r <= band.lo)) return 0.0;
  double w = smooth_step((band.hi - r) / edge);
  if (band.lo > 0.0) w *= smooth_step((r - band.lo) / edge);
  return w;
}

}  // namespace

Field random_band_limited(const Grid& grid, const Band& band, std::uint64_t seed,
                          std::uint64_t stream, int packets, double spread) {
  if (!(band.hi > band.lo) || band.lo < 0.0)
    throw InvalidParameterError("band needs 0 <= lo < hi");
  if (packets < 1) throw InvalidParameterError("need at least one packet");
  const int n = grid.dim;
  const Grid dual = grid.dual();
  if (band.hi > dual.extent / 2.0)
    throw ResolutionError("band upper edge exceeds the nyquist frequency of " + describe(grid));

  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);

  constexpr double pi = std::numbers::pi;
  const double width = band.hi - band.lo;
  const double sigma = 2.0 / width;  // spatial packet width
  struct Packet {
    std::complex<double> c;
    Point center;
    Point freq;
  };
  std::vector<Packet> ps;
  for (int k = 0; k < packets; ++k) {
    Packet p{{normal(rng), normal(rng)}, Point(n), Point(n)};
    for (int a = 0; a < n; ++a) p.center[a] = (2.0 * unit(rng) - 1.0) * spread * grid.extent;
    Point dir(n);
    for (int a = 0; a < n; ++a) dir[a] = normal(rng);
    const double norm = dir.norm();
    const double r = band.lo + (0.1 + 0.8 * unit(rng)) * width;
    p.freq = norm > 0.0 ? Point(dir * (r / norm)) : Point(Point::Zero(n));
    ps.push_back(std::move(p));
  }

  Field::Values spec(dual.size());
  for (Index i = 0; i < dual.size(); ++i) {
    const Point xi = dual.point(i);
    const double w = band_window(xi.norm(), band);
    std::complex<double> acc = 0.0;
    if (w > 0.0)
      for (const auto& p : ps)
        acc += p.c * std::exp(-pi * sigma * sigma * (xi - p.freq).squaredNorm()) *
               std::polar(1.0, -2.0 * pi * xi.dot(p.center));
    spec[i] = w * acc;
  }
  Field f = fft_inverse(Field(dual, std::move(spec)));
  const double l2 = lp_norm(f, 2.0);
  if (l2 == 0.0) throw NumericError("random band-limited draw vanished");
  return (1.0 / l2) * f;
}

std::pair<Field, Field> TrialEnsemble::draw(std::size_t trial) const {
  return {random_band_limited(grid, band_f, seed, 2 * trial, packets, spread),
          random_band_limited(grid, band_g, seed, 2 * trial + 1, packets, spread)};
}

RatioStatistics summarize(std::vector<double> ratios) {
  RatioStatistics st;
  st.ratios = ratios;
  if (ratios.empty()) return st;
  double sum = 0.0;
  for (double r : ratios) sum += r;
  st.mean = sum / static_cast<double>(ratios.size());
  std::sort(ratios.begin(), ratios.end());
  st.max = ratios.back();
  auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(ratios.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, ratios.size() - 1);
    return ratios[lo] + (pos - static_cast<double>(lo)) * (ratios[hi] - ratios[lo]);
  };
  st.median = quantile(0.5);
  st.q90 = quantile(0.9);
  return st;
}

RatioStatistics norm_ratio_estimate(const BilinearOp& op, const TrialEnsemble& ensemble) {
  if (ensemble.count == 0) throw InvalidParameterError("ensemble must not be empty");
  std::vector<double> ratios(ensemble.count);
  parallel_for(ensemble.count, [&](std::size_t i) {
    const auto [f, g] = ensemble.draw(i);
    ratios[i] = lp_norm(op(f, g), 1.0);
  });
  return summarize(std::move(ratios));
}

}  // namespace bilmax
