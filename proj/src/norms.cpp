#include "bilmax/norms.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "bilmax/fft.hpp"
#include "bilmax/parallel.hpp"

namespace bilmax {

double lp_norm(const Field& f, double p) {
  if (!(p >= 1.0)) throw InvalidParameterError("lp_norm needs p >= 1");
  if (f.size() == 0) return 0.0;
  const auto mod = f.modulus();
  if (std::isinf(p)) return mod.maxCoeff();
  const double w = f.grid().cell_volume();
  if (p == 1.0) return mod.sum() * w;
  if (p == 2.0) return std::sqrt(mod.square().sum() * w);
  // Scale by the max to keep pow() away from under/overflow.
  const double top = mod.maxCoeff();
  if (top == 0.0) return 0.0;
  return top * std::pow((mod / top).pow(p).sum() * w, 1.0 / p);
}

Field apply_freq_multiplier(const Field& f, const Symbol& w) {
  if (w.freq_dim() != f.grid().dim)
    throw InvalidGridError("multiplier dimension does not match the field");
  const Field F = fft_forward(f);
  return fft_inverse(hadamard(F, w.sample(F.grid())));
}

Field bessel_potential(const Field& samples, double s) {
  if (s == 0.0) return samples;
  const Field F = fft_forward(samples);
  const Grid& dual = F.grid();
  constexpr double four_pi2 = 4.0 * std::numbers::pi * std::numbers::pi;
  Field::Values v = F.values();
  for (Index i = 0; i < dual.size(); ++i)
    v[i] *= std::pow(1.0 + four_pi2 * dual.point(i).squaredNorm(), s / 2.0);
  return fft_inverse(Field(dual, std::move(v)));
}

double sobolev_norm(const Symbol& m, const Grid& freq_grid, double r, double s) {
  if (!(r > 1.0) || std::isinf(r)) throw InvalidParameterError("sobolev_norm needs r in (1, inf)");
  if (!(s >= 0.0)) throw InvalidParameterError("sobolev_norm needs s >= 0");
  freq_grid.validate();
  const double across = m.feature_width() / freq_grid.spacing();
  if (across < kMinSamplesAcrossFeature)
    throw ResolutionError("grid spacing " + std::to_string(freq_grid.spacing()) +
                          " leaves only " + std::to_string(across) +
                          " samples across the support of '" + m.name() + "'");
  if (m.support().bounded() && m.support().outer >= freq_grid.extent / 2)
    throw ResolutionError("support of '" + m.name() + "' does not fit inside " +
                          describe(freq_grid));
  return lp_norm(bessel_potential(m.sample(freq_grid), s), r);
}

double lp_norm_on_lattice(const Symbol& m, double spacing, double p) {
  if (!(p >= 1.0) || std::isinf(p)) throw InvalidParameterError("lattice norm needs finite p >= 1");
  if (!(spacing > 0.0)) throw InvalidParameterError("lattice spacing must be positive");
  const Annulus& supp = m.support();
  if (!supp.bounded()) throw InvalidParameterError("lattice norm needs a bounded support");
  const int dim = m.freq_dim();
  const auto K = static_cast<Index>(std::ceil(supp.outer / spacing));
  const Index side = 2 * K + 1;
  const double outer2 = supp.outer * supp.outer;
  const double inner2 = supp.inner * supp.inner;

  // One partial sum per leading coordinate, reduced in index order.
  std::vector<double> partial(static_cast<std::size_t>(side), 0.0);
  parallel_for(static_cast<std::size_t>(side), [&](std::size_t lead) {
    Point z(dim);
    z[0] = (static_cast<double>(lead) - static_cast<double>(K)) * spacing;
    const double r0 = z[0] * z[0];
    if (r0 > outer2) return;
    double acc = 0.0;
    auto visit = [&](double r2) {
      if (r2 > outer2 || r2 < inner2) return;
      acc += std::pow(std::abs(m(z)), p);
    };
    if (dim == 1) {
      visit(r0);
    } else if (dim == 2) {
      const auto hi = static_cast<Index>(std::floor(std::sqrt(outer2 - r0) / spacing));
      const double in2 = inner2 - r0;
      const Index lo = in2 > 0.0 ? static_cast<Index>(std::floor(std::sqrt(in2) / spacing)) : 0;
      for (Index c = lo; c <= hi; ++c)
        for (int sign : {1, -1}) {
          if (c == 0 && sign < 0) continue;
          z[1] = sign * static_cast<double>(c) * spacing;
          visit(r0 + z[1] * z[1]);
        }
    } else {
      Index rest_count = 1;
      for (int a = 1; a < dim; ++a) rest_count *= side;
      for (Index flat = 0; flat < rest_count; ++flat) {
        Index q = flat;
        double r2 = r0;
        for (int a = dim - 1; a >= 1; --a) {
          z[a] = (static_cast<double>(q % side) - static_cast<double>(K)) * spacing;
          q /= side;
          r2 += z[a] * z[a];
        }
        visit(r2);
      }
    }
    partial[lead] = acc;
  });
  double total = 0.0;
  for (double v : partial) total += v;
  return std::pow(total * std::pow(spacing, dim), 1.0 / p);
}

double radial_lp_norm(const Symbol& m, double p) {
  if (!(p >= 1.0) || std::isinf(p)) throw InvalidParameterError("radial norm needs finite p >= 1");
  if (!m.radial_profile()) throw InvalidParameterError("radial norm needs a radial symbol");
  const Annulus& supp = m.support();
  if (!supp.bounded()) throw InvalidParameterError("radial norm needs a bounded support");
  const int dim = m.freq_dim();
  const double sphere = 2.0 * std::pow(std::numbers::pi, dim / 2.0) / std::tgamma(dim / 2.0);
  auto integrand = [&](double r) { return std::pow(std::abs(m.radial_value(r)), p) * std::pow(r, dim - 1); };
  const double integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      integrand, supp.inner, supp.outer, 20, 1e-14);
  return std::pow(sphere * integral, 1.0 / p);
}

}  // namespace bilmax
