#include "bilmax/bessel.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <numbers>

#include "bilmax/errors.hpp"

namespace bilmax {

namespace {

constexpr double kSeriesLimit = 8.0;
constexpr double pi = std::numbers::pi;

void check_domain(double nu, double z) {
  if (!(nu >= 0.0) || !(z >= 0.0))
    throw DomainError("bessel_j needs nu >= 0 and z >= 0");
}

// sum_k (-1)^k (z/2)^{2k} / (2^nu k! Gamma(k+nu+1)), i.e. J_nu(z) / z^nu.
double scaled_series(double nu, double z) {
  const double q = 0.25 * z * z;
  double term = 1.0 / (std::pow(2.0, nu) * std::tgamma(nu + 1.0));
  double sum = term;
  for (int k = 0; k < 200; ++k) {
    term *= -q / ((k + 1.0) * (k + 1.0 + nu));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum) && k > 2) break;
  }
  return sum;
}

using Rule = boost::math::quadrature::gauss<double, 20>;

template <typename Fn>
double panels(Fn&& fn, double a, double b, int count) {
  const double w = (b - a) / count;
  double acc = 0.0;
  for (int p = 0; p < count; ++p) acc += Rule::integrate(fn, a + p * w, a + (p + 1) * w);
  return acc;
}

double integral_representation(double nu, double z) {
  // About one oscillation of cos(nu theta - z sin theta) per panel.
  const int count = std::max(8, static_cast<int>(std::ceil((z + nu) / 2.0)));
  double value =
      panels([&](double th) { return std::cos(nu * th - z * std::sin(th)); }, 0.0, pi, count) /
      pi;
  const double sin_nu_pi = std::sin(nu * pi);
  if (std::abs(sin_nu_pi) > 1e-15) {
    // Integrand below e^{-60} beyond t_end.
    const double t_end = std::asinh(60.0 / z);
    value -= sin_nu_pi / pi *
             panels([&](double t) { return std::exp(-nu * t - z * std::sinh(t)); }, 0.0,
                    t_end, 16);
  }
  return value;
}

}  // namespace

double bessel_j(double nu, double z) {
  check_domain(nu, z);
  if (z <= kSeriesLimit) return scaled_series(nu, z) * std::pow(z, nu);
  return integral_representation(nu, z);
}

double bessel_j_scaled(double nu, double z) {
  check_domain(nu, z);
  if (z <= kSeriesLimit) return scaled_series(nu, z);
  return integral_representation(nu, z) / std::pow(z, nu);
}

}  // namespace bilmax
