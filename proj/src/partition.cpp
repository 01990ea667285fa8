#include "bilmax/partition.hpp"

#include <cmath>

namespace bilmax {

namespace {

// Exponent 1/t - 1/(1-t) of the logistic form of smooth_step.
double step_exponent(double t) { return 1.0 / t - 1.0 / (1.0 - t); }

// Hormander base profile and its derivative.
double hormander_phi(double rho) { return 1.0 - smooth_step(rho - 1.0); }
double hormander_dphi(double rho) { return -smooth_step_derivative(rho - 1.0); }

// Riesz base profile beta(v) = 1 - smooth_step(2v - 1).
double beta(double v) { return 1.0 - smooth_step(2.0 * v - 1.0); }
double dbeta(double v) { return -2.0 * smooth_step_derivative(2.0 * v - 1.0); }

}  // namespace

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double x = step_exponent(t);
  if (x > 700.0) return 0.0;
  if (x < -700.0) return 1.0;
  return 1.0 / (1.0 + std::exp(x));
}

double smooth_step_derivative(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const double x = step_exponent(t);
  if (std::abs(x) > 700.0) return 0.0;
  const double s = 1.0 / (1.0 + std::exp(x));
  return s * (1.0 - s) * (1.0 / (t * t) + 1.0 / ((1.0 - t) * (1.0 - t)));
}

double DyadicPartition::phi_hat(double rho) const {
  return flavor_ == PartitionFlavor::hormander ? hormander_phi(rho) : 1.0 - beta(2.0 * (1.0 - rho));
}

double DyadicPartition::psi(int j, double rho) const {
  if (j < 0) throw InvalidParameterError("partition index must be >= 0");
  if (flavor_ == PartitionFlavor::hormander) {
    const double outer = hormander_phi(std::ldexp(rho, -j - 1));
    return j == 0 ? outer : outer - hormander_phi(std::ldexp(rho, -j));
  }
  if (rho >= 1.0) return 0.0;
  const double u = 1.0 - rho;
  if (j == 0) return 1.0 - beta(2.0 * u);
  return beta(std::ldexp(u, j)) - beta(std::ldexp(u, j + 1));
}

double DyadicPartition::psi_derivative(int j, double rho) const {
  if (j < 0) throw InvalidParameterError("partition index must be >= 0");
  if (flavor_ == PartitionFlavor::hormander) {
    const double outer = std::ldexp(hormander_dphi(std::ldexp(rho, -j - 1)), -j - 1);
    return j == 0 ? outer : outer - std::ldexp(hormander_dphi(std::ldexp(rho, -j)), -j);
  }
  if (rho >= 1.0) return 0.0;
  const double u = 1.0 - rho;
  if (j == 0) return -2.0 * dbeta(2.0 * u);
  return -std::ldexp(dbeta(std::ldexp(u, j)), j) + std::ldexp(dbeta(std::ldexp(u, j + 1)), j + 1);
}

Annulus DyadicPartition::annulus(int j) const {
  if (flavor_ == PartitionFlavor::hormander)
    return j == 0 ? Annulus{0.0, 4.0} : Annulus{std::ldexp(1.0, j), std::ldexp(1.0, j + 2)};
  return j == 0 ? Annulus{0.0, 0.75}
                : Annulus{1.0 - std::ldexp(1.0, -j), 1.0 - std::ldexp(1.0, -j - 2)};
}

double DyadicPartition::covered_radius(int j_max) const {
  if (flavor_ == PartitionFlavor::hormander) return std::ldexp(1.0, j_max + 1);
  return 1.0 - std::ldexp(1.0, -j_max - 1);
}

}  // namespace bilmax
