#pragma once

namespace bilmax {

/// Bessel function of the first kind J_nu(z) for real nu >= 0, z >= 0.
double bessel_j(double nu, double z);

/// J_nu(z) / z^nu, continuous at z = 0 where it equals 1 / (2^nu Gamma(nu+1)).
double bessel_j_scaled(double nu, double z);

}  // namespace bilmax
