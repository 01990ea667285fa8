#pragma once

#include <vector>

namespace bilmax {

/// Daubechies low-pass filter h with the given number of vanishing moments;
/// length 2 * vanishing_moments, sum sqrt(2), unit l2 norm.
const std::vector<double>& daubechies_filter(int vanishing_moments);

}  // namespace bilmax
