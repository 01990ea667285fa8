#include "bilmax/wavelet_system.hpp"

#include <Eigen/Dense>

#include <cmath>

#include "bilmax/daubechies.hpp"

namespace bilmax {

namespace {

constexpr double kCascadeTolerance = 1e-9;
constexpr int kCascadeIterations = 40;

// phi at the integers 0..L-1 as the fixed point of
//   phi(m) = sqrt2 sum_p h_{2m-p} phi(p),
// normalized by sum_m phi(m) = 1.
Eigen::VectorXd phi_at_integers(const std::vector<double>& h) {
  const int len = static_cast<int>(h.size());
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(len, len);
  for (int m = 0; m < len; ++m)
    for (int p = 0; p < len; ++p) {
      const int idx = 2 * m - p;
      if (idx >= 0 && idx < len) T(m, p) = std::sqrt(2.0) * h[static_cast<std::size_t>(idx)];
    }
  Eigen::VectorXd v = Eigen::VectorXd::Zero(len);
  v[0] = 1.0;
  bool converged = false;
  for (int it = 0; it < kCascadeIterations; ++it) {
    Eigen::VectorXd next = T * v;
    next /= next.sum();
    const double diff = (next - v).cwiseAbs().maxCoeff();
    v = next;
    if (diff < kCascadeTolerance) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw NumericError("cascade iteration did not settle within " +
                       std::to_string(kCascadeIterations) + " steps");
  // Exact eigenvector: (T - I) v = 0 with sum v = 1, solved in least squares.
  Eigen::MatrixXd A(len + 1, len);
  A.topRows(len) = T - Eigen::MatrixXd::Identity(len, len);
  A.row(len).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(len + 1);
  b[len] = 1.0;
  Eigen::VectorXd exact = A.colPivHouseholderQr().solve(b);
  if ((exact - v).cwiseAbs().maxCoeff() > 1e-6)
    throw NumericError("cascade fixed point disagrees with the eigenvector solve");
  return exact;
}

}  // namespace

double WaveletSystem::support_diameter(int dims) const {
  return std::sqrt(static_cast<double>(dims)) * support_length();
}

double WaveletSystem::factor(bool mother, double x) const {
  const Eigen::ArrayXd& table = mother ? psi : phi;
  const double t = std::ldexp(x, resolution);
  if (!(t > 0.0) || t >= static_cast<double>(table.size() - 1)) return 0.0;
  const double base = std::floor(t);
  const auto i = static_cast<Index>(base);
  const double frac = t - base;
  if (frac == 0.0) return table[i];
  return (1.0 - frac) * table[i] + frac * table[i + 1];
}

WaveletSystem build_wavelet_system(int k, int resolution) {
  if (k < 2 || k > 10) throw TableError("wavelet order must be in 2..10, got " + std::to_string(k));
  if (resolution < 10 || resolution > 20)
    throw InvalidParameterError("wavelet table resolution must be in 10..20");
  WaveletSystem sys;
  sys.order = k;
  sys.resolution = resolution;
  sys.filter = daubechies_filter(k + 1);
  const int len = static_cast<int>(sys.filter.size());
  sys.highpass.resize(sys.filter.size());
  for (int n = 0; n < len; ++n)
    sys.highpass[static_cast<std::size_t>(n)] =
        ((n % 2) ? -1.0 : 1.0) * sys.filter[static_cast<std::size_t>(len - 1 - n)];

  const Eigen::VectorXd integers = phi_at_integers(sys.filter);
  const Index stride = Index{1} << resolution;
  const Index size = (len - 1) * stride + 1;
  sys.phi = Eigen::ArrayXd::Zero(size);
  for (int m = 0; m < len; ++m) sys.phi[m * stride] = integers[m];

  // Dyadic refinement: at step r fill the odd multiples of 2^{-r} from
  // phi(x) = sqrt2 sum_n h_n phi(2x - n).
  const double root2 = std::sqrt(2.0);
  for (int r = 1; r <= resolution; ++r) {
    const Index step = stride >> r;  // table offset of 2^{-r}
    for (Index i = step; i < size; i += 2 * step) {
      double acc = 0.0;
      for (int n = 0; n < len; ++n) {
        const Index j = 2 * i - n * stride;  // table offset of 2x - n
        if (j > 0 && j < size - 1) acc += sys.filter[static_cast<std::size_t>(n)] * sys.phi[j];
      }
      sys.phi[i] = root2 * acc;
    }
  }

  sys.psi = Eigen::ArrayXd::Zero(size);
  for (Index i = 0; i < size; ++i) {
    double acc = 0.0;
    for (int n = 0; n < len; ++n) {
      const Index j = 2 * i - n * stride;
      if (j > 0 && j < size - 1) acc += sys.highpass[static_cast<std::size_t>(n)] * sys.phi[j];
    }
    sys.psi[i] = root2 * acc;
  }
  return sys;
}

std::string WaveletIndex::mask_string() const {
  std::string s(static_cast<std::size_t>(dims), 'F');
  for (int a = 0; a < dims; ++a)
    if (mother(a)) s[static_cast<std::size_t>(a)] = 'M';
  return s;
}

double tensor_wavelet_eval(const WaveletSystem& sys, const WaveletIndex& idx, const Point& x) {
  if (x.size() != idx.dims) throw InvalidParameterError("point dimension does not match index");
  double value = 1.0;
  const double scale = std::ldexp(1.0, idx.gamma);
  for (int a = 0; a < idx.dims; ++a) {
    value *= sys.factor(idx.mother(a), scale * x[a] - idx.mu[static_cast<std::size_t>(a)]);
    if (value == 0.0) return 0.0;
  }
  return value * std::pow(2.0, idx.gamma * idx.dims / 2.0);
}

}  // namespace bilmax
