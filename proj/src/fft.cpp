#include "bilmax/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace bilmax {

namespace {

struct PlanCache {
  std::mutex mutex;
  std::map<std::tuple<int, Index, int>, fftw_plan> plans;

  ~PlanCache() {
    for (auto& [key, plan] : plans) fftw_destroy_plan(plan);
  }

  fftw_plan get(int dim, Index n, int sign) {
    std::lock_guard lock(mutex);
    const auto key = std::make_tuple(dim, n, sign);
    if (auto it = plans.find(key); it != plans.end()) return it->second;
    std::vector<int> dims(static_cast<std::size_t>(dim), static_cast<int>(n));
    Index total = 1;
    for (int a = 0; a < dim; ++a) total *= n;
    auto* a = fftw_alloc_complex(static_cast<std::size_t>(total));
    auto* b = fftw_alloc_complex(static_cast<std::size_t>(total));
    fftw_plan plan = fftw_plan_dft(dim, dims.data(), a, b,
                                   sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(a);
    fftw_free(b);
    if (!plan) throw NumericError("FFTW could not create a plan");
    plans.emplace(key, plan);
    return plan;
  }
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

// (-1)^(sum of axis indices) for a row-major flat index.
inline double checker(Index flat, int dim, Index n) {
  Index parity = 0;
  for (int a = 0; a < dim; ++a) {
    parity += flat % n;
    flat /= n;
  }
  return (parity & 1) ? -1.0 : 1.0;
}

Field transform(const Field& f, int sign, double weight_per_axis) {
  const Grid& g = f.grid();
  g.validate();
  const Index total = g.size();
  Field::Values out(total);
  detail::centered_dft(f.values().data(), out.data(), g.dim, g.points, sign);
  const double weight = std::pow(weight_per_axis, g.dim);
  for (Index k = 0; k < total; ++k) out[k] *= weight;
  return Field(g.dual(), std::move(out));
}

}  // namespace

namespace detail {

void centered_dft(const std::complex<double>* in, std::complex<double>* out, int dim,
                  Index n, int sign) {
  if (dim < 1 || n < 2 || n % 2 != 0)
    throw InvalidGridError("centered DFT needs an even side length");
  Index total = 1;
  for (int a = 0; a < dim; ++a) total *= n;
  std::vector<std::complex<double>> buf(in, in + total);
  for (Index i = 0; i < total; ++i) buf[i] *= checker(i, dim, n);
  fftw_plan plan = plan_cache().get(dim, n, sign);
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(buf.data()),
                   reinterpret_cast<fftw_complex*>(out));
  const double global = ((n / 2) % 2 != 0 && dim % 2 != 0) ? -1.0 : 1.0;
  for (Index k = 0; k < total; ++k) out[k] *= global * checker(k, dim, n);
}

}  // namespace detail

Field fft_forward(const Field& f) { return transform(f, -1, f.grid().spacing()); }

Field fft_inverse(const Field& F) { return transform(F, +1, F.grid().spacing()); }

}  // namespace bilmax
