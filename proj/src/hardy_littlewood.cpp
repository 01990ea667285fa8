#include "bilmax/bilinear.hpp"

#include <algorithm>

#include "bilmax/parallel.hpp"

namespace bilmax {

Field hl_maximal(const Field& f) {
  const Grid& g = f.grid();
  const int n = g.dim;
  const Index N = g.points;
  const Index kmax = N / 2;

  // Lattice offsets with |o| <= kmax, ordered by squared length.
  struct Offset {
    Index r2;
    MultiIndex o;
  };
  std::vector<Offset> offsets;
  MultiIndex o = MultiIndex::Constant(n, -kmax);
  while (true) {
    const Index r2 = o.squaredNorm();
    if (r2 <= kmax * kmax) offsets.push_back({r2, o});
    int ax = n - 1;
    while (ax >= 0 && o[ax] == kmax) o[ax--] = -kmax;
    if (ax < 0) break;
    ++o[ax];
  }
  std::stable_sort(offsets.begin(), offsets.end(),
                   [](const Offset& a, const Offset& b) { return a.r2 < b.r2; });

  // cut[k] = number of offsets in the ball of radius k h.
  std::vector<std::size_t> cut(static_cast<std::size_t>(kmax) + 1, 0);
  for (Index k = 1; k <= kmax; ++k) {
    std::size_t c = cut[static_cast<std::size_t>(k - 1)];
    while (c < offsets.size() && offsets[c].r2 <= k * k) ++c;
    cut[static_cast<std::size_t>(k)] = c;
  }

  const Eigen::ArrayXd mod = f.modulus();
  Eigen::ArrayXd out(g.size());
  parallel_for(static_cast<std::size_t>(g.size()), [&](std::size_t flat) {
    const MultiIndex at = g.unravel(static_cast<Index>(flat));
    MultiIndex q(n);
    double sum = 0.0, best = mod[static_cast<Index>(flat)];
    std::size_t i = 0, members = 0;
    for (Index k = 1; k <= kmax; ++k) {
      for (; i < cut[static_cast<std::size_t>(k)]; ++i) {
        bool inside = true;
        for (int ax = 0; ax < n; ++ax) {
          q[ax] = at[ax] + offsets[i].o[ax];
          inside = inside && q[ax] >= 0 && q[ax] < N;
        }
        if (inside) {
          sum += mod[g.ravel(q)];
          ++members;
        }
      }
      best = std::max(best, sum / static_cast<double>(members));
    }
    out[static_cast<Index>(flat)] = best;
  });
  return Field(g, out.cast<std::complex<double>>());
}

}  // namespace bilmax
