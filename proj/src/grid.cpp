#include "bilmax/grid.hpp"

#include <sstream>

namespace bilmax {

Index fft_friendly_size(Index n) {
  if (n < 2) n = 2;
  for (Index candidate = n + (n % 2);; candidate += 2) {
    Index rest = candidate;
    for (Index p : {2, 3, 5, 7})
      while (rest % p == 0) rest /= p;
    if (rest == 1) return candidate;
  }
}

std::string describe(const Grid& grid) {
  std::ostringstream os;
  os << "grid(dim=" << grid.dim << ", N=" << grid.points << ", L=" << grid.extent << ")";
  return os.str();
}

}  // namespace bilmax
