#pragma once

#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "bilmax/wavelet_system.hpp"

namespace bilmax {

/// Sparse wavelet coefficients a_w, sorted by index.
class CoeffTree {
 public:
  using Entry = std::pair<WaveletIndex, double>;

  static constexpr double kDropBelow = 1e-15;

  CoeffTree() = default;
  /// Sorts entries, merges duplicates by summation, drops |a| < 1e-15.
  CoeffTree(int dims, std::vector<Entry> entries, int j = -1);

  int dims() const { return dims_; }
  int j() const { return j_; }
  void set_j(int j) { j_ = j; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<Entry>& entries() const { return entries_; }

  std::optional<double> find(const WaveletIndex& idx) const;
  double linf() const { return linf_; }
  double lr(double r) const;
  double energy() const;
  int max_gamma() const;

  void write(std::ostream& os) const;
  static CoeffTree read(std::istream& is);

 private:
  int dims_ = 2;
  int j_ = -1;
  std::vector<Entry> entries_;
  double linf_ = 0.0;
};

}  // namespace bilmax
