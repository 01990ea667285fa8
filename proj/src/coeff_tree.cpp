#include "bilmax/coeff_tree.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace bilmax {

CoeffTree::CoeffTree(int dims, std::vector<Entry> entries, int j) : dims_(dims), j_(j) {
  for (const auto& [idx, value] : entries)
    if (idx.dims != dims || !idx.valid())
      throw InvalidParameterError("coefficient index does not fit a " + std::to_string(dims) +
                                  "-dimensional tree");
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (auto& e : entries) {
    if (!entries_.empty() && entries_.back().first == e.first)
      entries_.back().second += e.second;
    else
      entries_.push_back(e);
  }
  std::erase_if(entries_, [](const Entry& e) { return std::abs(e.second) < kDropBelow; });
  for (const auto& e : entries_) linf_ = std::max(linf_, std::abs(e.second));
}

std::optional<double> CoeffTree::find(const WaveletIndex& idx) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), idx,
                             [](const Entry& e, const WaveletIndex& i) { return e.first < i; });
  if (it == entries_.end() || !(it->first == idx)) return std::nullopt;
  return it->second;
}

double CoeffTree::lr(double r) const {
  if (!(r >= 1.0)) throw InvalidParameterError("l^r norm needs r >= 1");
  if (linf_ == 0.0) return 0.0;
  if (std::isinf(r)) return linf_;
  double acc = 0.0;
  for (const auto& e : entries_) acc += std::pow(std::abs(e.second) / linf_, r);
  return linf_ * std::pow(acc, 1.0 / r);
}

double CoeffTree::energy() const {
  double acc = 0.0;
  for (const auto& e : entries_) acc += e.second * e.second;
  return acc;
}

int CoeffTree::max_gamma() const {
  int g = -1;
  for (const auto& e : entries_) g = std::max(g, e.first.gamma);
  return g;
}

void CoeffTree::write(std::ostream& os) const {
  os << "# coeff-tree dims " << dims_ << " j " << j_ << " entries " << entries_.size() << '\n';
  os << std::setprecision(17);
  for (const auto& [idx, value] : entries_) {
    os << idx.gamma << ' ' << idx.mask_string();
    for (int a = 0; a < dims_; ++a) os << ' ' << idx.mu[static_cast<std::size_t>(a)];
    os << ' ' << value << '\n';
  }
}

CoeffTree CoeffTree::read(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw InvalidParameterError("empty coefficient stream");
  std::istringstream head(line);
  std::string hash, tag, dims_key, j_key, entries_key;
  int dims = 0, j = -1;
  std::size_t count = 0;
  if (!(head >> hash >> tag >> dims_key >> dims >> j_key >> j >> entries_key >> count) ||
      tag != "coeff-tree")
    throw InvalidParameterError("malformed coefficient header: " + line);
  std::vector<Entry> entries;
  entries.reserve(count);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    WaveletIndex idx;
    idx.dims = dims;
    std::string mask;
    double value = 0.0;
    row >> idx.gamma >> mask;
    if (static_cast<int>(mask.size()) != dims)
      throw InvalidParameterError("malformed coefficient row: " + line);
    for (int a = 0; a < dims; ++a) {
      if (mask[static_cast<std::size_t>(a)] == 'M') idx.mask |= 1u << a;
      row >> idx.mu[static_cast<std::size_t>(a)];
    }
    if (!(row >> value)) throw InvalidParameterError("malformed coefficient row: " + line);
    entries.emplace_back(idx, value);
  }
  if (entries.size() != count) throw InvalidParameterError("coefficient count mismatch");
  return CoeffTree(dims, std::move(entries), j);
}

}  // namespace bilmax
