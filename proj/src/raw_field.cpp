#include "bilmax/raw_field.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace bilmax {

namespace {

static_assert(std::endian::native == std::endian::little,
              "raw field I/O assumes a little-endian host");

constexpr std::size_t kHeaderBytes = 64;

template <typename T>
void put(std::array<char, kHeaderBytes>& buf, std::size_t offset, T value) {
  std::memcpy(buf.data() + offset, &value, sizeof(T));
}

template <typename T>
T get(const std::array<char, kHeaderBytes>& buf, std::size_t offset) {
  T value;
  std::memcpy(&value, buf.data() + offset, sizeof(T));
  return value;
}

}  // namespace

void write_raw_field(const std::string& path, const Field& f, bool complex_values) {
  std::array<char, kHeaderBytes> head{};
  std::memcpy(head.data(), kRawFieldMagic, sizeof(kRawFieldMagic));
  put<std::uint32_t>(head, 8, static_cast<std::uint32_t>(f.grid().dim));
  put<std::uint32_t>(head, 12, complex_values ? 2u : 1u);
  put<std::uint64_t>(head, 16, static_cast<std::uint64_t>(f.grid().points));
  put<double>(head, 24, f.grid().extent);
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InvalidParameterError("cannot open " + path + " for writing");
  os.write(head.data(), head.size());
  for (Index i = 0; i < f.size(); ++i) {
    const double re = f[i].real(), im = f[i].imag();
    os.write(reinterpret_cast<const char*>(&re), sizeof(double));
    if (complex_values) os.write(reinterpret_cast<const char*>(&im), sizeof(double));
  }
  if (!os) throw InvalidParameterError("failed writing " + path);
}

Field read_raw_field(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InvalidParameterError("cannot open " + path);
  std::array<char, kHeaderBytes> head{};
  is.read(head.data(), head.size());
  if (!is || std::memcmp(head.data(), kRawFieldMagic, sizeof(kRawFieldMagic)) != 0)
    throw InvalidParameterError(path + " is not a raw field file");
  const auto dim = get<std::uint32_t>(head, 8);
  const auto components = get<std::uint32_t>(head, 12);
  const auto points = get<std::uint64_t>(head, 16);
  const auto extent = get<double>(head, 24);
  if (components != 1 && components != 2)
    throw InvalidParameterError(path + " declares " + std::to_string(components) + " components");
  const Grid grid = Grid::make(static_cast<int>(dim), static_cast<Index>(points), extent);
  Field::Values v(grid.size());
  for (Index i = 0; i < grid.size(); ++i) {
    double re = 0.0, im = 0.0;
    is.read(reinterpret_cast<char*>(&re), sizeof(double));
    if (components == 2) is.read(reinterpret_cast<char*>(&im), sizeof(double));
    v[i] = {re, im};
  }
  if (!is) throw InvalidParameterError(path + " is truncated");
  return Field(grid, std::move(v));
}

}  // namespace bilmax
