#pragma once

#include <string>

#include "bilmax/field.hpp"

namespace bilmax {

// Binary field dump: a 64-byte header
//   bytes  0..7   magic "BLMXFLD1"
//   bytes  8..11  uint32 dim
//   bytes 12..15  uint32 components (1 real, 2 complex re/im interleaved)
//   bytes 16..23  uint64 points per axis N
//   bytes 24..31  float64 extent L
//   bytes 32..63  zero
// followed by N^dim samples, row-major, little-endian IEEE float64.
inline constexpr char kRawFieldMagic[8] = {'B', 'L', 'M', 'X', 'F', 'L', 'D', '1'};

void write_raw_field(const std::string& path, const Field& f, bool complex_values = true);
Field read_raw_field(const std::string& path);

}  // namespace bilmax
