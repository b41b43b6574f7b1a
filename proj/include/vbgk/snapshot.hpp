#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "vbgk/grid.hpp"

namespace vbgk {

/// Binary field snapshot.
///
/// Layout (all little-endian):
///   "VBGK1"             5 bytes magic
///   version             u16 (currently 1)
///   n                   u32 grid points per axis
///   components          u8
///   time                f64
///   payload             f64 x n*n*components, component-major, each
///                       component row-major as in ScalarField
struct Snapshot {
  double time = 0.0;
  std::vector<ScalarField> components;
};

inline constexpr char kSnapshotMagic[5] = {'V', 'B', 'G', 'K', '1'};
inline constexpr std::uint16_t kSnapshotVersion = 1;
inline constexpr std::size_t kSnapshotHeaderBytes = 5 + 2 + 4 + 1 + 8;

void write_snapshot(std::ostream& out, const Snapshot& snap);
void write_snapshot(const std::string& path, const Snapshot& snap);
/// Throws ParseError on a bad magic, unknown version or truncated payload.
Snapshot read_snapshot(std::istream& in);
Snapshot read_snapshot(const std::string& path);

}  // namespace vbgk
