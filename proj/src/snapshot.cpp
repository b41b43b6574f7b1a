#include "vbgk/snapshot.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <fstream>
#include <istream>
#include <ostream>

#include "vbgk/errors.hpp"

namespace vbgk {

namespace {

template <typename U>
void put_le(std::ostream& out, U value) {
  std::array<char, sizeof(U)> bytes;
  for (std::size_t i = 0; i < sizeof(U); ++i)
    bytes[i] = static_cast<char>((value >> (8 * i)) & 0xff);
  out.write(bytes.data(), bytes.size());
}

template <typename U>
U get_le(std::istream& in) {
  std::array<unsigned char, sizeof(U)> bytes;
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!in) throw ParseError("snapshot truncated", 0);
  U value = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i)
    value |= static_cast<U>(bytes[i]) << (8 * i);
  return value;
}

void put_f64(std::ostream& out, double v) {
  put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(v));
}

double get_f64(std::istream& in) {
  return std::bit_cast<double>(get_le<std::uint64_t>(in));
}

}  // namespace

void write_snapshot(std::ostream& out, const Snapshot& snap) {
  if (snap.components.empty() || snap.components.size() > 255)
    throw InvalidArgument("snapshot needs 1..255 components");
  const Grid& g = snap.components.front().grid;
  for (const auto& c : snap.components)
    if (!(c.grid == g)) throw DimensionMismatch("snapshot components differ in grid");

  out.write(kSnapshotMagic, sizeof(kSnapshotMagic));
  put_le<std::uint16_t>(out, kSnapshotVersion);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(g.n()));
  put_le<std::uint8_t>(out, static_cast<std::uint8_t>(snap.components.size()));
  put_f64(out, snap.time);
  for (const auto& c : snap.components)
    for (double v : c.values) put_f64(out, v);
  if (!out) throw Error("failed writing snapshot");
}

void write_snapshot(const std::string& path, const Snapshot& snap) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  write_snapshot(out, snap);
}

Snapshot read_snapshot(std::istream& in) {
  char magic[5];
  in.read(magic, sizeof(magic));
  if (!in || !std::equal(magic, magic + 5, kSnapshotMagic))
    throw ParseError("not a VBGK1 snapshot", 0);
  const auto version = get_le<std::uint16_t>(in);
  if (version != kSnapshotVersion)
    throw ParseError("unsupported snapshot version " + std::to_string(version), 0);
  const auto n = get_le<std::uint32_t>(in);
  const auto count = get_le<std::uint8_t>(in);
  if (n < 8 || n % 2 != 0 || n > 1u << 15)
    throw ParseError("invalid snapshot grid size " + std::to_string(n), 0);
  if (count == 0) throw ParseError("snapshot has no components", 0);

  Snapshot snap;
  snap.time = get_f64(in);
  const Grid g(static_cast<int>(n));
  snap.components.reserve(count);
  for (int c = 0; c < count; ++c) {
    ScalarField f(g);
    for (auto& v : f.values) v = get_f64(in);
    snap.components.push_back(std::move(f));
  }
  if (in.peek() != std::char_traits<char>::eof())
    throw ParseError("trailing bytes after snapshot payload", 0);
  return snap;
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open snapshot '" + path + "'", 0);
  return read_snapshot(in);
}

}  // namespace vbgk
