#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ppmlr/physics.hpp"

namespace ppmlr {

// Raw little-endian binary snapshot. Header: magic "PPLR", version u32,
// dims 3 x u32, ghost u32, time f64, step u64, per-axis edge arrays (f64),
// then the 8-byte field-order tag "rvvvbbbp". Payload: interior cells only,
// x fastest, one f64 array per field in the order
// rho, vx, vy, vz, B'x, B'y, B'z, p.
struct Snapshot {
  std::uint32_t version = 1;
  std::array<std::uint32_t, 3> dims{};
  std::uint32_t ghost = 0;
  double time = 0.0;
  std::uint64_t step = 0;
  std::array<std::vector<double>, 3> edges;  // dims[a] + 1 each
  std::vector<PrimitiveState> fields;        // dims[0]*dims[1]*dims[2]
};

inline constexpr char kSnapshotMagic[4] = {'P', 'P', 'L', 'R'};
inline constexpr char kSnapshotFieldTag[8] = {'r', 'v', 'v', 'v', 'b', 'b', 'b', 'p'};

void write_snapshot(const std::string& path, const Snapshot& snap);

// Throws InvalidSpec on a bad magic, unknown version, size mismatches or a
// truncated file. Write -> read is bitwise identity.
Snapshot read_snapshot(const std::string& path);

}  // namespace ppmlr
