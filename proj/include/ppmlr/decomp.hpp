#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ppmlr/grid.hpp"

namespace ppmlr {

// Rank grid for the block workers. One extra rank beyond nx*ny*nz is
// reserved for the ionosphere solver slot.
struct PartitionConfig {
  int nx = 1, ny = 1, nz = 1;
  int count(int axis) const { return axis == 0 ? nx : (axis == 1 ? ny : nz); }
};

struct BlockInfo {
  int rank = 0;
  std::array<int, 3> coords{};  // position in the rank grid
  std::array<int, 3> lo{};      // first interior cell per axis (global)
  std::array<int, 3> n{};       // interior cells per axis
  std::array<int, 6> neighbor{};  // -x,+x,-y,+y,-z,+z rank ids; -1 = physical face
};

struct BlockLayout {
  PartitionConfig config;
  std::vector<BlockInfo> blocks;  // row-major, x fastest
  int ionosphere_rank = 0;
};

// Checks the partition rules: ny and nz odd, per-axis divisibility, and the
// Earth-origin cell falling in the middle block along y and z. Returns every
// violated rule, one per entry; empty means valid.
std::vector<std::string> validate(const PartitionConfig& config, const StretchedGrid& grid);

// nx*ny*nz block workers plus the ionosphere rank.
long total_ranks(const PartitionConfig& config);

// Equal-size blocks with rank ids row-major (x fastest); the ionosphere rank
// comes last. Throws InvalidSpec when validate reports violations.
BlockLayout layout(const PartitionConfig& config, const StretchedGrid& grid);

// Adjacent block-face pair count: the partition-dependent factor of the
// total-data-exchanged model.
long tde_units(const PartitionConfig& config);

// Bytes moved by one full halo exchange: every interior block face carries
// face_cells * ghost * bytes_per_cell in each direction.
std::uint64_t exchanged_bytes(const PartitionConfig& config, const StretchedGrid& grid,
                              int ghost, int bytes_per_cell);

// The six process configurations reported for the magnetosphere grid.
std::vector<PartitionConfig> reference_configs();

}  // namespace ppmlr
