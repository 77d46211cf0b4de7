#include "ppmlr/decomp.hpp"

#include <string>

#include "ppmlr/errors.hpp"

namespace ppmlr {

std::vector<std::string> validate(const PartitionConfig& config, const StretchedGrid& grid) {
  std::vector<std::string> violations;
  if (config.nx < 1 || config.ny < 1 || config.nz < 1)
    violations.push_back("rank counts must be positive");
  if (config.ny % 2 == 0)
    violations.push_back("ny = " + std::to_string(config.ny) +
                         " is even; y and z rank counts must be odd");
  if (config.nz % 2 == 0)
    violations.push_back("nz = " + std::to_string(config.nz) +
                         " is even; y and z rank counts must be odd");
  const int cells[3] = {grid.x.n(), grid.y.n(), grid.z.n()};
  const char axis_name[3] = {'x', 'y', 'z'};
  for (int a = 0; a < 3; ++a) {
    const int r = config.count(a);
    if (r >= 1 && cells[a] % r != 0)
      violations.push_back(std::string(1, axis_name[a]) + " ranks " + std::to_string(r) +
                           " do not divide " + std::to_string(cells[a]) + " cells");
  }
  // The Earth cell must sit in the middle block of the odd y/z rank rows.
  for (int a = 1; a < 3; ++a) {
    const int r = config.count(a);
    if (r < 1 || config.ny % 2 == 0 || config.nz % 2 == 0 || cells[a] % r != 0) continue;
    const Axis& axis = grid.axis(a);
    if (axis.min() > 0.0 || axis.max() < 0.0) continue;  // Earth outside the axis
    const int origin_cell = locate(axis, 0.0);
    const int block = origin_cell / (cells[a] / r);
    if (block != (r - 1) / 2)
      violations.push_back(std::string("Earth-origin cell falls outside the middle ") +
                           axis_name[a] + " block");
  }
  return violations;
}

long total_ranks(const PartitionConfig& config) {
  return static_cast<long>(config.nx) * config.ny * config.nz + 1;
}

BlockLayout layout(const PartitionConfig& config, const StretchedGrid& grid) {
  const auto violations = validate(config, grid);
  if (!violations.empty()) {
    std::string msg = "invalid partition:";
    for (const auto& v : violations) msg += " [" + v + "]";
    throw InvalidSpec(msg);
  }
  BlockLayout out;
  out.config = config;
  const int counts[3] = {config.nx, config.ny, config.nz};
  const int cells[3] = {grid.x.n(), grid.y.n(), grid.z.n()};
  int block_cells[3];
  for (int a = 0; a < 3; ++a) block_cells[a] = cells[a] / counts[a];

  auto rank_of = [&](int cx, int cy, int cz) {
    return cx + counts[0] * (cy + counts[1] * cz);
  };
  for (int cz = 0; cz < counts[2]; ++cz)
    for (int cy = 0; cy < counts[1]; ++cy)
      for (int cx = 0; cx < counts[0]; ++cx) {
        BlockInfo b;
        b.rank = rank_of(cx, cy, cz);
        b.coords = {cx, cy, cz};
        for (int a = 0; a < 3; ++a) {
          b.lo[a] = b.coords[a] * block_cells[a];
          b.n[a] = block_cells[a];
        }
        for (int a = 0; a < 3; ++a) {
          int lo[3] = {cx, cy, cz}, hi[3] = {cx, cy, cz};
          lo[a] -= 1;
          hi[a] += 1;
          b.neighbor[2 * a] =
              lo[a] >= 0 ? rank_of(lo[0], lo[1], lo[2]) : -1;
          b.neighbor[2 * a + 1] =
              hi[a] < counts[a] ? rank_of(hi[0], hi[1], hi[2]) : -1;
        }
        out.blocks.push_back(b);
      }
  out.ionosphere_rank = counts[0] * counts[1] * counts[2];
  return out;
}

long tde_units(const PartitionConfig& c) {
  return static_cast<long>(c.nx) * c.ny * (c.nz - 1) +
         static_cast<long>(c.nx) * (c.ny - 1) * c.nz +
         static_cast<long>(c.nx - 1) * c.ny * c.nz;
}

std::uint64_t exchanged_bytes(const PartitionConfig& config, const StretchedGrid& grid,
                              int ghost, int bytes_per_cell) {
  const long counts[3] = {config.nx, config.ny, config.nz};
  const long cells[3] = {grid.x.n(), grid.y.n(), grid.z.n()};
  std::uint64_t total = 0;
  for (int a = 0; a < 3; ++a) {
    const int b = (a + 1) % 3, c = (a + 2) % 3;
    const std::uint64_t faces =
        static_cast<std::uint64_t>(counts[a] - 1) * counts[b] * counts[c];
    const std::uint64_t face_cells =
        static_cast<std::uint64_t>(cells[b] / counts[b]) * (cells[c] / counts[c]);
    total += faces * face_cells * ghost * bytes_per_cell * 2;
  }
  return total;
}

std::vector<PartitionConfig> reference_configs() {
  return {{3, 1, 1}, {3, 3, 3}, {4, 3, 3}, {6, 3, 3}, {4, 5, 5}, {6, 5, 5}};
}

}  // namespace ppmlr
