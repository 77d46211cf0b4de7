#include "ppmlr/perfmodel.hpp"

#include <algorithm>

#include "ppmlr/errors.hpp"

namespace ppmlr {

double mas(const BandwidthSpec& spec) {
  if (!(spec.device_bw > 0.0) || !(spec.host_bw > 0.0))
    throw InvalidSpec("bandwidths must be positive");
  return spec.device_bw / spec.host_bw;
}

TimingSummary aggregate(const std::vector<StepTiming>& timings) {
  if (timings.empty()) throw InvalidSpec("aggregate: no timing records");
  TimingSummary s;
  for (const auto& t : timings) {
    s.mean_compute += t.compute_seconds;
    s.mean_transfer += t.transfer_seconds;
  }
  s.mean_compute /= static_cast<double>(timings.size());
  s.mean_transfer /= static_cast<double>(timings.size());
  return s;
}

double predict_speedup(const PartitionConfig& config, const StretchedGrid& grid,
                       const BandwidthSpec& spec, double efficiency) {
  if (!(efficiency > 0.0) || efficiency > 1.0)
    throw InvalidSpec("efficiency must lie in (0, 1]");
  const long cells_per_block =
      static_cast<long>(grid.x.n() / config.nx) * (grid.y.n() / config.ny) *
      (grid.z.n() / config.nz);
  const double utilization =
      std::min(1.0, static_cast<double>(cells_per_block) /
                        static_cast<double>(kWorkloadFloorCells));
  return std::min(mas(spec) * efficiency * utilization, mas(spec));
}

}  // namespace ppmlr
