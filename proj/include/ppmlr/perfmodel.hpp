#pragma once

#include <vector>

#include "ppmlr/decomp.hpp"
#include "ppmlr/grid.hpp"

namespace ppmlr {

// Device/host memory bandwidths for the bandwidth-bound speedup model.
struct BandwidthSpec {
  double device_bw = 250e9;  // bytes/s
  double host_bw = 51.2e9;
};

struct StepTiming {
  int rank = 0;
  long step = 0;
  double compute_seconds = 0.0;
  double transfer_seconds = 0.0;
};

struct TimingSummary {
  double mean_compute = 0.0;
  double mean_transfer = 0.0;
};

// Maximum achievable speedup of a memory-bound kernel: device over host
// bandwidth.
double mas(const BandwidthSpec& spec);

// Arithmetic means of compute and transfer times over all rank-step records.
// Throws InvalidSpec on empty input.
TimingSummary aggregate(const std::vector<StepTiming>& timings);

// Modeled speedup over the host baseline: mas * efficiency, scaled down
// linearly when a block holds fewer cells than the utilization floor (64^3),
// never exceeding mas.
double predict_speedup(const PartitionConfig& config, const StretchedGrid& grid,
                       const BandwidthSpec& spec, double efficiency);

// Cells per block below which modeled device utilization falls off.
inline constexpr long kWorkloadFloorCells = 64L * 64L * 64L;

}  // namespace ppmlr
