#pragma once

#include <functional>
#include <vector>

#include "ppmlr/exchange.hpp"
#include "ppmlr/perfmodel.hpp"
#include "ppmlr/stepper.hpp"

namespace ppmlr {

// Constant inner-boundary record produced by the ionosphere stub rank in
// place of the electrostatic potential solve.
struct IonosphereRecord {
  long step = 0;
  double potential = 0.0;
};

class IonosphereStub {
 public:
  explicit IonosphereStub(int rank) : rank_(rank) {}
  IonosphereRecord solve(long step) {
    ++calls_;
    return {step, 0.0};
  }
  int rank() const { return rank_; }
  long calls() const { return calls_; }

 private:
  int rank_;
  long calls_ = 0;
};

struct HarnessOptions {
  double cfl = 0.5;
  int ghost = 4;
  BoundaryMode boundary = BoundaryMode::Outflow;
  TransportKind transport = TransportKind::Direct;
  bool with_sources = true;
  bool with_dipole = false;
  SolarWindParams wind;
  Constants constants;
};

// Owns one in-process worker per layout block plus the ionosphere stub, and
// drives barrier-synchronized steps: global dt reduction, a halo exchange
// before each directional sweep and before the source pass.
class Harness {
 public:
  Harness(const StretchedGrid& grid, const BlockLayout& layout,
          const HarnessOptions& opts);

  void init_magnetosphere(const InitialProfiles& prof);
  // Pointwise initial condition, applied to every cell including ghosts.
  void init_with(const std::function<PrimitiveState(const Vec3&)>& f);

  double compute_global_dt() const;
  double advance();  // one full step; returns the dt used
  void run(long steps);

  long step_count() const { return step_; }
  double time() const { return time_; }
  const BlockState& block(int rank) const { return blocks_[rank]; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  const TransferLedger& ledger() const { return ledger_; }
  const std::vector<StepTiming>& timings() const { return timings_; }
  const IonosphereStub& ionosphere() const { return iono_; }
  const StretchedGrid& grid() const { return grid_; }
  const BlockLayout& layout() const { return layout_; }
  const HarnessOptions& options() const { return opts_; }

  // Interior fields of the whole domain, x fastest.
  std::vector<PrimitiveState> gather_interior() const;

 private:
  StretchedGrid grid_;
  BlockLayout layout_;
  HarnessOptions opts_;
  std::vector<BlockState> blocks_;
  IonosphereStub iono_;
  TransferLedger ledger_;
  std::vector<StepTiming> timings_;
  long step_ = 0;
  double time_ = 0.0;

  void exchange_and_fill(std::vector<double>& transfer_s);
};

}  // namespace ppmlr
