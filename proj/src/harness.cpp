#include "ppmlr/harness.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

#include "ppmlr/errors.hpp"

namespace ppmlr {

namespace {
using clock_type = std::chrono::steady_clock;
double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}
}  // namespace

Harness::Harness(const StretchedGrid& grid, const BlockLayout& layout,
                 const HarnessOptions& opts)
    : grid_(grid), layout_(layout), opts_(opts), iono_(layout.ionosphere_rank) {
  if (opts.boundary == BoundaryMode::Periodic &&
      (layout.config.nx != 1 || layout.config.ny != 1 || layout.config.nz != 1))
    throw InvalidSpec("periodic boundaries require a (1,1,1) partition");
  blocks_.reserve(layout.blocks.size());
  for (const BlockInfo& info : layout.blocks)
    blocks_.push_back(make_block(grid, info, opts.ghost, opts.constants,
                                 opts.with_dipole));
}

void Harness::init_magnetosphere(const InitialProfiles& prof) {
  for (BlockState& b : blocks_)
    ppmlr::init_magnetosphere(b, opts_.wind, prof, opts_.constants);
}

void Harness::init_with(const std::function<PrimitiveState(const Vec3&)>& f) {
  for (BlockState& b : blocks_) {
    for (int k = -b.ghost; k < b.n[2] + b.ghost; ++k)
      for (int j = -b.ghost; j < b.n[1] + b.ghost; ++j)
        for (int i = -b.ghost; i < b.n[0] + b.ghost; ++i)
          b.at(i, j, k) = f(b.center(i, j, k));
    b.frozen_core.clear();
  }
}

double Harness::compute_global_dt() const {
  double dt = std::numeric_limits<double>::infinity();
  for (const BlockState& b : blocks_)
    dt = std::min(dt, compute_dt(b, opts_.cfl, opts_.constants));
  return dt;
}

void Harness::exchange_and_fill(std::vector<double>& transfer_s) {
  exchange_step(blocks_, layout_, opts_.ghost, opts_.transport, step_, ledger_,
                &transfer_s);
  for (BlockState& b : blocks_)
    apply_boundaries(b, opts_.boundary, opts_.wind, opts_.constants);
}

double Harness::advance() {
  const double dt = compute_global_dt();
  std::vector<double> compute_s(blocks_.size(), 0.0);
  std::vector<double> transfer_s(blocks_.size() + 1, 0.0);

  for (int axis : sweep_order(step_)) {
    exchange_and_fill(transfer_s);
    for (std::size_t r = 0; r < blocks_.size(); ++r) {
      const auto t0 = clock_type::now();
      sweep_axis(blocks_[r], axis, dt, opts_.constants);
      compute_s[r] += seconds_since(t0);
    }
  }
  if (opts_.with_sources) {
    exchange_and_fill(transfer_s);
    for (std::size_t r = 0; r < blocks_.size(); ++r) {
      const auto t0 = clock_type::now();
      apply_sources(blocks_[r], dt, opts_.constants);
      compute_s[r] += seconds_since(t0);
    }
  }
  for (BlockState& b : blocks_) {
    restore_frozen_core(b);
    b.time += dt;
    b.step_count += 1;
  }
  iono_.solve(step_);  // the stub rank joins the step barrier

  for (std::size_t r = 0; r < blocks_.size(); ++r)
    timings_.push_back({static_cast<int>(r), step_, compute_s[r], transfer_s[r]});
  step_ += 1;
  time_ += dt;
  return dt;
}

void Harness::run(long steps) {
  for (long s = 0; s < steps; ++s) advance();
}

std::vector<PrimitiveState> Harness::gather_interior() const {
  const int nx = grid_.x.n(), ny = grid_.y.n(), nz = grid_.z.n();
  std::vector<PrimitiveState> out(static_cast<std::size_t>(nx) * ny * nz);
  for (std::size_t r = 0; r < blocks_.size(); ++r) {
    const BlockState& b = blocks_[r];
    for (int k = 0; k < b.n[2]; ++k)
      for (int j = 0; j < b.n[1]; ++j)
        for (int i = 0; i < b.n[0]; ++i) {
          const std::size_t g =
              static_cast<std::size_t>(b.lo[0] + i) +
              static_cast<std::size_t>(nx) *
                  ((b.lo[1] + j) + static_cast<std::size_t>(ny) * (b.lo[2] + k));
          out[g] = b.at(i, j, k);
        }
  }
  return out;
}

}  // namespace ppmlr
