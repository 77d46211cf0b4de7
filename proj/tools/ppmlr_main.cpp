#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ppmlr/config.hpp"
#include "ppmlr/errors.hpp"
#include "ppmlr/harness.hpp"
#include "ppmlr/perfmodel.hpp"
#include "ppmlr/snapshot.hpp"
#include "ppmlr/verify.hpp"

namespace fs = std::filesystem;
using namespace ppmlr;

namespace {

Snapshot make_snapshot(const Harness& h) {
  Snapshot s;
  const StretchedGrid& g = h.grid();
  s.dims = {static_cast<std::uint32_t>(g.x.n()), static_cast<std::uint32_t>(g.y.n()),
            static_cast<std::uint32_t>(g.z.n())};
  s.ghost = static_cast<std::uint32_t>(h.options().ghost);
  s.time = h.time();
  s.step = static_cast<std::uint64_t>(h.step_count());
  for (int a = 0; a < 3; ++a) s.edges[a] = g.axis(a).edges;
  s.fields = h.gather_interior();
  return s;
}

void write_timing_csv(const std::string& path, const std::vector<StepTiming>& t) {
  std::ofstream out(path, std::ios::trunc);
  out << "rank,step,compute_seconds,transfer_seconds\n";
  char line[128];
  for (const StepTiming& r : t) {
    std::snprintf(line, sizeof line, "%d,%ld,%.9e,%.9e\n", r.rank, r.step,
                  r.compute_seconds, r.transfer_seconds);
    out << line;
  }
}

Harness build_harness(const RunConfig& cfg) {
  const StretchedGrid grid = cfg.make_grid();
  Harness h(grid, layout(cfg.partition, grid), cfg.make_options());
  if (cfg.init == InitMode::Magnetosphere) {
    h.init_magnetosphere(cfg.profiles);
  } else {
    PrimitiveState sw{cfg.wind.rho_sw, cfg.wind.v_sw, cfg.wind.imf, cfg.wind.p_sw};
    h.init_with([sw](const Vec3&) { return sw; });
  }
  return h;
}

int cmd_run(const RunConfig& cfg) {
  fs::create_directories(cfg.out_dir);
  Harness h = build_harness(cfg);
  for (long s = 1; s <= cfg.steps; ++s) {
    h.advance();
    if (s % cfg.cadence == 0 || s == cfg.steps) {
      char name[64];
      std::snprintf(name, sizeof name, "snapshot_%06ld.bin", s);
      write_snapshot((fs::path(cfg.out_dir) / name).string(), make_snapshot(h));
    }
  }
  {
    std::ofstream out(fs::path(cfg.out_dir) / "ledger.csv", std::ios::trunc);
    out << h.ledger().to_csv();
  }
  write_timing_csv((fs::path(cfg.out_dir) / "timing.csv").string(), h.timings());
  const TimingSummary ts = aggregate(h.timings());
  std::printf("steps=%ld time=%.6e bytes=%llu messages=%ld mean_compute=%.3e mean_transfer=%.3e\n",
              h.step_count(), h.time(),
              static_cast<unsigned long long>(h.ledger().total_bytes),
              h.ledger().total_messages, ts.mean_compute, ts.mean_transfer);
  return 0;
}

int cmd_verify(const std::string& suite) {
  std::vector<std::string> names =
      suite == "all" ? suite_names() : std::vector<std::string>{suite};
  bool ok = true;
  std::printf("%-28s %14s %14s %s\n", "check", "metric", "threshold", "result");
  for (const std::string& n : names)
    for (const CheckResult& r : run_suite(n)) {
      std::printf("%-28s %14.6e %14.6e %s\n", r.name.c_str(), r.metric, r.threshold,
                  r.pass ? "pass" : "FAIL");
      ok = ok && r.pass;
    }
  return ok ? 0 : 1;
}

int cmd_partition() {
  const StretchedGrid grid = build_default_grid();
  std::printf("nx,ny,nz,ranks,tde_units,exchanged_bytes\n");
  for (const PartitionConfig& c : reference_configs())
    std::printf("%d,%d,%d,%ld,%ld,%llu\n", c.nx, c.ny, c.nz, total_ranks(c),
                tde_units(c),
                static_cast<unsigned long long>(
                    exchanged_bytes(c, grid, 4, 8 * static_cast<int>(sizeof(double)))));
  return 0;
}

// Desk-scale live runs of the reported partition shapes on a grid every
// shape divides evenly.
int cmd_report(long steps, TransportKind transport) {
  const AxisSpec ax{-4.8, 4.8, -4.8, 4.8, 0.4, 24, 1.05};
  const AxisSpec ay{-6.0, 6.0, -6.0, 6.0, 0.4, 30, 1.05};
  const StretchedGrid grid{build_axis(ax), build_axis(ay), build_axis(ay)};
  const BandwidthSpec bw;
  std::printf(
      "nx,ny,nz,ranks,tde_units,bytes_per_step,mean_compute_s,mean_transfer_s,"
      "predicted_speedup\n");
  for (const PartitionConfig& c : reference_configs()) {
    HarnessOptions opts;
    opts.boundary = BoundaryMode::Outflow;
    opts.with_dipole = false;
    opts.transport = transport;
    Harness h(grid, layout(c, grid), opts);
    h.init_with([](const Vec3& r) {
      PrimitiveState q;
      const double w = std::exp(-norm2(r) / 8.0);
      q.rho = 1.0 + 0.3 * w;
      q.p = 1.0 + 0.2 * w;
      q.bprime = Vec3{-r.y, r.x, 0.2} * 0.1;
      return q;
    });
    h.run(steps);
    const TimingSummary ts = aggregate(h.timings());
    std::printf("%d,%d,%d,%ld,%ld,%llu,%.3e,%.3e,%.4f\n", c.nx, c.ny, c.nz,
                total_ranks(c), tde_units(c),
                static_cast<unsigned long long>(h.ledger().total_bytes /
                                                static_cast<std::uint64_t>(steps)),
                ts.mean_compute, ts.mean_transfer,
                predict_speedup(c, grid, bw, 0.732));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PPMLR magnetosphere solver and partition benchmark harness"};
  app.require_subcommand(1);

  std::string config_path, out_dir, transport_name, suite = "all";
  long steps = -1;

  auto* run = app.add_subcommand("run", "advance a configured simulation");
  run->add_option("--config", config_path, "key=value config file");
  run->add_option("--steps", steps, "override run.steps");
  run->add_option("--transport", transport_name, "staged or direct")
      ->check(CLI::IsMember({"staged", "direct"}));
  run->add_option("--out", out_dir, "override run.out");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", suite, "sod|briowu|convergence|conservation|partition|all");

  app.add_subcommand("partition", "print the partition/communication table");

  auto* report = app.add_subcommand("report", "desk-scale timing and model report");
  report->add_option("--steps", steps, "steps per configuration (default 5)");
  report->add_option("--transport", transport_name, "staged or direct")
      ->check(CLI::IsMember({"staged", "direct"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
      if (steps >= 0) cfg.steps = steps;
      if (!out_dir.empty()) cfg.out_dir = out_dir;
      if (!transport_name.empty())
        cfg.transport =
            transport_name == "staged" ? TransportKind::Staged : TransportKind::Direct;
      return cmd_run(cfg);
    }
    if (verify->parsed()) return cmd_verify(suite);
    if (report->parsed())
      return cmd_report(steps >= 0 ? steps : 5,
                        transport_name == "staged" ? TransportKind::Staged
                                                   : TransportKind::Direct);
    return cmd_partition();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
