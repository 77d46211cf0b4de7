#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "ppmlr/config.hpp"
#include "ppmlr/errors.hpp"
#include "ppmlr/snapshot.hpp"
#include "ppmlr/verify.hpp"

namespace fs = std::filesystem;
using namespace ppmlr;

namespace {

struct RunResult {
  int status = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

RunResult run_cli(const std::string& args, const fs::path& dir) {
  const fs::path out = dir / "stdout.txt", err = dir / "stderr.txt";
  const std::string cmd = std::string(PPMLR_CLI_PATH) + " " + args + " >" +
                          out.string() + " 2>" + err.string();
  RunResult r;
  const int raw = std::system(cmd.c_str());
  r.status = raw < 0 ? raw : WEXITSTATUS(raw);
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

fs::path fresh_dir(const char* name) {
  const fs::path d = fs::temp_directory_path() / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

// Small, fast run: 12^3 uniform box, outflow, no dipole.
const char* kSmallConfig = R"(
grid.x.min = -2.4
grid.x.max = 2.4
grid.x.uniform_lo = -2.4
grid.x.uniform_hi = 2.4
grid.x.d_uniform = 0.4
grid.x.cells = 12
grid.y.min = -2.4
grid.y.max = 2.4
grid.y.uniform_lo = -2.4
grid.y.uniform_hi = 2.4
grid.y.d_uniform = 0.4
grid.y.cells = 12
grid.z.min = -2.4
grid.z.max = 2.4
grid.z.uniform_lo = -2.4
grid.z.uniform_hi = 2.4
grid.z.d_uniform = 0.4
grid.z.cells = 12
partition.nx = 2
partition.ny = 1
partition.nz = 1
boundary.mode = outflow
init.mode = uniform
run.dipole = false
run.steps = 6
run.cadence = 5
wind.vx = -0.5
)";

}  // namespace

TEST_CASE("config parser") {
  RunConfig cfg = parse_config(kSmallConfig);
  CHECK(cfg.partition.nx == 2);
  CHECK(cfg.steps == 6);
  CHECK(cfg.cadence == 5);
  CHECK(cfg.grid_x.target_cells == 12);
  CHECK(cfg.wind.v_sw.x == -0.5);
  CHECK(cfg.boundary == BoundaryMode::Outflow);
  CHECK(cfg.init == InitMode::Uniform);
  CHECK_FALSE(cfg.with_dipole);

  CHECK_THROWS_WITH_AS(parse_config("no.such.key = 1\n"),
                       doctest::Contains("unknown config key"), InvalidSpec);
  CHECK_THROWS_AS(parse_config("run.cfl = banana\n"), InvalidSpec);
  CHECK_THROWS_AS(parse_config("run.cadence = 0\n"), InvalidSpec);
  CHECK_THROWS_AS(parse_config("run.steps = 5\nrun.steps = 6\n"), InvalidSpec);
  CHECK_THROWS_AS(parse_config("just a line without equals\n"), InvalidSpec);
  CHECK(parse_config("# only a comment\n\n").steps == 100);  // defaults survive
}

TEST_CASE("snapshot write/read roundtrip is bitwise identity") {
  const fs::path dir = fresh_dir("ppmlr_snap_test");
  Snapshot s;
  s.dims = {3, 2, 2};
  s.ghost = 4;
  s.time = 1.25;
  s.step = 42;
  for (int a = 0; a < 3; ++a) {
    s.edges[a].resize(s.dims[a] + 1);
    for (std::size_t m = 0; m < s.edges[a].size(); ++m)
      s.edges[a][m] = 0.3 * static_cast<double>(m) - 0.7;
  }
  s.fields.resize(12);
  for (int i = 0; i < 12; ++i)
    s.fields[i] = {1.0 + 0.1 * i, {0.5 * i, -i * 0.25, 0.125},
                   {0.0625 * i, -1.0, 2.0}, 0.75 + i};
  const fs::path file = dir / "snap.bin";
  write_snapshot(file.string(), s);
  const Snapshot r = read_snapshot(file.string());
  CHECK(r.dims == s.dims);
  CHECK(r.time == s.time);
  CHECK(r.step == s.step);
  for (int i = 0; i < 12; ++i) {
    CHECK(r.fields[i].rho == s.fields[i].rho);
    CHECK(r.fields[i].v.x == s.fields[i].v.x);
    CHECK(r.fields[i].bprime.z == s.fields[i].bprime.z);
    CHECK(r.fields[i].p == s.fields[i].p);
  }
  // Re-write: the file bytes must be identical.
  const fs::path file2 = dir / "snap2.bin";
  write_snapshot(file2.string(), r);
  CHECK(slurp(file) == slurp(file2));

  std::ofstream bad(dir / "bad.bin", std::ios::binary);
  bad << "NOPE";
  bad.close();
  CHECK_THROWS_WITH_AS(read_snapshot((dir / "bad.bin").string()),
                       doctest::Contains("magic"), InvalidSpec);
}

TEST_CASE("cli: partition table") {
  const fs::path dir = fresh_dir("ppmlr_cli_partition");
  const RunResult r = run_cli("partition", dir);
  CHECK(r.status == 0);
  CHECK(r.out.find("nx,ny,nz,ranks,tde_units,exchanged_bytes") != std::string::npos);
  CHECK(r.out.find("3,1,1,4,2,") != std::string::npos);
  CHECK(r.out.find("6,5,5,151,") != std::string::npos);
}

TEST_CASE("cli: run is deterministic and writes ceil(steps/cadence) snapshots") {
  const fs::path dir = fresh_dir("ppmlr_cli_run");
  std::ofstream(dir / "run.cfg") << kSmallConfig;
  const std::string cfg = (dir / "run.cfg").string();

  const RunResult a =
      run_cli("run --config " + cfg + " --out " + (dir / "a").string(), dir);
  REQUIRE_MESSAGE(a.status == 0, a.err);
  const RunResult b =
      run_cli("run --config " + cfg + " --out " + (dir / "b").string(), dir);
  REQUIRE(b.status == 0);

  int count = 0;
  for (const auto& e : fs::directory_iterator(dir / "a"))
    if (e.path().filename().string().rfind("snapshot_", 0) == 0) ++count;
  CHECK(count == 2);  // steps 5 and 6
  CHECK(fs::exists(dir / "a" / "ledger.csv"));
  CHECK(fs::exists(dir / "a" / "timing.csv"));

  CHECK(slurp(dir / "a" / "snapshot_000005.bin") ==
        slurp(dir / "b" / "snapshot_000005.bin"));
  CHECK(slurp(dir / "a" / "snapshot_000006.bin") ==
        slurp(dir / "b" / "snapshot_000006.bin"));
  CHECK(slurp(dir / "a" / "ledger.csv") == slurp(dir / "b" / "ledger.csv"));
}

TEST_CASE("cli: invalid partition exits nonzero with the oddness rule") {
  const fs::path dir = fresh_dir("ppmlr_cli_bad");
  std::string cfg_text(kSmallConfig);
  const auto at = cfg_text.find("partition.ny = 1");
  cfg_text.replace(at, 16, "partition.ny = 2");
  // nz = 2 as well, mirroring the rejected (3,2,2)-style shape.
  const auto at2 = cfg_text.find("partition.nz = 1");
  cfg_text.replace(at2, 16, "partition.nz = 2");
  std::ofstream(dir / "bad.cfg") << cfg_text;

  const RunResult r = run_cli("run --config " + (dir / "bad.cfg").string(), dir);
  CHECK(r.status != 0);
  CHECK(r.err.rfind("error: ", 0) == 0);  // single-line machine-parseable prefix
  CHECK(r.err.find("odd") != std::string::npos);
}

TEST_CASE("cli: unknown verify suite fails cleanly") {
  const fs::path dir = fresh_dir("ppmlr_cli_suite");
  const RunResult r = run_cli("verify --suite bogus", dir);
  CHECK(r.status != 0);
  CHECK(r.err.rfind("error: ", 0) == 0);
  CHECK(r.err.find("bogus") != std::string::npos);
}

TEST_CASE("verify suite names") {
  CHECK(suite_names().size() == 5);
  CHECK_THROWS_AS(run_suite("nope"), InvalidSpec);
}
