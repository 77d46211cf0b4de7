#include "ppmlr/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "ppmlr/errors.hpp"

namespace ppmlr {

namespace {

// The on-disk format is little-endian and this code writes host-order bytes.
static_assert(std::endian::native == std::endian::little,
              "snapshot I/O needs a little-endian host");

template <typename T>
void put(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& in, const char* what) {
  T v;
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw InvalidSpec(std::string("snapshot: truncated while reading ") + what);
  return v;
}

double field_scalar(const PrimitiveState& s, int f) {
  switch (f) {
    case 0: return s.rho;
    case 1: return s.v.x;
    case 2: return s.v.y;
    case 3: return s.v.z;
    case 4: return s.bprime.x;
    case 5: return s.bprime.y;
    case 6: return s.bprime.z;
    default: return s.p;
  }
}

void set_field_scalar(PrimitiveState& s, int f, double v) {
  switch (f) {
    case 0: s.rho = v; break;
    case 1: s.v.x = v; break;
    case 2: s.v.y = v; break;
    case 3: s.v.z = v; break;
    case 4: s.bprime.x = v; break;
    case 5: s.bprime.y = v; break;
    case 6: s.bprime.z = v; break;
    default: s.p = v; break;
  }
}

}  // namespace

void write_snapshot(const std::string& path, const Snapshot& snap) {
  const std::size_t cells = static_cast<std::size_t>(snap.dims[0]) * snap.dims[1] * snap.dims[2];
  if (snap.fields.size() != cells)
    throw InvalidSpec("snapshot: field count does not match dims");
  for (int a = 0; a < 3; ++a)
    if (snap.edges[a].size() != snap.dims[a] + 1u)
      throw InvalidSpec("snapshot: edge array does not match dims");

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidSpec("snapshot: cannot open for writing: " + path);
  out.write(kSnapshotMagic, 4);
  put(out, snap.version);
  for (int a = 0; a < 3; ++a) put(out, snap.dims[a]);
  put(out, snap.ghost);
  put(out, snap.time);
  put(out, snap.step);
  for (int a = 0; a < 3; ++a)
    out.write(reinterpret_cast<const char*>(snap.edges[a].data()),
              static_cast<std::streamsize>(snap.edges[a].size() * sizeof(double)));
  out.write(kSnapshotFieldTag, 8);
  std::vector<double> buf(cells);
  for (int f = 0; f < 8; ++f) {
    for (std::size_t i = 0; i < cells; ++i) buf[i] = field_scalar(snap.fields[i], f);
    out.write(reinterpret_cast<const char*>(buf.data()),
              static_cast<std::streamsize>(cells * sizeof(double)));
  }
  if (!out) throw InvalidSpec("snapshot: write failed: " + path);
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidSpec("snapshot: cannot open: " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kSnapshotMagic, 4) != 0)
    throw InvalidSpec("snapshot: bad magic in " + path);
  Snapshot snap;
  snap.version = get<std::uint32_t>(in, "version");
  if (snap.version != 1)
    throw InvalidSpec("snapshot: unsupported version " + std::to_string(snap.version));
  for (int a = 0; a < 3; ++a) snap.dims[a] = get<std::uint32_t>(in, "dims");
  snap.ghost = get<std::uint32_t>(in, "ghost");
  snap.time = get<double>(in, "time");
  snap.step = get<std::uint64_t>(in, "step");
  for (int a = 0; a < 3; ++a) {
    snap.edges[a].resize(snap.dims[a] + 1u);
    in.read(reinterpret_cast<char*>(snap.edges[a].data()),
            static_cast<std::streamsize>(snap.edges[a].size() * sizeof(double)));
    if (!in) throw InvalidSpec("snapshot: truncated edge array in " + path);
  }
  char tag[8];
  in.read(tag, 8);
  if (!in || std::memcmp(tag, kSnapshotFieldTag, 8) != 0)
    throw InvalidSpec("snapshot: unknown field order tag in " + path);
  const std::size_t cells = static_cast<std::size_t>(snap.dims[0]) * snap.dims[1] * snap.dims[2];
  snap.fields.resize(cells);
  std::vector<double> buf(cells);
  for (int f = 0; f < 8; ++f) {
    in.read(reinterpret_cast<char*>(buf.data()),
            static_cast<std::streamsize>(cells * sizeof(double)));
    if (!in) throw InvalidSpec("snapshot: truncated field payload in " + path);
    for (std::size_t i = 0; i < cells; ++i) set_field_scalar(snap.fields[i], f, buf[i]);
  }
  return snap;
}

}  // namespace ppmlr
