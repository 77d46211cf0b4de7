#include "ppmlr/exchange.hpp"

#include <chrono>
#include <sstream>
#include <string>

#include "ppmlr/errors.hpp"

namespace ppmlr {

namespace {

// Global-order cell index along the face axis for layer q of a face:
// the packed layers always run in increasing global coordinate.
int source_cell(int face, int ghost, int n_axis, int q) {
  return face % 2 == 0 ? q : n_axis - ghost + q;
}
int ghost_cell(int face_at_source, int ghost, int n_axis, int q) {
  // Receiver fills the shell facing the sender: the sender's -x face data
  // lands in the receiver's ghost cells past its +x interior edge.
  return face_at_source % 2 == 0 ? n_axis + q : -ghost + q;
}

}  // namespace

CopyProfile transport_copy_profile(TransportKind kind) {
  return kind == TransportKind::Direct ? CopyProfile{1, 0} : CopyProfile{1, 6};
}

HaloSlab pack(const BlockState& block, int face, int ghost) {
  const int axis = face / 2;
  const int b = (axis + 1) % 3, c = (axis + 2) % 3;
  HaloSlab slab;
  slab.face = face;
  slab.ghost = ghost;
  slab.face_span = {block.n[b], block.n[c]};
  slab.payload.reserve(static_cast<std::size_t>(block.n[b]) * block.n[c] * ghost * 8);
  int cell[3];
  for (int t2 = 0; t2 < block.n[c]; ++t2)
    for (int t1 = 0; t1 < block.n[b]; ++t1)
      for (int q = 0; q < ghost; ++q) {
        cell[b] = t1;
        cell[c] = t2;
        cell[axis] = source_cell(face, ghost, block.n[axis], q);
        const PrimitiveState& s = block.at(cell[0], cell[1], cell[2]);
        slab.payload.insert(slab.payload.end(),
                            {s.rho, s.v.x, s.v.y, s.v.z, s.bprime.x, s.bprime.y,
                             s.bprime.z, s.p});
      }
  return slab;
}

void unpack(BlockState& block, const HaloSlab& slab) {
  const int axis = slab.face / 2;
  const int b = (axis + 1) % 3, c = (axis + 2) % 3;
  if (slab.ghost != block.ghost)
    throw InvalidSpec("halo slab ghost width " + std::to_string(slab.ghost) +
                      " does not match block ghost " + std::to_string(block.ghost));
  if (slab.face_span[0] != block.n[b] || slab.face_span[1] != block.n[c])
    throw InvalidSpec("halo slab face span does not match block face");
  const std::size_t expected =
      static_cast<std::size_t>(block.n[b]) * block.n[c] * slab.ghost * 8;
  if (slab.payload.size() != expected)
    throw InvalidSpec("halo slab payload size mismatch");

  std::size_t p = 0;
  int cell[3];
  for (int t2 = 0; t2 < block.n[c]; ++t2)
    for (int t1 = 0; t1 < block.n[b]; ++t1)
      for (int q = 0; q < slab.ghost; ++q) {
        cell[b] = t1;
        cell[c] = t2;
        cell[axis] = ghost_cell(slab.face, slab.ghost, block.n[axis], q);
        PrimitiveState& s = block.at(cell[0], cell[1], cell[2]);
        s.rho = slab.payload[p++];
        s.v = {slab.payload[p], slab.payload[p + 1], slab.payload[p + 2]};
        p += 3;
        s.bprime = {slab.payload[p], slab.payload[p + 1], slab.payload[p + 2]};
        p += 3;
        s.p = slab.payload[p++];
      }
}

std::string TransferLedger::to_csv() const {
  std::ostringstream os;
  os << "step,transport,messages,bytes,copy_events\n";
  for (const auto& e : entries)
    os << e.step << ',' << (e.transport == TransportKind::Direct ? "direct" : "staged")
       << ',' << e.messages << ',' << e.bytes << ',' << e.copy_events << '\n';
  return os.str();
}

void exchange_step(std::vector<BlockState>& blocks, const BlockLayout& layout,
                   int ghost, TransportKind transport, long step,
                   TransferLedger& ledger, std::vector<double>* per_rank_seconds) {
  using clock = std::chrono::steady_clock;
  const CopyProfile profile = transport_copy_profile(transport);
  LedgerEntry entry{step, transport, 0, 0, 0};

  std::vector<HaloSlab> mailbox;
  for (const BlockInfo& info : layout.blocks) {
    const auto t0 = clock::now();
    for (int face = 0; face < 6; ++face) {
      const int nb = info.neighbor[face];
      if (nb < 0) continue;
      HaloSlab slab = pack(blocks[info.rank], face, ghost);
      slab.src_rank = info.rank;
      slab.dst_rank = nb;
      slab.step = step;
      entry.messages += 1;
      entry.bytes += slab.payload.size() * sizeof(double);
      entry.copy_events += profile.transfer_events + profile.staging_copies;
      mailbox.push_back(std::move(slab));
    }
    if (per_rank_seconds)
      (*per_rank_seconds)[info.rank] +=
          std::chrono::duration<double>(clock::now() - t0).count();
  }
  // Barrier semantics: every expected message must be present before any
  // ghost shell is written.
  for (const BlockInfo& info : layout.blocks) {
    if (blocks[info.rank].step_count != blocks[layout.blocks.front().rank].step_count)
      throw Error("exchange: workers are not at the same step counter");
    for (int face = 0; face < 6; ++face) {
      const int nb = info.neighbor[face];
      if (nb < 0) continue;
      const int expected_face = face ^ 1;  // the neighbor's opposite face
      bool found = false;
      for (const HaloSlab& slab : mailbox)
        if (slab.src_rank == nb && slab.dst_rank == info.rank &&
            slab.face == expected_face) {
          found = true;
          break;
        }
      if (!found)
        throw Error("exchange deadlock: missing slab (src=" + std::to_string(nb) +
                    ", dst=" + std::to_string(info.rank) +
                    ", face=" + std::to_string(expected_face) + ")");
    }
  }
  for (const HaloSlab& slab : mailbox) {
    const auto t0 = clock::now();
    unpack(blocks[slab.dst_rank], slab);
    if (per_rank_seconds)
      (*per_rank_seconds)[slab.dst_rank] +=
          std::chrono::duration<double>(clock::now() - t0).count();
  }
  ledger.record(entry);
}

}  // namespace ppmlr
