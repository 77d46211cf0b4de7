#pragma once

#include <cstdint>
#include <vector>

#include "ppmlr/decomp.hpp"
#include "ppmlr/stepper.hpp"

namespace ppmlr {

// Data-movement model: direct device-to-network transfers versus staging
// through host buffers, which adds six memory copies per message.
enum class TransportKind { Staged, Direct };

struct CopyProfile {
  int transfer_events = 1;
  int staging_copies = 0;
};
CopyProfile transport_copy_profile(TransportKind kind);

// One boundary message: the outermost `ghost` interior layers of a face,
// packed slowest-to-fastest over the transverse axes with the 8 field
// scalars (rho, v, B', p) innermost.
struct HaloSlab {
  int src_rank = 0;
  int dst_rank = 0;
  int face = 0;  // 0..5 = -x,+x,-y,+y,-z,+z as seen from the source block
  long step = 0;
  int ghost = 0;
  std::array<int, 2> face_span{};  // interior cells along the transverse axes
  std::vector<double> payload;     // face cells * ghost * 8 scalars
};

HaloSlab pack(const BlockState& block, int face, int ghost);

// Overwrites the ghost shell facing the slab's sender; the interior is never
// touched. Throws InvalidSpec on ghost-width or span mismatch.
void unpack(BlockState& block, const HaloSlab& slab);

struct LedgerEntry {
  long step = 0;
  TransportKind transport = TransportKind::Direct;
  long messages = 0;
  std::uint64_t bytes = 0;
  long copy_events = 0;
};

struct TransferLedger {
  std::vector<LedgerEntry> entries;
  long total_messages = 0;
  std::uint64_t total_bytes = 0;
  long total_copy_events = 0;

  void record(const LedgerEntry& e) {
    entries.push_back(e);
    total_messages += e.messages;
    total_bytes += e.bytes;
    total_copy_events += e.copy_events;
  }
  std::string to_csv() const;
};

// One full halo exchange: every interior face both ways, two-phase (all
// packs, then all unpacks) so delivery order cannot matter. blocks[i] must
// be the block of rank i. per_rank_seconds, when given, accumulates the
// pack/unpack wall time per rank.
void exchange_step(std::vector<BlockState>& blocks, const BlockLayout& layout,
                   int ghost, TransportKind transport, long step,
                   TransferLedger& ledger,
                   std::vector<double>* per_rank_seconds = nullptr);

}  // namespace ppmlr
