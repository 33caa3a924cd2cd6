#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pccl/topology.hpp"

namespace pccl {

enum class Primitive { ReduceScatter, AllGather, AllReduce, AllToAll };
enum class Algorithm { Ring, Rhd, Bucket, Dex };

std::string to_string(Primitive p);
std::string to_string(Algorithm a);
Primitive primitive_from_string(const std::string& s);
Algorithm algorithm_from_string(const std::string& s);

/// Data-flow annotation for one transfer: which chunk tokens move and
/// whether the sender keeps a copy (gather) or hands them off (reduce).
/// Used only by the schedule interpreter in tests; not serialized.
struct ChunkMove {
  std::vector<int> chunks;
  bool consume = false;
};

struct ScheduleRound {
  std::vector<Transfer> transfers;
  double size_bytes = 0;  // per-transfer size w_j for this round
  std::vector<ChunkMove> payload;  // aligned with transfers; may be empty
};

struct Schedule {
  int n_ranks = 0;
  Primitive primitive = Primitive::ReduceScatter;
  Algorithm algorithm = Algorithm::Ring;
  std::vector<ScheduleRound> rounds;
};

/// Ring schedule: reduce_scatter takes N-1 rounds of neighbor sends of
/// total_bytes/N each; all_gather mirrors it; all_reduce concatenates the
/// two for 2(N-1) rounds.
Schedule ring_schedule(int n, Primitive primitive, double total_bytes);

/// Recursive halving/doubling. reduce_scatter runs log2(n) rounds of XOR
/// partner exchanges at descending distances n/2, ..., 2, 1 with sizes
/// total_bytes/2, ..., total_bytes/n; all_gather is the mirror image
/// (ascending distances 1, 2, ..., n/2, sizes total_bytes/n, ...,
/// total_bytes/2); all_reduce is the concatenation. n must be a power of
/// two.
Schedule rhd_schedule(int n, Primitive primitive, double total_bytes);

/// Multi-phase torus schedule: one ring reduce_scatter sweep per dimension
/// in order, each phase operating on the shards produced by the previous
/// one. Transfers in phase d use only dimension-d neighbor links of the
/// torus with the given dims. all_gather mirrors the sweep in reverse.
Schedule bucket_schedule(const std::vector<int>& dims, Primitive primitive,
                         double total_bytes);

/// Direct-exchange hypercube all-to-all: log2(n) rounds; in round k every
/// rank exchanges with partner rank XOR 2^k the half of its buffer destined
/// to the partner's hypercube half (m/2 per round).
Schedule dex_schedule(int n, double total_bytes);

/// Split every round into as many sub-rounds as needed so that no rank
/// exceeds tx_per_gpu outgoing or rx_per_gpu incoming transfers. Transfers
/// keep their sizes; already-feasible rounds pass through unchanged.
Schedule split_rounds(const Schedule& s, int tx_per_gpu, int rx_per_gpu);

}  // namespace pccl
