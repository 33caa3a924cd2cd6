#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pccl {

enum class TopologyKind {
  Ring,
  Torus2d,
  Torus3d,
  Grid2d,
  Grid3d,
  RoundDerived,
  Custom,
};

std::string to_string(TopologyKind kind);
TopologyKind topology_kind_from_string(const std::string& s);

/// A directed point-to-point transfer between two ranks.
struct Transfer {
  int src = 0;
  int dst = 0;

  friend bool operator==(const Transfer&, const Transfer&) = default;
  friend auto operator<=>(const Transfer&, const Transfer&) = default;
};

/// Immutable simple graph over GPU ranks 0..n-1. Edges are contention-free
/// circuits; the graph is undirected, unweighted and has uniform bandwidth.
class Topology {
 public:
  Topology() = default;

  /// Edges are normalized to (min,max), deduplicated and sorted. Throws
  /// std::invalid_argument on self-loops or out-of-range ranks.
  Topology(int n, TopologyKind kind, std::vector<int> dims,
           std::vector<std::pair<int, int>> edges);

  int n() const { return n_; }
  TopologyKind kind() const { return kind_; }
  const std::vector<int>& dims() const { return dims_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  /// Neighbors of v in ascending rank order.
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }

  bool has_edge(int u, int v) const;

  /// Graph equality: same rank count and same edge set. Kind and dims are
  /// labels and do not participate.
  friend bool operator==(const Topology& a, const Topology& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_ = 0;
  TopologyKind kind_ = TopologyKind::Custom;
  std::vector<int> dims_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adj_;
};

/// Build one of the named scale-up topologies. dims must be nonempty with
/// every dim >= 2 (>= 3 for ring); grid is the torus minus wraparound edges.
Topology make_topology(TopologyKind kind, const std::vector<int>& dims);
Topology make_topology(const std::string& kind, const std::vector<int>& dims);

/// Topology whose edges are exactly the communicating pairs of a round.
/// A bidirectional exchange maps to a single edge.
Topology round_topology(const std::vector<Transfer>& round, int n);

/// BFS distances from src; unreachable nodes get -1.
std::vector<int> bfs_distances(const Topology& t, int src);

/// Minimum-hop path with deterministic lowest-next-rank-first tie-breaking
/// (the lexicographically smallest shortest path). Empty optional when src
/// and dst are disconnected; src == dst yields the single-node path.
std::optional<std::vector<int>> shortest_path(const Topology& t, int src,
                                              int dst);

}  // namespace pccl
