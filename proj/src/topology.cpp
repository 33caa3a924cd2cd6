#include "pccl/topology.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace pccl {

std::string to_string(TopologyKind kind) {
  switch (kind) {
    case TopologyKind::Ring: return "ring";
    case TopologyKind::Torus2d: return "torus2d";
    case TopologyKind::Torus3d: return "torus3d";
    case TopologyKind::Grid2d: return "grid2d";
    case TopologyKind::Grid3d: return "grid3d";
    case TopologyKind::RoundDerived: return "round_derived";
    case TopologyKind::Custom: return "custom";
  }
  return "custom";
}

TopologyKind topology_kind_from_string(const std::string& s) {
  if (s == "ring") return TopologyKind::Ring;
  if (s == "torus2d") return TopologyKind::Torus2d;
  if (s == "torus3d") return TopologyKind::Torus3d;
  if (s == "grid2d") return TopologyKind::Grid2d;
  if (s == "grid3d") return TopologyKind::Grid3d;
  if (s == "round_derived") return TopologyKind::RoundDerived;
  if (s == "custom") return TopologyKind::Custom;
  throw std::invalid_argument("unknown topology kind: " + s);
}

Topology::Topology(int n, TopologyKind kind, std::vector<int> dims,
                   std::vector<std::pair<int, int>> edges)
    : n_(n), kind_(kind), dims_(std::move(dims)) {
  if (n <= 0) throw std::invalid_argument("topology needs n > 0");
  edges_.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u == v) throw std::invalid_argument("self-loop edge");
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw std::invalid_argument("edge endpoint out of range");
    edges_.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  adj_.resize(n_);
  for (auto [u, v] : edges_) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
}

bool Topology::has_edge(int u, int v) const {
  if (u > v) std::swap(u, v);
  return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(u, v));
}

namespace {

// rank = c0 + dims[0]*(c1 + dims[1]*c2 + ...)
std::vector<int> rank_to_coords(int rank, const std::vector<int>& dims) {
  std::vector<int> c(dims.size());
  for (size_t d = 0; d < dims.size(); ++d) {
    c[d] = rank % dims[d];
    rank /= dims[d];
  }
  return c;
}

int coords_to_rank(const std::vector<int>& c, const std::vector<int>& dims) {
  int rank = 0;
  for (size_t d = dims.size(); d-- > 0;) rank = rank * dims[d] + c[d];
  return rank;
}

std::vector<std::pair<int, int>> lattice_edges(const std::vector<int>& dims,
                                               bool wraparound) {
  int n = std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>{});
  std::vector<std::pair<int, int>> edges;
  for (int r = 0; r < n; ++r) {
    auto c = rank_to_coords(r, dims);
    for (size_t d = 0; d < dims.size(); ++d) {
      if (c[d] + 1 < dims[d]) {
        auto c2 = c;
        c2[d]++;
        edges.emplace_back(r, coords_to_rank(c2, dims));
      } else if (wraparound && dims[d] > 2) {
        // dim of size 2: the wraparound duplicates the direct edge.
        auto c2 = c;
        c2[d] = 0;
        edges.emplace_back(r, coords_to_rank(c2, dims));
      }
    }
  }
  return edges;
}

}  // namespace

Topology make_topology(TopologyKind kind, const std::vector<int>& dims) {
  if (dims.empty()) throw std::invalid_argument("dims must be nonempty");
  for (int d : dims)
    if (d < 2) throw std::invalid_argument("every dim must be >= 2");
  int n = std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>{});

  switch (kind) {
    case TopologyKind::Ring: {
      if (dims.size() != 1 || dims[0] < 3)
        throw std::invalid_argument("ring needs a single dim >= 3");
      std::vector<std::pair<int, int>> edges;
      for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
      return Topology(n, kind, dims, std::move(edges));
    }
    case TopologyKind::Torus2d:
    case TopologyKind::Torus3d: {
      size_t want = kind == TopologyKind::Torus2d ? 2 : 3;
      if (dims.size() != want)
        throw std::invalid_argument("torus dims do not match kind");
      return Topology(n, kind, dims, lattice_edges(dims, true));
    }
    case TopologyKind::Grid2d:
    case TopologyKind::Grid3d: {
      size_t want = kind == TopologyKind::Grid2d ? 2 : 3;
      if (dims.size() != want)
        throw std::invalid_argument("grid dims do not match kind");
      return Topology(n, kind, dims, lattice_edges(dims, false));
    }
    default:
      throw std::invalid_argument("cannot generate kind " + to_string(kind));
  }
}

Topology make_topology(const std::string& kind, const std::vector<int>& dims) {
  return make_topology(topology_kind_from_string(kind), dims);
}

Topology round_topology(const std::vector<Transfer>& round, int n) {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(round.size());
  for (const auto& t : round) edges.emplace_back(t.src, t.dst);
  return Topology(n, TopologyKind::RoundDerived, {}, std::move(edges));
}

std::vector<int> bfs_distances(const Topology& t, int src) {
  std::vector<int> dist(t.n(), -1);
  dist[src] = 0;
  std::deque<int> q{src};
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int v : t.neighbors(u)) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        q.push_back(v);
      }
    }
  }
  return dist;
}

std::optional<std::vector<int>> shortest_path(const Topology& t, int src,
                                              int dst) {
  if (src == dst) return std::vector<int>{src};
  auto dist = bfs_distances(t, dst);
  if (dist[src] < 0) return std::nullopt;
  // Walk from src, always taking the lowest-rank neighbor that makes
  // progress toward dst. Neighbors are stored sorted, so the first hit wins.
  std::vector<int> path{src};
  int cur = src;
  while (cur != dst) {
    for (int v : t.neighbors(cur)) {
      if (dist[v] == dist[cur] - 1) {
        cur = v;
        break;
      }
    }
    path.push_back(cur);
  }
  return path;
}

}  // namespace pccl
