#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace pccl {

/// Server-level interconnect. Nodes are servers; links are undirected and
/// carry circuits in both directions; edge_count holds pre-existing circuit
/// counts per link. For grid-shaped instances dims = {width, height} (used
/// for cut-based lower bounds), otherwise empty.
struct ServerGraph {
  int n_servers = 0;
  std::vector<std::pair<int, int>> links;  // normalized (min,max)
  std::map<std::pair<int, int>, int> edge_count;
  std::vector<int> dims;

  std::vector<std::vector<int>> adjacency() const;
};

ServerGraph make_server_grid(int width, int height);

struct FiberRequest {
  int src = 0;
  int dst = 0;
};

/// Result of plan_fibers. z is the maximum per-link circuit count (new
/// paths plus pre-existing edge_count); `exact` is set when minimality is
/// certified (exhaustive search, or z equals a combinatorial lower bound).
struct FiberPlan {
  std::vector<std::vector<int>> paths;  // one simple node path per request
  int z = 0;
  bool exact = false;
  std::map<std::pair<int, int>, int> link_load;  // final per-link totals

  /// Directed edge indicator x[u][v][i] of the flow formulation.
  bool uses_edge(int request, int u, int v) const;
};

/// Routes every request minimizing the maximum per-link circuit count.
/// Searches candidate z values upward from a lower bound; feasibility per
/// candidate uses sequential shortest-path routing with rip-up/reroute and
/// seeded randomized restarts. Instances with <= 6 servers and <= 6
/// requests are solved by exhaustive path enumeration instead.
/// Throws std::invalid_argument on bad endpoints, std::runtime_error when
/// some request's endpoints are disconnected.
FiberPlan plan_fibers(const ServerGraph& g,
                      const std::vector<FiberRequest>& requests,
                      std::uint64_t seed = 0);

/// Checks the flow-conservation constraint families: each path emits one
/// unit at its source, absorbs one at its destination, conserves flow at
/// intermediate servers, uses only existing links, and z bounds every
/// link's total load.
bool verify_plan(const ServerGraph& g,
                 const std::vector<FiberRequest>& requests,
                 const FiberPlan& plan);

}  // namespace pccl
