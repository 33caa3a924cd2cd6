#pragma once

#include <map>
#include <utility>
#include <vector>

namespace pccl {

/// Grid of MZI switch nodes joined by waveguide edges (4-neighbor
/// adjacency). Node id = row * width + col. Edge keys are normalized
/// (min,max) node pairs; circuit counts are tracked per (edge, wavelength)
/// and routing weights per edge.
struct MeshGraph {
  int width = 0;
  int height = 0;
  std::map<std::pair<std::pair<int, int>, int>, int> edge_counts;
  std::map<std::pair<int, int>, double> weights;  // absent edge => 1.0

  int n_nodes() const { return width * height; }
  std::vector<int> neighbors(int node) const;
  double weight(int u, int v) const;
  int count(int u, int v, int wavelength) const;
};

MeshGraph make_mesh(int width, int height);

struct RouteRequest {
  int src = 0;
  int dst = 0;
  int wavelength = 0;
};

struct RouteResult {
  RouteRequest request;
  std::vector<int> path;  // empty when unrouted
  bool routed = false;
};

inline constexpr int kDefaultTrials = 16;
inline constexpr double kDefaultPenalizeFactor = 2.0;
inline constexpr int kDefaultMaxOverlap = 1;

/// Routes each request in order via weighted shortest path; a path is
/// committed only if no traversed edge's same-wavelength count would exceed
/// max_overlap. Rejected attempts multiply the weights of the overused
/// edges by penalize_factor and retry, up to `trials` times; requests still
/// invalid after that are reported unrouted. Mutates g (counts + weights).
std::vector<RouteResult> route_all(MeshGraph& g,
                                   const std::vector<RouteRequest>& pairs,
                                   int max_overlap = kDefaultMaxOverlap,
                                   double penalize_factor =
                                       kDefaultPenalizeFactor,
                                   int trials = kDefaultTrials);

/// True iff every routed path is a connected grid walk with in-range nodes
/// and no (edge, wavelength) is used by more than max_overlap routes.
bool validate_routes(const MeshGraph& g,
                     const std::vector<RouteResult>& routes,
                     int max_overlap = kDefaultMaxOverlap);

}  // namespace pccl
