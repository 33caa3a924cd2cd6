#include "pccl/mesh_router.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace pccl {

namespace {

std::pair<int, int> edge_key(int u, int v) {
  return {std::min(u, v), std::max(u, v)};
}

// Soft-exclusion surcharge for edges already at their reuse limit on the
// request's wavelength. Large enough that any saturated-edge-free path is
// preferred over any path through a saturated edge, yet finite so that the
// penalize-and-retry loop still has candidate paths to work on when no
// free path exists.
constexpr double kSaturatedSurcharge = 1e9;

// Deterministic Dijkstra; ties broken toward the lower node id by the
// (distance, node) priority ordering.
std::vector<int> weighted_shortest_path(const MeshGraph& g, int src, int dst,
                                        int wavelength, int max_overlap) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(g.n_nodes(), inf);
  std::vector<int> prev(g.n_nodes(), -1);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[src] = 0;
  pq.push({0, src});
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    if (u == dst) break;
    for (int v : g.neighbors(u)) {
      double nd = d + g.weight(u, v);
      if (g.count(u, v, wavelength) >= max_overlap) nd += kSaturatedSurcharge;
      if (nd < dist[v] || (nd == dist[v] && u < prev[v])) {
        dist[v] = nd;
        prev[v] = u;
        pq.push({nd, v});
      }
    }
  }
  if (dist[dst] == inf) return {};
  std::vector<int> path;
  for (int v = dst; v != -1; v = prev[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

std::vector<int> MeshGraph::neighbors(int node) const {
  int r = node / width, c = node % width;
  std::vector<int> out;
  if (r > 0) out.push_back(node - width);
  if (c > 0) out.push_back(node - 1);
  if (c + 1 < width) out.push_back(node + 1);
  if (r + 1 < height) out.push_back(node + width);
  return out;
}

double MeshGraph::weight(int u, int v) const {
  auto it = weights.find(edge_key(u, v));
  return it == weights.end() ? 1.0 : it->second;
}

int MeshGraph::count(int u, int v, int wavelength) const {
  auto it = edge_counts.find({edge_key(u, v), wavelength});
  return it == edge_counts.end() ? 0 : it->second;
}

MeshGraph make_mesh(int width, int height) {
  if (width < 1 || height < 1)
    throw std::invalid_argument("mesh dimensions must be positive");
  MeshGraph g;
  g.width = width;
  g.height = height;
  return g;
}

std::vector<RouteResult> route_all(MeshGraph& g,
                                   const std::vector<RouteRequest>& pairs,
                                   int max_overlap, double penalize_factor,
                                   int trials) {
  if (trials < 1 || penalize_factor <= 1.0 || max_overlap < 1)
    throw std::invalid_argument("bad routing parameters");
  std::vector<RouteResult> results;
  for (const RouteRequest& req : pairs) {
    if (req.src < 0 || req.src >= g.n_nodes() || req.dst < 0 ||
        req.dst >= g.n_nodes())
      throw std::invalid_argument("route endpoint off-grid");
    RouteResult res;
    res.request = req;
    for (int attempt = 0; attempt < trials; ++attempt) {
      auto path = weighted_shortest_path(g, req.src, req.dst, req.wavelength,
                                         max_overlap);
      if (path.empty()) break;
      bool valid = true;
      for (size_t i = 0; i + 1 < path.size(); ++i)
        if (g.count(path[i], path[i + 1], req.wavelength) >= max_overlap)
          valid = false;
      if (valid) {
        for (size_t i = 0; i + 1 < path.size(); ++i) {
          auto key = edge_key(path[i], path[i + 1]);
          g.edge_counts[{key, req.wavelength}]++;
          double& w = g.weights.try_emplace(key, 1.0).first->second;
          w *= penalize_factor;
        }
        res.path = std::move(path);
        res.routed = true;
        break;
      }
      // Penalize only the saturated edges so the next attempt detours.
      for (size_t i = 0; i + 1 < path.size(); ++i) {
        if (g.count(path[i], path[i + 1], req.wavelength) >= max_overlap) {
          auto key = edge_key(path[i], path[i + 1]);
          double& w = g.weights.try_emplace(key, 1.0).first->second;
          w *= penalize_factor;
        }
      }
    }
    results.push_back(std::move(res));
  }
  return results;
}

bool validate_routes(const MeshGraph& g,
                     const std::vector<RouteResult>& routes, int max_overlap) {
  std::map<std::pair<std::pair<int, int>, int>, int> counts;
  for (const RouteResult& r : routes) {
    if (!r.routed) continue;
    if (r.path.empty() || r.path.front() != r.request.src ||
        r.path.back() != r.request.dst)
      return false;
    for (size_t i = 0; i + 1 < r.path.size(); ++i) {
      int u = r.path[i], v = r.path[i + 1];
      if (u < 0 || u >= g.n_nodes() || v < 0 || v >= g.n_nodes()) return false;
      auto nb = g.neighbors(u);
      if (std::find(nb.begin(), nb.end(), v) == nb.end()) return false;
      if (++counts[{edge_key(u, v), r.request.wavelength}] > max_overlap)
        return false;
    }
  }
  return true;
}

}  // namespace pccl
