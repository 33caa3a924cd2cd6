#include "pccl/fiber_planner.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <stdexcept>

namespace pccl {

namespace {

std::pair<int, int> key(int u, int v) { return {std::min(u, v), std::max(u, v)}; }

using LoadMap = std::map<std::pair<int, int>, int>;

// Dijkstra over link costs; returns empty when no path exists under the
// cost function (cost < 0 marks an unusable link).
std::vector<int> cheapest_path(const std::vector<std::vector<int>>& adj,
                               int src, int dst,
                               const std::function<double(int, int)>& cost) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(adj.size(), inf);
  std::vector<int> prev(adj.size(), -1);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[src] = 0;
  pq.push({0, src});
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    for (int v : adj[u]) {
      double c = cost(u, v);
      if (c < 0) continue;
      if (d + c < dist[v]) {
        dist[v] = d + c;
        prev[v] = u;
        pq.push({dist[v], v});
      }
    }
  }
  if (dist[dst] == inf) return {};
  std::vector<int> path;
  for (int v = dst; v != -1; v = prev[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

void apply_path(LoadMap& loads, const std::vector<int>& path, int delta) {
  for (size_t i = 0; i + 1 < path.size(); ++i)
    loads[key(path[i], path[i + 1])] += delta;
}

// One randomized feasibility attempt for candidate z: sequential routing
// under residual capacity, ripping up and re-queuing paths that block a
// request with no capacity-respecting route.
bool attempt(const ServerGraph& g, const std::vector<std::vector<int>>& adj,
             const std::vector<FiberRequest>& requests, int z,
             std::vector<int> order, std::vector<std::vector<int>>& out) {
  LoadMap loads = g.edge_count;
  std::vector<std::vector<int>> paths(requests.size());
  std::deque<int> queue(order.begin(), order.end());
  size_t ripups_left = 4 * requests.size() + 16;
  while (!queue.empty()) {
    int i = queue.front();
    queue.pop_front();
    const auto& rq = requests[i];
    auto strict = [&](int u, int v) -> double {
      int l = loads[key(u, v)];
      return l >= z ? -1.0 : 1.0 + 1e-3 * l;
    };
    auto path = cheapest_path(adj, rq.src, rq.dst, strict);
    if (path.empty()) {
      if (ripups_left == 0) return false;
      --ripups_left;
      // Route through the fewest saturated links, then evict their users.
      auto soft = [&](int u, int v) -> double {
        int l = loads[key(u, v)];
        return l >= z ? 1e6 + (l - z) * 1e6 : 1.0 + 1e-3 * l;
      };
      path = cheapest_path(adj, rq.src, rq.dst, soft);
      if (path.empty()) return false;  // genuinely disconnected
      std::set<std::pair<int, int>> hot;
      for (size_t e = 0; e + 1 < path.size(); ++e)
        if (loads[key(path[e], path[e + 1])] >= z)
          hot.insert(key(path[e], path[e + 1]));
      for (size_t j = 0; j < paths.size(); ++j) {
        if (paths[j].empty()) continue;
        bool blocks = false;
        for (size_t e = 0; e + 1 < paths[j].size(); ++e)
          if (hot.count(key(paths[j][e], paths[j][e + 1]))) blocks = true;
        if (blocks) {
          apply_path(loads, paths[j], -1);
          paths[j].clear();
          queue.push_back(static_cast<int>(j));
        }
      }
      // Re-check capacity after eviction; give up the attempt otherwise.
      bool ok = true;
      for (size_t e = 0; e + 1 < path.size(); ++e)
        if (loads[key(path[e], path[e + 1])] >= z) ok = false;
      if (!ok) return false;
    }
    apply_path(loads, path, +1);
    paths[i] = std::move(path);
  }
  out = std::move(paths);
  return true;
}

int lower_bound(const ServerGraph& g, const std::vector<FiberRequest>& reqs,
                const std::vector<std::vector<int>>& adj) {
  int lb = reqs.empty() ? 0 : 1;
  for (const auto& [e, c] : g.edge_count) lb = std::max(lb, c);
  // Node cuts: everything touching v crosses its incident links.
  for (int v = 0; v < g.n_servers; ++v) {
    int deg = static_cast<int>(adj[v].size());
    if (deg == 0) continue;
    int demand = 0;
    for (const auto& r : reqs) demand += (r.src == v) + (r.dst == v);
    for (int u : adj[v]) {
      auto it = g.edge_count.find(key(u, v));
      if (it != g.edge_count.end()) demand += it->second;
    }
    lb = std::max(lb, (demand + deg - 1) / deg);
  }
  // Straight-line cuts for grid instances.
  if (g.dims.size() == 2) {
    int w = g.dims[0], h = g.dims[1];
    auto col = [&](int s) { return s % w; };
    auto row = [&](int s) { return s / w; };
    for (int c = 0; c + 1 < w; ++c) {
      int demand = 0;
      for (const auto& r : reqs)
        demand += (col(r.src) <= c) != (col(r.dst) <= c);
      for (int y = 0; y < h; ++y) {
        auto it = g.edge_count.find(key(y * w + c, y * w + c + 1));
        if (it != g.edge_count.end()) demand += it->second;
      }
      lb = std::max(lb, (demand + h - 1) / h);
    }
    for (int r0 = 0; r0 + 1 < h; ++r0) {
      int demand = 0;
      for (const auto& r : reqs)
        demand += (row(r.src) <= r0) != (row(r.dst) <= r0);
      for (int x = 0; x < w; ++x) {
        auto it = g.edge_count.find(key(r0 * w + x, (r0 + 1) * w + x));
        if (it != g.edge_count.end()) demand += it->second;
      }
      lb = std::max(lb, (demand + w - 1) / w);
    }
  }
  return lb;
}

void enumerate_paths(const std::vector<std::vector<int>>& adj, int cur,
                     int dst, std::vector<int>& walk, std::vector<bool>& used,
                     std::vector<std::vector<int>>& out) {
  if (cur == dst) {
    out.push_back(walk);
    return;
  }
  for (int v : adj[cur]) {
    if (used[v]) continue;
    used[v] = true;
    walk.push_back(v);
    enumerate_paths(adj, v, dst, walk, used, out);
    walk.pop_back();
    used[v] = false;
  }
}

FiberPlan exhaustive_plan(const ServerGraph& g,
                          const std::vector<std::vector<int>>& adj,
                          const std::vector<FiberRequest>& requests) {
  std::vector<std::vector<std::vector<int>>> options;
  for (const auto& r : requests) {
    std::vector<std::vector<int>> paths;
    std::vector<int> walk{r.src};
    std::vector<bool> used(g.n_servers, false);
    used[r.src] = true;
    enumerate_paths(adj, r.src, r.dst, walk, used, paths);
    if (paths.empty()) throw std::runtime_error("request endpoints disconnected");
    options.push_back(std::move(paths));
  }
  std::vector<std::vector<int>> best, chosen(requests.size());
  int best_z = std::numeric_limits<int>::max();
  LoadMap loads = g.edge_count;
  int base = 0;
  for (const auto& [e, c] : loads) base = std::max(base, c);
  auto dfs = [&](auto&& self, size_t i, int zmax) -> void {
    if (zmax >= best_z) return;
    if (i == requests.size()) {
      best_z = zmax;
      best = chosen;
      return;
    }
    for (const auto& p : options[i]) {
      apply_path(loads, p, +1);
      int nz = zmax;
      for (size_t e = 0; e + 1 < p.size(); ++e)
        nz = std::max(nz, loads[key(p[e], p[e + 1])]);
      chosen[i] = p;
      self(self, i + 1, nz);
      apply_path(loads, p, -1);
    }
  };
  dfs(dfs, 0, base);
  FiberPlan plan;
  plan.paths = best;
  plan.z = best_z;
  plan.exact = true;
  plan.link_load = g.edge_count;
  for (const auto& p : best) apply_path(plan.link_load, p, +1);
  return plan;
}

}  // namespace

std::vector<std::vector<int>> ServerGraph::adjacency() const {
  std::vector<std::vector<int>> adj(n_servers);
  for (auto [u, v] : links) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& nb : adj) std::sort(nb.begin(), nb.end());
  return adj;
}

ServerGraph make_server_grid(int width, int height) {
  if (width < 1 || height < 1)
    throw std::invalid_argument("grid dimensions must be positive");
  ServerGraph g;
  g.n_servers = width * height;
  g.dims = {width, height};
  for (int r = 0; r < height; ++r)
    for (int c = 0; c < width; ++c) {
      int s = r * width + c;
      if (c + 1 < width) g.links.push_back(key(s, s + 1));
      if (r + 1 < height) g.links.push_back(key(s, s + width));
    }
  return g;
}

bool FiberPlan::uses_edge(int request, int u, int v) const {
  if (request < 0 || request >= static_cast<int>(paths.size())) return false;
  const auto& p = paths[request];
  for (size_t i = 0; i + 1 < p.size(); ++i)
    if (p[i] == u && p[i + 1] == v) return true;
  return false;
}

FiberPlan plan_fibers(const ServerGraph& g,
                      const std::vector<FiberRequest>& requests,
                      std::uint64_t seed) {
  auto adj = g.adjacency();
  for (const auto& r : requests) {
    if (r.src < 0 || r.src >= g.n_servers || r.dst < 0 ||
        r.dst >= g.n_servers)
      throw std::invalid_argument("request endpoint out of range");
    if (r.src == r.dst)
      throw std::invalid_argument("request src == dst");
  }
  if (requests.empty()) {
    FiberPlan p;
    p.link_load = g.edge_count;
    for (const auto& [e, c] : p.link_load) p.z = std::max(p.z, c);
    p.exact = true;
    return p;
  }
  if (g.n_servers <= 6 && requests.size() <= 6)
    return exhaustive_plan(g, adj, requests);

  int lb = lower_bound(g, requests, adj);
  std::mt19937_64 rng(seed);
  std::vector<int> base_order(requests.size());
  std::iota(base_order.begin(), base_order.end(), 0);
  constexpr int kRestarts = 8;
  for (int z = lb;; ++z) {
    for (int restart = 0; restart < kRestarts; ++restart) {
      std::vector<int> order = base_order;
      if (restart > 0) std::shuffle(order.begin(), order.end(), rng);
      std::vector<std::vector<int>> paths;
      if (attempt(g, adj, requests, z, order, paths)) {
        FiberPlan plan;
        plan.paths = std::move(paths);
        plan.link_load = g.edge_count;
        for (const auto& p : plan.paths) apply_path(plan.link_load, p, +1);
        for (const auto& [e, c] : plan.link_load)
          plan.z = std::max(plan.z, c);
        plan.exact = plan.z <= lb;
        return plan;
      }
    }
    // A request pair with no path at all can never become feasible.
    if (z == lb) {
      for (const auto& r : requests) {
        auto any = cheapest_path(adj, r.src, r.dst,
                                 [](int, int) { return 1.0; });
        if (any.empty())
          throw std::runtime_error("request endpoints disconnected");
      }
    }
    if (z > lb + 4 * static_cast<int>(requests.size()))
      throw std::runtime_error("fiber feasibility search did not converge");
  }
}

bool verify_plan(const ServerGraph& g,
                 const std::vector<FiberRequest>& requests,
                 const FiberPlan& plan) {
  if (plan.paths.size() != requests.size()) return false;
  std::set<std::pair<int, int>> links(g.links.begin(), g.links.end());
  LoadMap loads = g.edge_count;
  for (size_t i = 0; i < requests.size(); ++i) {
    const auto& p = plan.paths[i];
    if (p.empty() || p.front() != requests[i].src ||
        p.back() != requests[i].dst)
      return false;
    // Per-node net flow: +1 out of the source, -1 into the destination,
    // conserved elsewhere; simple paths only.
    std::map<int, int> net;
    std::set<int> visited;
    for (size_t e = 0; e + 1 < p.size(); ++e) {
      if (!links.count(key(p[e], p[e + 1]))) return false;
      net[p[e]] += 1;
      net[p[e + 1]] -= 1;
      loads[key(p[e], p[e + 1])] += 1;
      if (!visited.insert(p[e]).second) return false;
    }
    for (const auto& [node, f] : net) {
      int expect = node == requests[i].src   ? 1
                   : node == requests[i].dst ? -1
                                             : 0;
      if (f != expect) return false;
    }
  }
  for (const auto& [e, c] : loads)
    if (c > plan.z) return false;
  return true;
}

}  // namespace pccl
