#include "pccl/taskgraph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <set>
#include <stdexcept>

#include "pccl/reconfig_planner.hpp"

namespace pccl {

namespace {

std::vector<int> topological_order(const TaskGraph& g,
                                   const std::vector<std::vector<int>>& succ) {
  std::vector<int> indeg(g.nodes.size(), 0);
  for (const auto& adj : succ)
    for (int v : adj) indeg[v]++;
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (size_t i = 0; i < g.nodes.size(); ++i)
    if (indeg[i] == 0) ready.push(static_cast<int>(i));
  std::vector<int> order;
  while (!ready.empty()) {
    int u = ready.top();
    ready.pop();
    order.push_back(u);
    for (int v : succ[u])
      if (--indeg[v] == 0) ready.push(v);
  }
  if (order.size() != g.nodes.size())
    throw std::invalid_argument("task graph contains a cycle");
  return order;
}

std::vector<std::vector<int>> successors(const TaskGraph& g) {
  std::vector<std::vector<int>> succ(g.nodes.size());
  for (const auto& [a, b] : g.edges) {
    int u = g.index_of(a), v = g.index_of(b);
    if (u < 0 || v < 0) throw std::invalid_argument("edge references unknown node");
    succ[u].push_back(v);
  }
  return succ;
}

bool reaches(const std::vector<std::vector<int>>& succ, int from, int to) {
  std::vector<int> stack{from};
  std::set<int> seen;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    if (u == to) return true;
    if (!seen.insert(u).second) continue;
    for (int v : succ[u]) stack.push_back(v);
  }
  return false;
}

// Earliest-start times over compute durations only; comm nodes are treated
// as instantaneous so "readiness" reflects when the surrounding layer
// enqueues them.
std::vector<double> readiness_times(const TaskGraph& g,
                                    const std::vector<std::vector<int>>& succ) {
  auto order = topological_order(g, succ);
  std::vector<double> start(g.nodes.size(), 0.0);
  for (int u : order) {
    double finish =
        start[u] + (g.nodes[u].is_comm ? 0.0 : g.nodes[u].duration_s);
    for (int v : succ[u]) start[v] = std::max(start[v], finish);
  }
  return start;
}

bool is_power_of_two(int n) { return n >= 2 && (n & (n - 1)) == 0; }

}  // namespace

int TaskGraph::index_of(const std::string& id) const {
  for (size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].id == id) return static_cast<int>(i);
  return -1;
}

TaskGraph tag_comm_nodes(const TaskGraph& g) {
  TaskGraph out = g;
  for (auto& node : out.nodes) {
    if (!node.is_comm || !node.comm.label.empty() || node.comm.pattern.empty())
      continue;
    auto& c = node.comm;
    std::set<int> parts;
    for (const auto& t : c.pattern) {
      parts.insert(t.src);
      parts.insert(t.dst);
    }
    c.ranks.assign(parts.begin(), parts.end());
    bool uniform = true;
    for (const auto& t : c.pattern)
      if (t.bytes != c.pattern[0].bytes) uniform = false;

    if (c.pattern.size() == 1) {
      c.label = "l_to_l";
      if (c.bytes == 0) c.bytes = c.pattern[0].bytes;
      continue;
    }
    int n = static_cast<int>(parts.size());
    std::set<std::pair<int, int>> pairs;
    for (const auto& t : c.pattern) pairs.insert({t.src, t.dst});
    bool all_pairs = uniform &&
                     pairs.size() == c.pattern.size() &&
                     static_cast<int>(pairs.size()) == n * (n - 1);
    if (all_pairs) {
      c.label = "all_to_all";
      if (c.bytes == 0) c.bytes = c.pattern[0].bytes * n;
      continue;
    }
    // Regular uniform exchange spanning the participants: reduction-style.
    std::map<int, int> outdeg, indeg;
    for (const auto& [s, d] : pairs) {
      outdeg[s]++;
      indeg[d]++;
    }
    bool regular = uniform && pairs.size() == c.pattern.size();
    for (int r : c.ranks)
      if (outdeg[r] != indeg[r] || outdeg[r] < 1) regular = false;
    if (regular && n >= 2) {
      c.label = "all_reduce";
      if (c.bytes == 0) c.bytes = c.pattern[0].bytes * outdeg[c.ranks[0]];
      continue;
    }
    c.label = "l_to_l";
    if (c.bytes == 0)
      for (const auto& t : c.pattern) c.bytes = std::max(c.bytes, t.bytes);
  }
  return out;
}

TaskGraph coschedule(const TaskGraph& g, double epsilon, int* warnings) {
  TaskGraph out = g;
  auto succ = successors(out);
  auto ready = readiness_times(out, succ);
  int skipped = 0;
  for (size_t a = 0; a < out.nodes.size(); ++a) {
    if (!out.nodes[a].is_comm || out.nodes[a].comm.label != "l_to_l") continue;
    for (size_t b = 0; b < out.nodes.size(); ++b) {
      if (a == b || !out.nodes[b].is_comm ||
          out.nodes[b].comm.label != "all_reduce")
        continue;
      if (std::abs(ready[a] - ready[b]) > epsilon) continue;
      if (std::find(succ[a].begin(), succ[a].end(), static_cast<int>(b)) !=
          succ[a].end())
        continue;
      if (reaches(succ, static_cast<int>(b), static_cast<int>(a))) {
        skipped++;
        continue;
      }
      succ[a].push_back(static_cast<int>(b));
      out.edges.push_back({out.nodes[a].id, out.nodes[b].id});
    }
  }
  if (warnings) *warnings = skipped;
  return out;
}

namespace {

struct CommValuation {
  double duration = 0;
  std::string algorithm;
  int n_reconfigs = 0;
  Topology next_state;  // pccl only: fabric state left behind
};

std::vector<std::pair<Algorithm, Schedule>> candidate_schedules(
    const std::string& label, double bytes, const Topology& t0) {
  int n = t0.n();
  std::vector<std::pair<Algorithm, Schedule>> out;
  Primitive prim = label == "all_reduce"  ? Primitive::ReduceScatter
                   : label == "all_to_all" ? Primitive::AllToAll
                                           : primitive_from_string(label);
  if (prim == Primitive::AllToAll) {
    if (is_power_of_two(n)) out.push_back({Algorithm::Dex, dex_schedule(n, bytes)});
    return out;
  }
  out.push_back({Algorithm::Ring, ring_schedule(n, prim, bytes)});
  if (is_power_of_two(n)) out.push_back({Algorithm::Rhd, rhd_schedule(n, prim, bytes)});
  if (t0.dims().size() >= 2)
    out.push_back({Algorithm::Bucket, bucket_schedule(t0.dims(), prim, bytes)});
  return out;
}

CommValuation value_comm(const CommSpec& c, const SimBackend& backend,
                         const Topology& t0, const Topology& state,
                         const CostParams& p) {
  CommValuation v;
  v.next_state = state;
  if (c.label == "l_to_l") {
    v.duration = p.alpha + p.beta * c.bytes;
    v.algorithm = "direct";
    return v;
  }
  // all_reduce costs exactly twice its reduce_scatter configuration.
  double multiplier = c.label == "all_reduce" ? 2.0 : 1.0;
  if (backend.kind == BackendKind::Baseline) {
    Primitive prim = c.label == "all_reduce" ? Primitive::ReduceScatter
                     : c.label == "all_to_all" ? Primitive::AllToAll
                                               : primitive_from_string(c.label);
    Schedule s;
    if (prim == Primitive::AllToAll) {
      s = dex_schedule(t0.n(), c.bytes);
      v.algorithm = "dex";
    } else if (backend.algorithm == Algorithm::Rhd) {
      s = rhd_schedule(t0.n(), prim, c.bytes);
      v.algorithm = "rhd";
    } else if (backend.algorithm == Algorithm::Bucket &&
               t0.dims().size() >= 2) {
      s = bucket_schedule(t0.dims(), prim, c.bytes);
      v.algorithm = "bucket";
    } else {
      s = ring_schedule(t0.n(), prim, c.bytes);
      v.algorithm = "ring";
    }
    v.duration = multiplier * schedule_cost(t0, s, p).total;
    return v;
  }
  // pccl: cheapest reconfiguration plan across applicable algorithms,
  // starting from the fabric state left by the previous collective.
  double best = -1;
  for (auto& [algo, sched] : candidate_schedules(c.label, c.bytes, t0)) {
    PlannerInput in{state, {}, sched, p};
    ReconfigPlan plan_result = plan(in);
    if (best < 0 || plan_result.total_time < best) {
      best = plan_result.total_time;
      v.algorithm = to_string(algo);
      v.n_reconfigs = plan_result.n_reconfigs;
      v.next_state = plan_result.per_round.empty()
                         ? state
                         : choice_topology(in, plan_result.per_round.back().choice);
    }
  }
  if (best < 0) throw std::invalid_argument("no applicable algorithm for " + c.label);
  v.duration = multiplier * best;
  return v;
}

}  // namespace

IterationReport simulate(const TaskGraph& g, const SimBackend& backend,
                         const Topology& t0, const CostParams& p) {
  auto succ = successors(g);
  auto order = topological_order(g, succ);

  // Value comm nodes in topological order so the pccl fabric state threads
  // from one collective to the next.
  std::vector<double> duration(g.nodes.size(), 0.0);
  IterationReport report;
  Topology state = t0;
  for (int u : order) {
    const TaskNode& node = g.nodes[u];
    if (!node.is_comm) {
      duration[u] = node.duration_s;
      continue;
    }
    if (node.comm.label.empty())
      throw std::invalid_argument("untagged comm node: " + node.id);
    CommValuation v = value_comm(node.comm, backend, t0, state, p);
    duration[u] = v.duration;
    state = v.next_state;
    report.comms.push_back(
        {node.id, node.comm.label, v.algorithm, v.duration, v.n_reconfigs});
  }

  std::vector<double> start(g.nodes.size(), 0.0);
  for (int u : order)
    for (int v : succ[u])
      start[v] = std::max(start[v], start[u] + duration[u]);
  for (size_t i = 0; i < g.nodes.size(); ++i) {
    report.timings.push_back(
        {g.nodes[i].id, start[i], start[i] + duration[i]});
    report.makespan_s = std::max(report.makespan_s, start[i] + duration[i]);
  }
  report.throughput_it_per_s =
      report.makespan_s > 0 ? 1.0 / report.makespan_s : 0.0;
  return report;
}

TaskGraph make_transformer_graph(int layers, int n_ranks, double compute_s,
                                 double min_buffer, double max_buffer) {
  if (layers < 1 || n_ranks < 2)
    throw std::invalid_argument("need >= 1 layer and >= 2 ranks");
  TaskGraph g;
  std::vector<int> all_ranks(n_ranks);
  for (int i = 0; i < n_ranks; ++i) all_ranks[i] = i;

  double buffer = min_buffer;
  for (int l = 0; l < layers; ++l) {
    std::string cid = "compute_" + std::to_string(l);
    g.nodes.push_back({cid, false, compute_s, {}});
    if (l > 0) {
      std::string act = "l_to_l_" + std::to_string(l - 1);
      TaskNode t;
      t.id = act;
      t.is_comm = true;
      t.comm.label = "l_to_l";
      t.comm.bytes = min_buffer;
      t.comm.ranks = {0, 1};
      g.nodes.push_back(t);
      g.edges.push_back({"compute_" + std::to_string(l - 1), act});
      g.edges.push_back({act, cid});
    }
    TaskNode ar;
    ar.id = "all_reduce_" + std::to_string(l);
    ar.is_comm = true;
    ar.comm.label = "all_reduce";
    ar.comm.bytes = buffer;
    ar.comm.ranks = all_ranks;
    g.nodes.push_back(ar);
    g.edges.push_back({cid, ar.id});
    g.edges.push_back({ar.id, "sink"});
    buffer *= 2;
    if (buffer > max_buffer) buffer = min_buffer;
  }
  g.nodes.push_back({"sink", false, 0.0, {}});
  g.edges.push_back({"compute_" + std::to_string(layers - 1), "sink"});
  return g;
}

}  // namespace pccl
