// Acceptance suite: each criterion of the build contract is pinned as a
// numbered check. Run with the criterion number as the only argument; one
// "CRITERION <k> PASS|FAIL" line is printed and the exit code reflects it.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pccl/benchmark.hpp"
#include "pccl/fiber_planner.hpp"
#include "pccl/json_io.hpp"
#include "pccl/mesh_router.hpp"
#include "pccl/reconfig_planner.hpp"
#include "pccl/taskgraph.hpp"

using namespace pccl;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

double now_s() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch())
      .count();
}

// The five 128-rank evaluation topologies used by several criteria.
std::vector<Topology> eval_topologies(int n) {
  std::vector<int> d2, d3;
  if (n == 32) {
    d2 = {4, 8};
    d3 = {2, 4, 4};
  } else if (n == 64) {
    d2 = {8, 8};
    d3 = {4, 4, 4};
  } else {
    d2 = {8, 16};
    d3 = {4, 4, 8};
  }
  return {make_topology("ring", {n}), make_topology("torus2d", d2),
          make_topology("torus3d", d3), make_topology("grid2d", d2),
          make_topology("grid3d", d3)};
}

// --- Criterion 1: planner exactness on randomized instances ---------------
Outcome criterion1() {
  Outcome o;
  double t0 = now_s();
  std::mt19937 rng(1234);
  CostParams base;
  int instances = 0;
  for (int trial = 0; trial < 200; ++trial) {
    int n = 4 + static_cast<int>(rng() % 13);  // 4..16 ranks
    PlannerInput in;
    in.g0 = make_topology("ring", {n});
    int s_count = static_cast<int>(rng() % 3);  // |S| <= 2
    for (int s = 0; s < s_count; ++s) {
      std::vector<Transfer> m;
      for (int k = 0; k < n / 2; ++k) {
        int a = static_cast<int>(rng() % n), b = static_cast<int>(rng() % n);
        if (a != b) m.push_back({a, b});
      }
      if (m.empty()) m.push_back({0, 1});
      in.standard_set.push_back(round_topology(m, n));
    }
    in.schedule.n_ranks = n;
    int rounds = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < rounds; ++i) {
      ScheduleRound r;
      r.size_bytes = static_cast<double>(1 + rng() % 512) * 1e6;
      int m = 1 + static_cast<int>(rng() % n);
      for (int k = 0; k < m; ++k) {
        int a = static_cast<int>(rng() % n), b = static_cast<int>(rng() % n);
        if (a != b) r.transfers.push_back({a, b});
      }
      if (r.transfers.empty()) r.transfers.push_back({0, 1});
      in.schedule.rounds.push_back(std::move(r));
    }
    double rs[] = {0.0, base.alpha, 10 * base.alpha, 1000 * base.alpha};
    in.params.reconf_delay = rs[trial % 4];
    ReconfigPlan fast = plan(in);
    ReconfigPlan slow = brute_force_plan(in);
    instances++;
    if (fast.total_time != slow.total_time) {
      o.require(false, "mismatch on instance " + std::to_string(trial));
      break;
    }
  }
  double elapsed = now_s() - t0;
  o.require(instances >= 200, "only " + std::to_string(instances) + " instances");
  o.require(elapsed < 60.0, "runtime " + std::to_string(elapsed) + "s");
  o.note(std::to_string(instances) + " instances exact in " +
         format_float(elapsed) + "s");
  return o;
}

// --- Criterion 2: reconfiguration counts for RHD, N=128 -------------------
Outcome criterion2() {
  Outcome o;
  PlannerInput in;
  in.g0 = make_topology("ring", {128});
  in.schedule = rhd_schedule(128, Primitive::ReduceScatter, 256e6);
  in.params.reconf_delay = 5e-6;
  int reconfigs_small_r = plan(in).n_reconfigs;
  o.require(reconfigs_small_r == 7,
            "r=5us/256MB gave " + std::to_string(reconfigs_small_r) +
                " reconfigs, expected 7");

  in.schedule = rhd_schedule(128, Primitive::ReduceScatter, 1e9);
  in.params.reconf_delay = 1e-3;
  int reconfigs_big_r = plan(in).n_reconfigs;
  o.require(std::abs(reconfigs_big_r - 4) <= 1,
            "r=1ms/1GB gave " + std::to_string(reconfigs_big_r) +
                " reconfigs, expected 4 +/- 1");

  in.schedule = rhd_schedule(128, Primitive::ReduceScatter, 256e6);
  int prev = 1 << 30;
  for (double r : {5e-6, 10e-6, 25e-6, 50e-6, 500e-6, 1e-3}) {
    in.params.reconf_delay = r;
    int cur = plan(in).n_reconfigs;
    o.require(cur <= prev, "non-monotone at r=" + format_float(r));
    prev = cur;
  }
  o.note("7 @ r=5us, " + std::to_string(reconfigs_big_r) + " @ r=1ms");
  return o;
}

// --- Criterion 3: planner never loses to any baseline ---------------------
Outcome criterion3() {
  Outcome o;
  CostParams p;  // r = 5us
  for (const Topology& t : eval_topologies(128)) {
    for (double buffer : {32e6, 256e6, 1e9}) {
      double best_baseline = -1;
      std::vector<Algorithm> baselines = {Algorithm::Ring, Algorithm::Rhd};
      if (t.dims().size() >= 2) baselines.push_back(Algorithm::Bucket);
      for (Algorithm a : baselines) {
        Schedule s = build_schedule(t, a, Primitive::ReduceScatter, buffer);
        double c = schedule_cost(t, s, p).total;
        if (best_baseline < 0 || c < best_baseline) best_baseline = c;
      }
      double pccl_time =
          pccl_best(t, Primitive::ReduceScatter, buffer, p).plan.total_time;
      if (pccl_time > best_baseline) {
        std::ostringstream what;
        what << to_string(t.kind()) << " @ " << format_float(buffer)
             << "B: pccl " << format_float(pccl_time) << " > baseline "
             << format_float(best_baseline);
        o.require(false, what.str());
      }
    }
  }
  if (o.pass) o.note("pccl <= min baseline on all 15 cells");
  return o;
}

// --- Criterion 4: ideal fits have zero overhead ----------------------------
Outcome criterion4() {
  Outcome o;
  CostParams p;
  struct Case {
    Topology t;
    Schedule s;
  };
  std::vector<Case> cases;
  cases.push_back({make_topology("ring", {128}),
                   ring_schedule(128, Primitive::ReduceScatter, 256e6)});
  cases.push_back({make_topology("torus3d", {4, 4, 4}),
                   bucket_schedule({4, 4, 4}, Primitive::ReduceScatter, 256e6)});
  cases.push_back({make_topology("torus2d", {8, 8}),
                   bucket_schedule({8, 8}, Primitive::ReduceScatter, 64e6)});
  for (const auto& c : cases) {
    ScheduleCost ideal = schedule_cost(c.t, c.s, p);
    for (const auto& rc : ideal.per_round) {
      o.require(rc.dilation == 1, "dilation != 1 on " + to_string(c.t.kind()));
      o.require(rc.congestion == 1,
                "congestion != 1 on " + to_string(c.t.kind()));
    }
    double planned = plan(PlannerInput{c.t, {}, c.s, p}).total_time;
    double budget = ideal.total +
                    static_cast<double>(c.s.rounds.size()) * p.reconf_delay;
    o.require(planned <= budget,
              "pccl exceeds ideal + rounds*r on " + to_string(c.t.kind()));
    o.require(planned >= ideal.total - 1e-15,
              "planned cost below the per-round floor on " +
                  to_string(c.t.kind()));
  }
  if (o.pass) o.note("exact fits: congestion=dilation=1, pccl within rounds*r");
  return o;
}

// --- Criterion 5: all-to-all speedup on the 4x4x4 torus --------------------
Outcome criterion5() {
  Outcome o;
  CostParams p;
  Topology torus = make_topology("torus3d", {4, 4, 4});
  double best_speedup = 0, best_buffer = 0;
  for (double buffer : {1e6, 2e6, 4e6, 8e6, 16e6, 32e6}) {
    Schedule dex = dex_schedule(64, buffer);
    double baseline = schedule_cost(torus, dex, p).total;
    double pccl_time =
        pccl_best(torus, Primitive::AllToAll, buffer, p).plan.total_time;
    double speedup = baseline / pccl_time;
    if (speedup > best_speedup) {
      best_speedup = speedup;
      best_buffer = buffer;
    }
  }
  o.require(best_speedup >= 5.0 && best_speedup <= 10.0,
            "best speedup " + format_float(best_speedup) + "x at " +
                format_float(best_buffer) + "B is outside [5,10]");
  o.note("max DEX speedup over buffers <= 32MB: " +
         format_float(best_speedup) + "x");
  return o;
}

// --- Criterion 6: fiber planner reproduction -------------------------------
Outcome criterion6() {
  Outcome o;
  ServerGraph g = make_server_grid(8, 8);
  for (int n_req : {100, 512}) {
    double z_sum = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      std::mt19937_64 rng(seed * 7919 + 17);
      std::uniform_int_distribution<int> pick(0, 63);
      std::vector<FiberRequest> reqs;
      while (static_cast<int>(reqs.size()) < n_req) {
        int s = pick(rng), d = pick(rng);
        if (s != d) reqs.push_back({s, d});
      }
      double t0 = now_s();
      FiberPlan plan = plan_fibers(g, reqs, seed);
      double elapsed = now_s() - t0;
      o.require(elapsed < 10.0, "instance runtime " + format_float(elapsed) +
                                    "s (seed " + std::to_string(seed) + ")");
      o.require(verify_plan(g, reqs, plan),
                "verify failed at seed " + std::to_string(seed));
      z_sum += plan.z;
    }
    double mean = z_sum / 10.0;
    double lo = n_req == 100 ? 6.0 : 26.0;
    double hi = n_req == 100 ? 9.0 : 37.0;
    o.require(mean >= lo && mean <= hi,
              "mean z " + format_float(mean) + " for " +
                  std::to_string(n_req) + " requests outside [" +
                  format_float(lo) + "," + format_float(hi) + "]");
    o.note("mean z(" + std::to_string(n_req) + ") = " + format_float(mean));
  }
  return o;
}

// --- Criterion 7: mesh router scale run ------------------------------------
Outcome criterion7() {
  Outcome o;
  MeshGraph g = make_mesh(64, 64);
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<int> pick(0, g.n_nodes() - 1);
  std::vector<RouteRequest> reqs;
  while (static_cast<int>(reqs.size()) < 128) {
    int s = pick(rng), d = pick(rng);
    if (s != d) reqs.push_back({s, d, 0});
  }
  double t0 = now_s();
  auto routes = route_all(g, reqs);
  double elapsed = now_s() - t0;
  int routed = 0;
  for (const auto& r : routes) routed += r.routed;
  o.require(routed >= 122, "routed " + std::to_string(routed) + "/128 < 95%");
  o.require(validate_routes(g, routes), "validator failed");
  o.require(elapsed < 10.0, "runtime " + format_float(elapsed) + "s");
  o.note(std::to_string(routed) + "/128 routed in " + format_float(elapsed) +
         "s");
  return o;
}

// --- Criterion 8: collective postconditions --------------------------------
Outcome criterion8() {
  Outcome o;
  auto check = [&](const Schedule& s, const std::string& what) {
    try {
      auto st = oracle::interpret_schedule(s);
      bool ok = true;
      switch (s.primitive) {
        case Primitive::ReduceScatter:
          ok = oracle::check_reduce_scatter(st, s.n_ranks);
          break;
        case Primitive::AllGather:
        case Primitive::AllReduce:
          ok = oracle::check_all_gather(st, s.n_ranks, true);
          break;
        case Primitive::AllToAll:
          ok = oracle::check_all_to_all(st, s.n_ranks);
          break;
      }
      o.require(ok, "postcondition failed: " + what);
    } catch (const std::exception& e) {
      o.require(false, what + ": " + e.what());
    }
  };
  for (int n : {2, 4, 8, 16, 32, 64}) {
    for (Primitive prim : {Primitive::ReduceScatter, Primitive::AllGather,
                           Primitive::AllReduce}) {
      check(ring_schedule(n, prim, 1.0 * n),
            "ring " + to_string(prim) + " n=" + std::to_string(n));
      check(rhd_schedule(n, prim, 1.0 * n),
            "rhd " + to_string(prim) + " n=" + std::to_string(n));
    }
    check(dex_schedule(n, 1.0 * n), "dex n=" + std::to_string(n));
  }
  std::vector<std::vector<int>> dim_sets = {{2, 2},    {4, 4},   {2, 3},
                                            {2, 2, 2}, {3, 3, 3}, {4, 4, 4},
                                            {2, 3, 4}};
  for (const auto& dims : dim_sets) {
    for (Primitive prim : {Primitive::ReduceScatter, Primitive::AllGather,
                           Primitive::AllReduce}) {
      std::string label = "bucket " + to_string(prim) + " dims=";
      for (int d : dims) label += std::to_string(d) + ",";
      check(bucket_schedule(dims, prim, 36.0), label);
    }
  }
  if (o.pass) o.note("all generated schedules meet their postconditions");
  return o;
}

// --- Criterion 9: end-to-end ordering on the transformer fixture -----------
Outcome criterion9() {
  Outcome o;
  CostParams p;  // r = 5us
  for (int n : {32, 64, 128}) {
    TaskGraph g = coschedule(make_transformer_graph(12, n));
    for (const Topology& t : eval_topologies(n)) {
      auto rows = run_endtoend(g, t, p);
      double pccl_tp = 0;
      for (const auto& row : rows)
        if (row.backend == "pccl") pccl_tp = row.throughput_it_per_s;
      bool is_grid = t.kind() == TopologyKind::Grid2d ||
                     t.kind() == TopologyKind::Grid3d;
      for (const auto& row : rows) {
        if (row.backend == "pccl") continue;
        std::ostringstream cell;
        cell << to_string(t.kind()) << " n=" << n << " vs " << row.backend;
        o.require(pccl_tp >= row.throughput_it_per_s - 1e-12,
                  "pccl slower: " + cell.str());
        if (is_grid)
          o.require(pccl_tp > row.throughput_it_per_s,
                    "pccl not strictly faster: " + cell.str());
      }
    }
  }
  if (o.pass) o.note("pccl >= all baselines everywhere, > on grids");
  return o;
}

// --- Criterion 10: cost-model oracle equivalence ----------------------------
Outcome criterion10() {
  Outcome o;
  std::mt19937 rng(1001);
  CostParams p;
  std::vector<Topology> topologies = {
      make_topology("ring", {9}),        make_topology("ring", {32}),
      make_topology("torus2d", {4, 8}),  make_topology("grid2d", {5, 6}),
      make_topology("torus3d", {2, 3, 4}),
      make_topology("grid3d", {3, 3, 3})};
  // Plus random connected-ish graphs.
  for (int extra = 0; extra < 4; ++extra) {
    int n = 5 + static_cast<int>(rng() % 28);
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng() % 5 == 0) edges.push_back({u, v});
    topologies.push_back(Topology{n, TopologyKind::Custom, {}, edges});
  }
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Topology& t = topologies[trial % topologies.size()];
    std::vector<Transfer> round;
    int m = 1 + static_cast<int>(rng() % 8);
    for (int k = 0; k < m; ++k) {
      int s = static_cast<int>(rng() % t.n());
      int d = static_cast<int>(rng() % t.n());
      if (s != d) round.push_back({s, d});
    }
    double w = static_cast<double>(1 + rng() % 1024) * 1e6;
    RoundCost got = round_cost(t, round, w, p);
    RoundCost want = oracle::round_cost(t.n(), t.edges(), round, w, p);
    checked++;
    if (got.dilation != want.dilation || got.congestion != want.congestion ||
        got.time != want.time || got.connected != want.connected) {
      o.require(false, "divergence at trial " + std::to_string(trial));
      break;
    }
  }
  o.require(checked == 1000, "only checked " + std::to_string(checked));
  if (o.pass) o.note("1000 random rounds identical to the oracle");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: acceptance <criterion 1..10>\n";
    return 2;
  }
  int k = std::atoi(argv[1]);
  Outcome (*criteria[])() = {criterion1, criterion2, criterion3, criterion4,
                             criterion5, criterion6, criterion7, criterion8,
                             criterion9, criterion10};
  if (k < 1 || k > 10) {
    std::cerr << "criterion out of range\n";
    return 2;
  }
  Outcome o = criteria[k - 1]();
  std::cout << "CRITERION " << k << (o.pass ? " PASS" : " FAIL");
  if (!o.detail.empty()) std::cout << ": " << o.detail;
  std::cout << std::endl;
  return o.pass ? 0 : 1;
}
