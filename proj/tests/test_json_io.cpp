#include <stdexcept>
#include "doctest.h"
#include "pccl/benchmark.hpp"
#include "pccl/json_io.hpp"

using namespace pccl;
using nlohmann::json;

TEST_CASE("topology round trip") {
  Topology t = make_topology("torus2d", {4, 4});
  Topology back = topology_from_json(topology_to_json(t));
  CHECK(back == t);
  CHECK(back.kind() == TopologyKind::Torus2d);
  CHECK(back.dims() == std::vector<int>{4, 4});
}

TEST_CASE("schedule round trip") {
  Schedule s = rhd_schedule(8, Primitive::AllReduce, 2.5e8);
  Schedule back = schedule_from_json(schedule_to_json(s));
  CHECK(back.n_ranks == s.n_ranks);
  CHECK(back.primitive == s.primitive);
  CHECK(back.algorithm == s.algorithm);
  REQUIRE(back.rounds.size() == s.rounds.size());
  for (size_t i = 0; i < s.rounds.size(); ++i) {
    CHECK(back.rounds[i].size_bytes == s.rounds[i].size_bytes);
    CHECK(back.rounds[i].transfers == s.rounds[i].transfers);
  }
}

TEST_CASE("taskgraph round trip") {
  TaskGraph g = make_transformer_graph(3, 8);
  TaskGraph back = taskgraph_from_json(taskgraph_to_json(g));
  REQUIRE(back.nodes.size() == g.nodes.size());
  CHECK(back.edges == g.edges);
  for (size_t i = 0; i < g.nodes.size(); ++i) {
    CHECK(back.nodes[i].id == g.nodes[i].id);
    CHECK(back.nodes[i].is_comm == g.nodes[i].is_comm);
    CHECK(back.nodes[i].comm.label == g.nodes[i].comm.label);
    CHECK(back.nodes[i].comm.bytes == g.nodes[i].comm.bytes);
  }
}

TEST_CASE("unknown schema versions are rejected") {
  json j = topology_to_json(make_topology("ring", {4}));
  j["version"] = 99;
  CHECK_THROWS_AS(topology_from_json(j), std::runtime_error);
  json js = schedule_to_json(ring_schedule(4, Primitive::ReduceScatter, 1.0));
  js.erase("version");
  CHECK_THROWS_AS(schedule_from_json(js), std::runtime_error);
}

TEST_CASE("float formatting is stable at 9 significant digits") {
  CHECK(format_float(1.0 / 3.0) == "0.333333333");
  CHECK(format_float(2.5e8) == "250000000");
  CHECK(format_float(0.0006204444444444446) == "0.000620444444");
  CHECK(format_float(1.0 / 3.0) == format_float(1.0 / 3.0));
}

TEST_CASE("benchmark CSV is bit-stable and carries the documented header") {
  ScenarioSpec spec;
  spec.topology = "ring";
  spec.dims = {16};
  spec.buffers = {1e6, 2e6};
  auto rows = run_benchmark(spec);
  std::string a = benchmark_csv(rows);
  std::string b = benchmark_csv(run_benchmark(spec));
  CHECK(a == b);
  CHECK(a.rfind("schema_version,topology,algorithm,buffer_bytes,"
                "reconf_delay_s,total_s,alpha_s,beta_s,reconf_s,n_reconfigs",
                0) == 0);
}

TEST_CASE("plan JSON exposes choices and per-round breakdown") {
  PlannerInput in;
  in.g0 = make_topology("ring", {8});
  in.schedule = rhd_schedule(8, Primitive::ReduceScatter, 2.5e8);
  ReconfigPlan p = plan(in);
  json j = plan_to_json(p);
  CHECK(j.at("choices").size() == in.schedule.rounds.size());
  CHECK(j.at("per_round").size() == in.schedule.rounds.size());
  CHECK(j.at("n_reconfigs").get<int>() == p.n_reconfigs);
  CHECK(j.at("reconfig_rounds").size() == static_cast<size_t>(p.n_reconfigs));
}

TEST_CASE("file io errors carry the path") {
  CHECK_THROWS_WITH_AS(read_file("/no/such/file.json"),
                       doctest::Contains("/no/such/file.json"),
                       std::runtime_error);
}
