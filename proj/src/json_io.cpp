#include "pccl/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pccl {

using nlohmann::json;

namespace {

void check_version(const json& j, const char* what) {
  if (!j.contains("version") || j.at("version").get<int>() != kSchemaVersion)
    throw std::runtime_error(std::string(what) + ": unsupported schema version");
}

}  // namespace

std::string format_float(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

json topology_to_json(const Topology& t) {
  json j;
  j["version"] = kSchemaVersion;
  j["kind"] = to_string(t.kind());
  j["n"] = t.n();
  j["dims"] = t.dims();
  json edges = json::array();
  for (auto [u, v] : t.edges()) edges.push_back({u, v});
  j["edges"] = edges;
  return j;
}

Topology topology_from_json(const json& j) {
  check_version(j, "topology");
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j.at("edges"))
    edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
  return Topology(j.at("n").get<int>(),
                  topology_kind_from_string(j.at("kind").get<std::string>()),
                  j.value("dims", std::vector<int>{}), std::move(edges));
}

json schedule_to_json(const Schedule& s) {
  json j;
  j["version"] = kSchemaVersion;
  j["n_ranks"] = s.n_ranks;
  j["primitive"] = to_string(s.primitive);
  j["algorithm"] = to_string(s.algorithm);
  json rounds = json::array();
  for (const auto& r : s.rounds) {
    json jr;
    jr["size_bytes"] = r.size_bytes;
    json transfers = json::array();
    for (const auto& t : r.transfers) transfers.push_back({t.src, t.dst});
    jr["transfers"] = transfers;
    rounds.push_back(jr);
  }
  j["rounds"] = rounds;
  return j;
}

Schedule schedule_from_json(const json& j) {
  check_version(j, "schedule");
  Schedule s;
  s.n_ranks = j.at("n_ranks").get<int>();
  s.primitive = primitive_from_string(j.at("primitive").get<std::string>());
  s.algorithm = algorithm_from_string(j.at("algorithm").get<std::string>());
  for (const auto& jr : j.at("rounds")) {
    ScheduleRound r;
    r.size_bytes = jr.at("size_bytes").get<double>();
    for (const auto& t : jr.at("transfers"))
      r.transfers.push_back({t.at(0).get<int>(), t.at(1).get<int>()});
    s.rounds.push_back(std::move(r));
  }
  return s;
}

json plan_to_json(const ReconfigPlan& p) {
  json j;
  j["version"] = kSchemaVersion;
  json choices = json::array(), reconf_rounds = json::array(),
       per_round = json::array();
  for (size_t i = 0; i < p.per_round.size(); ++i) {
    const auto& r = p.per_round[i];
    choices.push_back(r.choice);
    if (r.reconf_s > 0) reconf_rounds.push_back(i);
    per_round.push_back({{"dilation", r.cost.dilation},
                         {"congestion", r.cost.congestion},
                         {"comm_s", r.cost.time},
                         {"reconf_s", r.reconf_s}});
  }
  j["choices"] = choices;
  j["reconfig_rounds"] = reconf_rounds;
  j["total_s"] = p.total_time;
  j["n_reconfigs"] = p.n_reconfigs;
  j["per_round"] = per_round;
  return j;
}

json taskgraph_to_json(const TaskGraph& g) {
  json j;
  j["version"] = kSchemaVersion;
  json nodes = json::array();
  for (const auto& n : g.nodes) {
    json jn;
    jn["id"] = n.id;
    jn["kind"] = n.is_comm ? "comm" : "compute";
    if (!n.is_comm) {
      jn["duration_s"] = n.duration_s;
    } else {
      json jc;
      if (!n.comm.label.empty()) jc["label"] = n.comm.label;
      if (!n.comm.pattern.empty()) {
        json pat = json::array();
        for (const auto& t : n.comm.pattern)
          pat.push_back({{"src", t.src}, {"dst", t.dst}, {"bytes", t.bytes}});
        jc["pattern"] = pat;
      }
      jc["bytes"] = n.comm.bytes;
      jc["ranks"] = n.comm.ranks;
      jn["comm"] = jc;
    }
    nodes.push_back(jn);
  }
  j["nodes"] = nodes;
  json edges = json::array();
  for (const auto& [a, b] : g.edges) edges.push_back({a, b});
  j["edges"] = edges;
  return j;
}

TaskGraph taskgraph_from_json(const json& j) {
  check_version(j, "taskgraph");
  TaskGraph g;
  for (const auto& jn : j.at("nodes")) {
    TaskNode n;
    n.id = jn.at("id").get<std::string>();
    n.is_comm = jn.at("kind").get<std::string>() == "comm";
    if (!n.is_comm) {
      n.duration_s = jn.value("duration_s", 0.0);
    } else {
      const auto& jc = jn.at("comm");
      n.comm.label = jc.value("label", std::string{});
      n.comm.bytes = jc.value("bytes", 0.0);
      n.comm.ranks = jc.value("ranks", std::vector<int>{});
      if (jc.contains("pattern"))
        for (const auto& t : jc.at("pattern"))
          n.comm.pattern.push_back({t.at("src").get<int>(),
                                    t.at("dst").get<int>(),
                                    t.at("bytes").get<double>()});
    }
    g.nodes.push_back(std::move(n));
  }
  for (const auto& e : j.at("edges"))
    g.edges.push_back({e.at(0).get<std::string>(), e.at(1).get<std::string>()});
  return g;
}

json report_to_json(const IterationReport& r) {
  json j;
  j["version"] = kSchemaVersion;
  j["makespan_s"] = r.makespan_s;
  j["throughput_it_per_s"] = r.throughput_it_per_s;
  json timings = json::array();
  for (const auto& t : r.timings)
    timings.push_back(
        {{"id", t.id}, {"start_s", t.start_s}, {"finish_s", t.finish_s}});
  j["timings"] = timings;
  json comms = json::array();
  for (const auto& c : r.comms)
    comms.push_back({{"node", c.node_id},
                     {"label", c.label},
                     {"algorithm", c.algorithm},
                     {"duration_s", c.duration_s},
                     {"n_reconfigs", c.n_reconfigs}});
  j["comms"] = comms;
  return j;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace pccl
