#pragma once

#include <map>
#include <string>
#include <vector>

#include "pccl/collectives.hpp"
#include "pccl/cost_model.hpp"
#include "pccl/topology.hpp"

namespace pccl {

struct PatternTransfer {
  int src = 0;
  int dst = 0;
  double bytes = 0;
};

/// Communication payload of a comm node. Either `pattern` is given (raw
/// transfers, to be classified by tag_comm_nodes) or `label` is set
/// directly to "l_to_l" or a collective primitive name.
struct CommSpec {
  std::string label;
  std::vector<PatternTransfer> pattern;
  double bytes = 0;
  std::vector<int> ranks;
};

struct TaskNode {
  std::string id;
  bool is_comm = false;
  double duration_s = 0;  // compute nodes only
  CommSpec comm;          // comm nodes only
};

struct TaskGraph {
  std::vector<TaskNode> nodes;
  std::vector<std::pair<std::string, std::string>> edges;

  int index_of(const std::string& id) const;
};

/// Classifies each untagged comm node from its raw pattern: a single
/// transfer is l_to_l; a symmetric equal-size all-pairs pattern is
/// all_to_all; a uniform-size regular exchange spanning the participants is
/// all_reduce; anything ambiguous falls back to l_to_l.
TaskGraph tag_comm_nodes(const TaskGraph& g);

/// Adds an l_to_l -> all_reduce dependency edge for every pair of comm
/// nodes whose earliest-start readiness times (computed over compute
/// durations, communication treated as instantaneous) coincide within
/// epsilon. Edges that would create a cycle are skipped and counted in
/// the returned warning total.
TaskGraph coschedule(const TaskGraph& g, double epsilon = 0.0,
                     int* warnings = nullptr);

enum class BackendKind { Baseline, Pccl };

/// Communication valuation. Baseline prices each collective as
/// schedule_cost of `algorithm` on the fixed topology; Pccl prices it as
/// the cheapest reconfiguration plan over the applicable algorithms'
/// schedules, threading the fabric state from one collective to the next.
struct SimBackend {
  BackendKind kind = BackendKind::Baseline;
  Algorithm algorithm = Algorithm::Ring;
};

struct NodeTiming {
  std::string id;
  double start_s = 0;
  double finish_s = 0;
};

struct CommBreakdown {
  std::string node_id;
  std::string label;
  std::string algorithm;  // algorithm actually priced (pccl: the winner)
  double duration_s = 0;
  int n_reconfigs = 0;
};

struct IterationReport {
  double makespan_s = 0;
  double throughput_it_per_s = 0;
  std::vector<NodeTiming> timings;
  std::vector<CommBreakdown> comms;
};

/// List-schedules the DAG with earliest starts; every node may run as soon
/// as all predecessors finish (unbounded resources; parallelism is purely
/// DAG-expressed). Throws std::invalid_argument on cycles.
IterationReport simulate(const TaskGraph& g, const SimBackend& backend,
                         const Topology& t0, const CostParams& p);

/// Layered transformer-like training iteration fixture: per layer a
/// compute node, an activation l_to_l transfer feeding the next layer, and
/// a gradient all_reduce that becomes ready at the same time; all_reduce
/// buffer sizes cycle through powers of two in [min_buffer, max_buffer].
TaskGraph make_transformer_graph(int layers, int n_ranks,
                                 double compute_s = 100e-6,
                                 double min_buffer = 1e6,
                                 double max_buffer = 64e6);

}  // namespace pccl
