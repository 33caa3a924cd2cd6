#pragma once

#include <vector>

#include "pccl/collectives.hpp"
#include "pccl/topology.hpp"

namespace pccl {

// Extended alpha-beta model parameters. alpha is per-transfer latency in
// seconds, beta is seconds per byte, reconf_delay is the optical switching
// time r, and disconnect_penalty is a sentinel charged when a round contains
// a transfer with no path on the evaluated topology.
struct CostParams {
  double alpha = 3e-6;
  double beta = 1.0 / 450e9;
  double reconf_delay = 5e-6;
  double disconnect_penalty = 1e6;
  // When true (default), congestion counts overlapping transfers per
  // directed edge, so a bidirectional neighbor exchange has congestion 1.
  // When false, both directions share one undirected edge's capacity.
  bool directed_edge_capacity = true;
};

struct RoundCost {
  int dilation = 0;    // max hops over the round's routed transfers
  int congestion = 0;  // max number of transfers sharing one edge
  double time = 0.0;   // alpha*dilation + beta*congestion*w, or penalty
  bool connected = true;
};

struct ScheduleCost {
  double total = 0.0;
  std::vector<RoundCost> per_round;
};

// Routes every transfer along the deterministic shortest path on t and
// returns the round's dilation/congestion/time for buffer size w (bytes).
RoundCost round_cost(const Topology& t, const std::vector<Transfer>& round,
                     double w, const CostParams& p);

// Cost of running the whole schedule on a fixed topology (no reconfigs).
ScheduleCost schedule_cost(const Topology& t, const Schedule& s,
                           const CostParams& p);

// Per-transfer share of a link shared by `overlaps` concurrent transfers.
double effective_bandwidth(double link_bw, int overlaps);

}  // namespace pccl
