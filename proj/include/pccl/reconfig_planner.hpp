#pragma once

#include <vector>

#include "pccl/collectives.hpp"
#include "pccl/cost_model.hpp"
#include "pccl/topology.hpp"

namespace pccl {

/// Planner instance: the fabric starts as g0 and may switch, at the start
/// of any round, to a topology from standard_set or to the topology derived
/// from that round's transfers.
struct PlannerInput {
  Topology g0;
  std::vector<Topology> standard_set;
  Schedule schedule;
  CostParams params;
};

struct PlanRound {
  int choice = 0;  // index into the choice space, see choice_topology()
  RoundCost cost;
  double reconf_s = 0.0;  // reconf_delay when the topology changed, else 0
};

struct ReconfigPlan {
  std::vector<PlanRound> per_round;
  double total_time = 0.0;
  int n_reconfigs = 0;
};

/// Choice index space: 0 = g0, 1..|S| = standard_set[j-1],
/// |S|+1+k = topology derived from round k's transfers.
Topology choice_topology(const PlannerInput& in, int choice);

/// True when moving between the two choices changes the physical graph
/// (i.e. a reconfiguration happens). Round 0 compares against g0
/// (prev_choice 0). Independent of params.reconf_delay, so a switch is
/// still counted when the delay is zero.
bool topology_switch(const PlannerInput& in, int prev_choice, int cur_choice);

/// Reconfiguration charge between two consecutive choices: 0 when they
/// denote equal graphs, params.reconf_delay otherwise.
double reconf_indicator(const PlannerInput& in, int prev_choice,
                        int cur_choice);

/// Cost-minimal plan, solved exactly by dynamic programming over states
/// (round, current topology). A round-derived topology can be adopted only
/// at its own round and held contiguously afterwards; switching away from
/// it (or from any other topology) to a different graph costs reconf_delay.
/// Ties break toward fewer reconfigurations, then lower choice index.
ReconfigPlan plan(const PlannerInput& in);

/// Exhaustive reference: enumerates every feasible choice sequence.
/// Throws std::invalid_argument when rounds > 10 or |standard_set| > 3.
ReconfigPlan brute_force_plan(const PlannerInput& in);

/// Re-checks a plan against the constraint system and recomputes its cost;
/// returns false on any violation or cost mismatch.
bool validate_plan(const PlannerInput& in, const ReconfigPlan& p);

}  // namespace pccl
