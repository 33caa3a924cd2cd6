#pragma once

#include <string>
#include <vector>

#include "pccl/collectives.hpp"
#include "pccl/cost_model.hpp"
#include "pccl/reconfig_planner.hpp"
#include "pccl/taskgraph.hpp"
#include "pccl/topology.hpp"

namespace pccl {

/// One benchmark scenario: a collective run with a given algorithm on a
/// given topology, swept over buffer sizes (and optionally reconfiguration
/// delays).
struct ScenarioSpec {
  std::string topology = "ring";
  std::vector<int> dims;
  std::string algorithm = "ring";
  std::string primitive = "reduce_scatter";
  std::vector<double> buffers;          // bytes; default 1 MB..1 GB x2
  std::vector<double> reconf_delays;    // default {params.reconf_delay}
  CostParams params;
  std::string backend = "baseline";     // "baseline" | "pccl"
  std::uint64_t seed = 0;
};

struct BenchmarkRow {
  std::string topology;
  std::string algorithm;
  double buffer_bytes = 0;
  double reconf_delay = 0;
  double total_s = 0;
  double alpha_s = 0;
  double beta_s = 0;
  double reconf_s = 0;
  int n_reconfigs = 0;
};

/// Builds the schedule named by spec.algorithm/primitive for the topology's
/// rank count and prices it as schedule_cost (baseline) or plan()
/// (pccl backend) for every (buffer, reconf_delay) grid point.
std::vector<BenchmarkRow> run_benchmark(const ScenarioSpec& spec);

/// Schedule for (algorithm, primitive, buffer) sized to topology t.
/// Bucket uses t's dims; all_to_all always maps to dex.
Schedule build_schedule(const Topology& t, Algorithm algorithm,
                        Primitive primitive, double buffer_bytes);

/// pccl's operating point for a primitive: cheapest reconfiguration plan
/// over every algorithm applicable to t (ring, rhd for power-of-two rank
/// counts, bucket for multi-dim topologies; dex for all_to_all). Returns
/// the winning plan and algorithm.
struct PcclResult {
  ReconfigPlan plan;
  Algorithm algorithm = Algorithm::Ring;
};
PcclResult pccl_best(const Topology& t, Primitive primitive,
                     double buffer_bytes, const CostParams& params);

struct EndToEndRow {
  std::string topology;
  std::string backend;  // "pccl" or a baseline algorithm name
  int n_ranks = 0;
  double makespan_s = 0;
  double throughput_it_per_s = 0;
  int total_reconfigs = 0;
};

/// Simulates the task graph on the topology under the pccl backend plus
/// every applicable baseline algorithm.
std::vector<EndToEndRow> run_endtoend(const TaskGraph& g, const Topology& t,
                                      const CostParams& params);

/// CSV rendering (schema header + 9-significant-digit floats; bit-stable).
std::string benchmark_csv(const std::vector<BenchmarkRow>& rows);
std::string endtoend_csv(const std::vector<EndToEndRow>& rows);

}  // namespace pccl
