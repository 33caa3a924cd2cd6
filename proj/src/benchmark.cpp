#include "pccl/benchmark.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

#include "pccl/json_io.hpp"

namespace pccl {

namespace {

bool is_power_of_two(int n) { return n >= 2 && (n & (n - 1)) == 0; }

std::string dims_label(const std::string& kind, const std::vector<int>& dims) {
  std::string s = kind + "[";
  for (size_t i = 0; i < dims.size(); ++i)
    s += (i ? "x" : "") + std::to_string(dims[i]);
  return s + "]";
}

}  // namespace

Schedule build_schedule(const Topology& t, Algorithm algorithm,
                        Primitive primitive, double buffer_bytes) {
  if (primitive == Primitive::AllToAll)
    return dex_schedule(t.n(), buffer_bytes);
  switch (algorithm) {
    case Algorithm::Ring:
      return ring_schedule(t.n(), primitive, buffer_bytes);
    case Algorithm::Rhd:
      return rhd_schedule(t.n(), primitive, buffer_bytes);
    case Algorithm::Bucket:
      if (t.dims().size() < 2)
        throw std::invalid_argument("bucket needs a multi-dim topology");
      return bucket_schedule(t.dims(), primitive, buffer_bytes);
    case Algorithm::Dex:
      return dex_schedule(t.n(), buffer_bytes);
  }
  throw std::invalid_argument("unknown algorithm");
}

PcclResult pccl_best(const Topology& t, Primitive primitive,
                     double buffer_bytes, const CostParams& params) {
  std::vector<Algorithm> candidates;
  if (primitive == Primitive::AllToAll) {
    candidates = {Algorithm::Dex};
  } else {
    candidates.push_back(Algorithm::Ring);
    if (is_power_of_two(t.n())) candidates.push_back(Algorithm::Rhd);
    if (t.dims().size() >= 2) candidates.push_back(Algorithm::Bucket);
  }
  PcclResult best;
  bool first = true;
  for (Algorithm a : candidates) {
    Schedule s = build_schedule(t, a, primitive, buffer_bytes);
    ReconfigPlan p = plan(PlannerInput{t, {}, s, params});
    if (first || p.total_time < best.plan.total_time) {
      best.plan = std::move(p);
      best.algorithm = a;
      first = false;
    }
  }
  if (first) throw std::invalid_argument("no applicable algorithm");
  return best;
}

std::vector<BenchmarkRow> run_benchmark(const ScenarioSpec& spec) {
  Topology t = make_topology(spec.topology, spec.dims);
  Algorithm algo = algorithm_from_string(spec.algorithm);
  Primitive prim = primitive_from_string(spec.primitive);
  std::vector<double> buffers = spec.buffers;
  if (buffers.empty())
    for (double b = 1e6; b <= 1e9; b *= 2) buffers.push_back(b);
  std::vector<double> delays = spec.reconf_delays;
  if (delays.empty()) delays.push_back(spec.params.reconf_delay);

  std::vector<BenchmarkRow> rows;
  for (double r : delays) {
    CostParams p = spec.params;
    p.reconf_delay = r;
    for (double b : buffers) {
      BenchmarkRow row;
      row.topology = dims_label(spec.topology, spec.dims);
      row.buffer_bytes = b;
      row.reconf_delay = r;
      if (spec.backend == "pccl") {
        PcclResult res = pccl_best(t, prim, b, p);
        row.algorithm = "pccl:" + to_string(res.algorithm);
        row.total_s = res.plan.total_time;
        row.n_reconfigs = res.plan.n_reconfigs;
        for (const auto& pr : res.plan.per_round) {
          row.alpha_s += p.alpha * pr.cost.dilation;
          row.beta_s += pr.cost.time - p.alpha * pr.cost.dilation;
          row.reconf_s += pr.reconf_s;
        }
      } else if (spec.backend == "baseline") {
        Schedule s = build_schedule(t, algo, prim, b);
        ScheduleCost sc = schedule_cost(t, s, p);
        row.algorithm = to_string(prim == Primitive::AllToAll ? Algorithm::Dex
                                                              : algo);
        row.total_s = sc.total;
        for (const auto& rc : sc.per_round) {
          row.alpha_s += p.alpha * rc.dilation;
          row.beta_s += rc.time - p.alpha * rc.dilation;
        }
      } else {
        throw std::invalid_argument("backend must be baseline or pccl");
      }
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<EndToEndRow> run_endtoend(const TaskGraph& g, const Topology& t,
                                      const CostParams& params) {
  std::vector<EndToEndRow> rows;
  std::string label = dims_label(to_string(t.kind()), t.dims());

  std::vector<std::pair<std::string, SimBackend>> backends;
  backends.push_back({"pccl", {BackendKind::Pccl, Algorithm::Ring}});
  backends.push_back({"ring", {BackendKind::Baseline, Algorithm::Ring}});
  if (is_power_of_two(t.n()))
    backends.push_back({"rhd", {BackendKind::Baseline, Algorithm::Rhd}});
  if (t.dims().size() >= 2)
    backends.push_back({"bucket", {BackendKind::Baseline, Algorithm::Bucket}});

  for (const auto& [name, backend] : backends) {
    IterationReport rep = simulate(g, backend, t, params);
    EndToEndRow row;
    row.topology = label;
    row.backend = name;
    row.n_ranks = t.n();
    row.makespan_s = rep.makespan_s;
    row.throughput_it_per_s = rep.throughput_it_per_s;
    for (const auto& c : rep.comms) row.total_reconfigs += c.n_reconfigs;
    rows.push_back(row);
  }
  return rows;
}

std::string benchmark_csv(const std::vector<BenchmarkRow>& rows) {
  std::ostringstream out;
  out << "schema_version,topology,algorithm,buffer_bytes,reconf_delay_s,"
         "total_s,alpha_s,beta_s,reconf_s,n_reconfigs\n";
  for (const auto& r : rows)
    out << kSchemaVersion << ',' << r.topology << ',' << r.algorithm << ','
        << format_float(r.buffer_bytes) << ',' << format_float(r.reconf_delay)
        << ',' << format_float(r.total_s) << ',' << format_float(r.alpha_s)
        << ',' << format_float(r.beta_s) << ',' << format_float(r.reconf_s)
        << ',' << r.n_reconfigs << '\n';
  return out.str();
}

std::string endtoend_csv(const std::vector<EndToEndRow>& rows) {
  std::ostringstream out;
  out << "schema_version,topology,backend,n_ranks,makespan_s,"
         "throughput_it_per_s,total_reconfigs\n";
  for (const auto& r : rows)
    out << kSchemaVersion << ',' << r.topology << ',' << r.backend << ','
        << r.n_ranks << ',' << format_float(r.makespan_s) << ','
        << format_float(r.throughput_it_per_s) << ',' << r.total_reconfigs
        << '\n';
  return out.str();
}

}  // namespace pccl
