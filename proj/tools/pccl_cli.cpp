#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pccl/benchmark.hpp"
#include "pccl/fiber_planner.hpp"
#include "pccl/json_io.hpp"
#include "pccl/mesh_router.hpp"

using nlohmann::json;

namespace {

std::vector<int> parse_dims(const std::string& s) {
  std::vector<int> dims;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t next = s.find('x', pos);
    if (next == std::string::npos) next = s.size();
    dims.push_back(std::stoi(s.substr(pos, next - pos)));
    pos = next + 1;
  }
  if (dims.empty()) throw CLI::ValidationError("dims", "empty dims");
  return dims;
}

// Defaults may be overridden by a JSON config file named in PCCL_SIM_CONFIG
// (or --config); explicit flags override both.
pccl::CostParams load_params(const std::string& config_path) {
  pccl::CostParams p;
  std::string path = config_path;
  if (path.empty())
    if (const char* env = std::getenv("PCCL_SIM_CONFIG")) path = env;
  if (!path.empty()) {
    json j = json::parse(pccl::read_file(path));
    p.alpha = j.value("alpha_s", p.alpha);
    p.beta = j.value("beta_s_per_byte", p.beta);
    p.reconf_delay = j.value("reconf_delay_s", p.reconf_delay);
    p.disconnect_penalty = j.value("disconnect_penalty_s", p.disconnect_penalty);
    p.directed_edge_capacity =
        j.value("directed_edge_capacity", p.directed_edge_capacity);
  }
  return p;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text;
  else
    pccl::write_file(out_path, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pccl: photonic collective communication planning toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  app.add_option("--config", config_path, "JSON config file with cost params");
  double alpha = -1, beta = -1, reconf = -1;
  app.add_option("--alpha", alpha, "per-transfer latency (s)");
  app.add_option("--beta", beta, "per-byte cost (s/byte)");
  app.add_option("--reconf-delay", reconf, "reconfiguration delay r (s)");

  // gen-topology
  auto* gen_topo = app.add_subcommand("gen-topology", "emit a topology JSON");
  std::string kind = "ring", dims_str = "8";
  gen_topo->add_option("--kind", kind, "ring|torus2d|torus3d|grid2d|grid3d");
  gen_topo->add_option("--dims", dims_str, "e.g. 8 or 4x4 or 4x4x4");
  gen_topo->add_option("--out", out_path, "output path (default stdout)");

  // gen-schedule
  auto* gen_sched = app.add_subcommand("gen-schedule", "emit a schedule JSON");
  std::string algorithm = "ring", primitive = "reduce_scatter";
  int n_ranks = 8, tx = 1, rx = 1;
  double bytes = 1e6;
  std::string sched_dims;
  gen_sched->add_option("--algorithm", algorithm, "ring|rhd|bucket|dex");
  gen_sched->add_option("--primitive", primitive,
                        "reduce_scatter|all_gather|all_reduce|all_to_all");
  gen_sched->add_option("--n", n_ranks, "rank count");
  gen_sched->add_option("--dims", sched_dims, "torus dims for bucket");
  gen_sched->add_option("--bytes", bytes, "buffer size in bytes");
  gen_sched->add_option("--tx", tx, "max concurrent sends per rank");
  gen_sched->add_option("--rx", rx, "max concurrent receives per rank");
  gen_sched->add_option("--out", out_path, "output path");

  // cost
  auto* cost_cmd = app.add_subcommand("cost", "price a schedule on a topology");
  std::string topo_path, sched_path;
  cost_cmd->add_option("--topology", topo_path, "topology JSON")->required();
  cost_cmd->add_option("--schedule", sched_path, "schedule JSON")->required();
  cost_cmd->add_option("--out", out_path, "output path");

  // plan
  auto* plan_cmd = app.add_subcommand("plan", "reconfiguration plan");
  std::vector<std::string> standard_paths;
  plan_cmd->add_option("--topology", topo_path, "initial topology JSON")
      ->required();
  plan_cmd->add_option("--schedule", sched_path, "schedule JSON")->required();
  plan_cmd->add_option("--standard", standard_paths,
                       "standard-set topology JSON (repeatable)");
  plan_cmd->add_option("--out", out_path, "output path");

  // route-mesh
  auto* mesh_cmd = app.add_subcommand("route-mesh", "MZI mesh routing");
  std::string mesh_str = "8x8", req_path;
  int trials = pccl::kDefaultTrials, max_overlap = pccl::kDefaultMaxOverlap;
  double penalize = pccl::kDefaultPenalizeFactor;
  int random_requests = 0;
  std::uint64_t seed = 0;
  mesh_cmd->add_option("--mesh", mesh_str, "mesh as WxH");
  mesh_cmd->add_option("--requests", req_path,
                       "JSON [{src,dst,wavelength}] request batch");
  mesh_cmd->add_option("--random", random_requests,
                       "generate this many random requests instead");
  mesh_cmd->add_option("--seed", seed, "seed for --random");
  mesh_cmd->add_option("--trials", trials, "retry budget per request");
  mesh_cmd->add_option("--penalize", penalize, "weight penalty factor");
  mesh_cmd->add_option("--max-overlap", max_overlap,
                       "same-wavelength circuits per waveguide");
  mesh_cmd->add_option("--out", out_path, "output path");

  // plan-fibers
  auto* fiber_cmd = app.add_subcommand("plan-fibers", "inter-server fibers");
  std::string grid_str = "8x8";
  fiber_cmd->add_option("--grid", grid_str, "server grid as WxH");
  fiber_cmd->add_option("--requests", req_path, "JSON [{src,dst}] batch");
  fiber_cmd->add_option("--random", random_requests,
                        "generate this many random requests instead");
  fiber_cmd->add_option("--seed", seed, "seed for --random and restarts");
  fiber_cmd->add_option("--out", out_path, "output path");

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "task graph iteration");
  std::string graph_path, backend = "pccl", sim_topo = "ring",
              sim_dims = "8";
  bool do_coschedule = false;
  int fixture_layers = 0;
  sim_cmd->add_option("--graph", graph_path, "task graph JSON");
  sim_cmd->add_option("--fixture-layers", fixture_layers,
                      "use the built-in transformer fixture instead");
  sim_cmd->add_option("--backend", backend, "baseline|pccl");
  sim_cmd->add_option("--algorithm", algorithm, "baseline algorithm");
  sim_cmd->add_option("--topology", sim_topo, "topology kind");
  sim_cmd->add_option("--dims", sim_dims, "topology dims");
  sim_cmd->add_flag("--coschedule", do_coschedule,
                    "add l_to_l -> all_reduce co-scheduling edges");
  sim_cmd->add_option("--out", out_path, "output path");

  // benchmark
  auto* bench_cmd = app.add_subcommand("benchmark", "buffer/r sweeps -> CSV");
  std::vector<double> buffers, r_sweep;
  bench_cmd->add_option("--topology", sim_topo, "topology kind");
  bench_cmd->add_option("--dims", sim_dims, "topology dims");
  bench_cmd->add_option("--algorithm", algorithm, "ring|rhd|bucket|dex");
  bench_cmd->add_option("--primitive", primitive, "collective primitive");
  bench_cmd->add_option("--buffers", buffers, "buffer sizes in bytes");
  bench_cmd->add_option("--r-sweep", r_sweep, "reconfiguration delays (s)");
  bench_cmd->add_option("--backend", backend, "baseline|pccl");
  bench_cmd->add_option("--out", out_path, "output path");

  // endtoend
  auto* e2e_cmd = app.add_subcommand("endtoend", "training throughput table");
  std::vector<std::string> e2e_topos = {"ring"};
  std::vector<int> e2e_ranks = {32, 64, 128};
  e2e_cmd->add_option("--graph", graph_path, "task graph JSON");
  e2e_cmd->add_option("--fixture-layers", fixture_layers,
                      "transformer fixture layer count (default 12)");
  e2e_cmd->add_option("--topologies", e2e_topos, "topology kinds");
  e2e_cmd->add_option("--ranks", e2e_ranks, "rank counts");
  e2e_cmd->add_option("--out", out_path, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    pccl::CostParams params = load_params(config_path);
    if (alpha >= 0) params.alpha = alpha;
    if (beta >= 0) params.beta = beta;
    if (reconf >= 0) params.reconf_delay = reconf;

    if (gen_topo->parsed()) {
      auto t = pccl::make_topology(kind, parse_dims(dims_str));
      emit(pccl::topology_to_json(t).dump(2) + "\n", out_path);
    } else if (gen_sched->parsed()) {
      pccl::Schedule s;
      auto prim = pccl::primitive_from_string(primitive);
      auto algo = pccl::algorithm_from_string(algorithm);
      if (algo == pccl::Algorithm::Bucket) {
        s = pccl::bucket_schedule(parse_dims(sched_dims), prim, bytes);
      } else if (algo == pccl::Algorithm::Dex) {
        s = pccl::dex_schedule(n_ranks, bytes);
      } else if (algo == pccl::Algorithm::Rhd) {
        s = pccl::rhd_schedule(n_ranks, prim, bytes);
      } else {
        s = pccl::ring_schedule(n_ranks, prim, bytes);
      }
      if (tx != 1 || rx != 1) s = pccl::split_rounds(s, tx, rx);
      emit(pccl::schedule_to_json(s).dump(2) + "\n", out_path);
    } else if (cost_cmd->parsed()) {
      auto t = pccl::topology_from_json(json::parse(pccl::read_file(topo_path)));
      auto s = pccl::schedule_from_json(json::parse(pccl::read_file(sched_path)));
      auto sc = pccl::schedule_cost(t, s, params);
      std::ostringstream csv;
      csv << "schema_version,round,dilation,congestion,alpha_term_s,"
             "beta_term_s,reconf_s\n";
      for (size_t i = 0; i < sc.per_round.size(); ++i) {
        const auto& rc = sc.per_round[i];
        csv << pccl::kSchemaVersion << ',' << i << ',' << rc.dilation << ','
            << rc.congestion << ','
            << pccl::format_float(params.alpha * rc.dilation) << ','
            << pccl::format_float(rc.time - params.alpha * rc.dilation)
            << ",0\n";
      }
      csv << "# total_s," << pccl::format_float(sc.total) << "\n";
      emit(csv.str(), out_path);
    } else if (plan_cmd->parsed()) {
      pccl::PlannerInput in;
      in.g0 = pccl::topology_from_json(json::parse(pccl::read_file(topo_path)));
      in.schedule =
          pccl::schedule_from_json(json::parse(pccl::read_file(sched_path)));
      for (const auto& p : standard_paths)
        in.standard_set.push_back(
            pccl::topology_from_json(json::parse(pccl::read_file(p))));
      in.params = params;
      auto result = pccl::plan(in);
      emit(pccl::plan_to_json(result).dump(2) + "\n", out_path);
    } else if (mesh_cmd->parsed()) {
      auto wh = parse_dims(mesh_str);
      if (wh.size() != 2) throw std::invalid_argument("--mesh needs WxH");
      auto g = pccl::make_mesh(wh[0], wh[1]);
      std::vector<pccl::RouteRequest> reqs;
      if (random_requests > 0) {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> pick(0, g.n_nodes() - 1);
        while (static_cast<int>(reqs.size()) < random_requests) {
          int s = pick(rng), d = pick(rng);
          if (s != d) reqs.push_back({s, d, 0});
        }
      } else {
        for (const auto& r : json::parse(pccl::read_file(req_path)))
          reqs.push_back({r.at("src").get<int>(), r.at("dst").get<int>(),
                          r.value("wavelength", 0)});
      }
      auto routes = pccl::route_all(g, reqs, max_overlap, penalize, trials);
      json out;
      out["version"] = pccl::kSchemaVersion;
      out["valid"] = pccl::validate_routes(g, routes, max_overlap);
      int routed = 0;
      json jroutes = json::array();
      for (const auto& r : routes) {
        routed += r.routed;
        jroutes.push_back({{"src", r.request.src},
                           {"dst", r.request.dst},
                           {"wavelength", r.request.wavelength},
                           {"routed", r.routed},
                           {"path", r.path}});
      }
      out["n_routed"] = routed;
      out["routes"] = jroutes;
      emit(out.dump(2) + "\n", out_path);
    } else if (fiber_cmd->parsed()) {
      auto wh = parse_dims(grid_str);
      if (wh.size() != 2) throw std::invalid_argument("--grid needs WxH");
      auto g = pccl::make_server_grid(wh[0], wh[1]);
      std::vector<pccl::FiberRequest> reqs;
      if (random_requests > 0) {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> pick(0, g.n_servers - 1);
        while (static_cast<int>(reqs.size()) < random_requests) {
          int s = pick(rng), d = pick(rng);
          if (s != d) reqs.push_back({s, d});
        }
      } else {
        for (const auto& r : json::parse(pccl::read_file(req_path)))
          reqs.push_back({r.at("src").get<int>(), r.at("dst").get<int>()});
      }
      auto fiber_plan = pccl::plan_fibers(g, reqs, seed);
      json out;
      out["version"] = pccl::kSchemaVersion;
      out["z"] = fiber_plan.z;
      out["exact"] = fiber_plan.exact;
      out["verified"] = pccl::verify_plan(g, reqs, fiber_plan);
      json paths = json::array();
      for (const auto& p : fiber_plan.paths) paths.push_back(p);
      out["paths"] = paths;
      json loads = json::array();
      for (const auto& [e, c] : fiber_plan.link_load)
        loads.push_back({{"u", e.first}, {"v", e.second}, {"count", c}});
      out["link_loads"] = loads;
      emit(out.dump(2) + "\n", out_path);
    } else if (sim_cmd->parsed()) {
      pccl::TaskGraph g;
      auto t = pccl::make_topology(sim_topo, parse_dims(sim_dims));
      if (fixture_layers > 0)
        g = pccl::make_transformer_graph(fixture_layers, t.n());
      else
        g = pccl::taskgraph_from_json(json::parse(pccl::read_file(graph_path)));
      g = pccl::tag_comm_nodes(g);
      if (do_coschedule) g = pccl::coschedule(g);
      pccl::SimBackend b;
      b.kind = backend == "pccl" ? pccl::BackendKind::Pccl
                                 : pccl::BackendKind::Baseline;
      b.algorithm = pccl::algorithm_from_string(algorithm);
      auto report = pccl::simulate(g, b, t, params);
      emit(pccl::report_to_json(report).dump(2) + "\n", out_path);
    } else if (bench_cmd->parsed()) {
      pccl::ScenarioSpec spec;
      spec.topology = sim_topo;
      spec.dims = parse_dims(sim_dims);
      spec.algorithm = algorithm;
      spec.primitive = primitive;
      spec.buffers = buffers;
      spec.reconf_delays = r_sweep;
      spec.params = params;
      spec.backend = backend;
      emit(pccl::benchmark_csv(pccl::run_benchmark(spec)), out_path);
    } else if (e2e_cmd->parsed()) {
      std::vector<pccl::EndToEndRow> rows;
      for (int n : e2e_ranks) {
        pccl::TaskGraph g;
        if (!graph_path.empty())
          g = pccl::taskgraph_from_json(
              json::parse(pccl::read_file(graph_path)));
        else
          g = pccl::make_transformer_graph(
              fixture_layers > 0 ? fixture_layers : 12, n);
        g = pccl::coschedule(pccl::tag_comm_nodes(g));
        for (const auto& tk : e2e_topos) {
          std::vector<int> dd;
          if (tk == "ring") dd = {n};
          else if (tk == "torus2d" || tk == "grid2d") {
            int a = 1;
            while (a * a < n) a *= 2;
            dd = {n / a, a};
          } else {
            int a = 4;
            dd = {a, a, n / (a * a)};
          }
          auto t = pccl::make_topology(tk, dd);
          for (auto& row : pccl::run_endtoend(g, t, params))
            rows.push_back(row);
        }
      }
      emit(pccl::endtoend_csv(rows), out_path);
    }
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
