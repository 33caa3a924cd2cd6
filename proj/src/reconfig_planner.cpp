#include "pccl/reconfig_planner.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <stdexcept>

namespace pccl {

namespace {

// DP/search bookkeeping for one (round, current-topology) state. The state
// key doubles as the choice index that produced it.
struct Entry {
  double time = std::numeric_limits<double>::infinity();
  int reconfigs = 0;
  int prev_state = -1;
  bool valid = false;
};

// Lexicographic (time, reconfigs, choice) improvement test.
bool improves(const Entry& cand, int cand_choice, const Entry& incumbent,
              int incumbent_choice) {
  if (!incumbent.valid) return true;
  if (cand.time != incumbent.time) return cand.time < incumbent.time;
  if (cand.reconfigs != incumbent.reconfigs)
    return cand.reconfigs < incumbent.reconfigs;
  return cand_choice < incumbent_choice;
}

ReconfigPlan assemble(const PlannerInput& in, const std::vector<int>& choices) {
  ReconfigPlan p;
  int prev = 0;
  for (size_t i = 0; i < choices.size(); ++i) {
    PlanRound pr;
    pr.choice = choices[i];
    Topology g = choice_topology(in, choices[i]);
    pr.cost = round_cost(g, in.schedule.rounds[i].transfers,
                         in.schedule.rounds[i].size_bytes, in.params);
    bool sw = topology_switch(in, prev, choices[i]);
    pr.reconf_s = sw ? in.params.reconf_delay : 0.0;
    if (sw) p.n_reconfigs++;
    // Accumulate as (total + reconf) + cost, matching the association used
    // by the DP and the exhaustive search so the reported totals are
    // bit-identical for any given choice sequence.
    p.total_time += pr.reconf_s;
    p.total_time += pr.cost.time;
    p.per_round.push_back(std::move(pr));
    prev = choices[i];
  }
  return p;
}

}  // namespace

Topology choice_topology(const PlannerInput& in, int choice) {
  int s = static_cast<int>(in.standard_set.size());
  if (choice == 0) return in.g0;
  if (choice <= s) return in.standard_set[choice - 1];
  int k = choice - s - 1;
  if (k < 0 || k >= static_cast<int>(in.schedule.rounds.size()))
    throw std::invalid_argument("choice index out of range");
  return round_topology(in.schedule.rounds[k].transfers, in.schedule.n_ranks);
}

bool topology_switch(const PlannerInput& in, int prev_choice,
                     int cur_choice) {
  if (prev_choice == cur_choice) return false;
  return !(choice_topology(in, prev_choice) ==
           choice_topology(in, cur_choice));
}

double reconf_indicator(const PlannerInput& in, int prev_choice,
                        int cur_choice) {
  return topology_switch(in, prev_choice, cur_choice)
             ? in.params.reconf_delay
             : 0.0;
}

ReconfigPlan plan(const PlannerInput& in) {
  const int rounds = static_cast<int>(in.schedule.rounds.size());
  const int s = static_cast<int>(in.standard_set.size());
  if (rounds == 0) return {};

  std::vector<Topology> fixed;
  fixed.push_back(in.g0);
  for (const auto& t : in.standard_set) fixed.push_back(t);
  std::vector<Topology> derived;
  derived.reserve(rounds);
  for (const auto& r : in.schedule.rounds)
    derived.push_back(round_topology(r.transfers, in.schedule.n_ranks));

  auto graph_of = [&](int key) -> const Topology& {
    return key <= s ? fixed[key] : derived[key - s - 1];
  };
  auto comm = [&](int key, int round) {
    return round_cost(graph_of(key), in.schedule.rounds[round].transfers,
                      in.schedule.rounds[round].size_bytes, in.params);
  };

  // layers[i]: best entry per state (keyed by choice index) after round i.
  std::vector<std::map<int, Entry>> layers(rounds);
  std::map<int, Entry> start{{0, Entry{0.0, 0, -1, true}}};

  for (int i = 0; i < rounds; ++i) {
    const auto& prev = i == 0 ? start : layers[i - 1];
    auto& cur = layers[i];

    // Switch (or stay) to a fixed topology or adopt this round's matching.
    std::vector<int> open_choices;
    for (int j = 0; j <= s; ++j) open_choices.push_back(j);
    open_choices.push_back(s + 1 + i);
    for (int j : open_choices) {
      double c = comm(j, i).time;
      for (const auto& [pkey, pe] : prev) {
        bool sw = j != pkey && !(graph_of(pkey) == graph_of(j));
        double r = sw ? in.params.reconf_delay : 0.0;
        Entry cand{pe.time + r + c, pe.reconfigs + (sw ? 1 : 0), pkey, true};
        auto& slot = cur[j];
        if (improves(cand, j, slot, j)) slot = cand;
      }
    }
    // Keep holding a previously adopted round-derived topology. A held
    // state whose graph equals this round's derived graph is dominated by
    // re-adopting the latter (zero reconfiguration charge, same cost), so
    // it is pruned; this keeps the state space small when consecutive
    // rounds derive the same graph (e.g. ring schedules).
    for (const auto& [pkey, pe] : prev) {
      if (pkey <= s || pkey == s + 1 + i) continue;
      if (graph_of(pkey) == graph_of(s + 1 + i)) continue;
      Entry cand{pe.time + comm(pkey, i).time, pe.reconfigs, pkey, true};
      if (cand.time >= in.params.disconnect_penalty) continue;
      auto& slot = cur[pkey];
      if (improves(cand, pkey, slot, pkey)) slot = cand;
    }
  }

  int best_key = -1;
  for (const auto& [key, e] : layers[rounds - 1])
    if (best_key < 0 ||
        improves(e, key, layers[rounds - 1].at(best_key), best_key))
      best_key = key;

  std::vector<int> choices(rounds);
  int key = best_key;
  for (int i = rounds - 1; i >= 0; --i) {
    choices[i] = key;
    key = layers[i].at(key).prev_state;
  }
  return assemble(in, choices);
}

ReconfigPlan brute_force_plan(const PlannerInput& in) {
  const int rounds = static_cast<int>(in.schedule.rounds.size());
  const int s = static_cast<int>(in.standard_set.size());
  if (rounds > 10 || s > 3)
    throw std::invalid_argument("brute_force_plan instance too large");
  if (rounds == 0) return {};

  std::vector<int> choices(rounds);
  std::vector<int> best_choices;
  double best_time = std::numeric_limits<double>::infinity();
  int best_reconfigs = 0;

  // Cache per-(round, choice) communication times; choice keys as in plan().
  std::map<std::pair<int, int>, double> comm_cache;
  auto comm = [&](int round, int choice) {
    auto it = comm_cache.find({round, choice});
    if (it != comm_cache.end()) return it->second;
    double c = round_cost(choice_topology(in, choice),
                          in.schedule.rounds[round].transfers,
                          in.schedule.rounds[round].size_bytes, in.params)
                   .time;
    comm_cache.insert({{round, choice}, c});
    return c;
  };

  auto dfs = [&](auto&& self, int i, int prev, double time,
                 int reconfigs) -> void {
    if (time > best_time) return;
    if (i == rounds) {
      if (time < best_time ||
          (time == best_time &&
           (reconfigs < best_reconfigs ||
            (reconfigs == best_reconfigs && choices < best_choices)))) {
        best_time = time;
        best_reconfigs = reconfigs;
        best_choices = choices;
      }
      return;
    }
    std::vector<int> opts;
    for (int j = 0; j <= s; ++j) opts.push_back(j);
    if (prev > s && prev != s + 1 + i) opts.push_back(prev);  // keep holding
    opts.push_back(s + 1 + i);
    for (int j : opts) {
      bool sw = topology_switch(in, prev, j);
      double r = sw ? in.params.reconf_delay : 0.0;
      choices[i] = j;
      self(self, i + 1, j, time + r + comm(i, j), reconfigs + (sw ? 1 : 0));
    }
  };
  dfs(dfs, 0, 0, 0.0, 0);
  return assemble(in, best_choices);
}

bool validate_plan(const PlannerInput& in, const ReconfigPlan& p) {
  const int rounds = static_cast<int>(in.schedule.rounds.size());
  const int s = static_cast<int>(in.standard_set.size());
  if (static_cast<int>(p.per_round.size()) != rounds) return false;
  int prev = 0;
  double total = 0.0;
  int reconfigs = 0;
  for (int i = 0; i < rounds; ++i) {
    int j = p.per_round[i].choice;
    if (j < 0 || j > s + rounds) return false;
    if (j > s) {
      int k = j - s - 1;
      // Round-derived topologies: adopt at own round or hold contiguously.
      if (k > i) return false;
      if (k < i && p.per_round[i - 1].choice != j) return false;
    }
    bool sw = topology_switch(in, prev, j);
    double r = sw ? in.params.reconf_delay : 0.0;
    double c = round_cost(choice_topology(in, j),
                          in.schedule.rounds[i].transfers,
                          in.schedule.rounds[i].size_bytes, in.params)
                   .time;
    if (std::abs(p.per_round[i].reconf_s - r) > 1e-12) return false;
    if (std::abs(p.per_round[i].cost.time - c) > 1e-9 * std::max(1.0, c))
      return false;
    total += r;
    total += c;
    reconfigs += sw ? 1 : 0;
    prev = j;
  }
  return reconfigs == p.n_reconfigs &&
         std::abs(total - p.total_time) <= 1e-9 * std::max(1.0, total);
}

}  // namespace pccl
