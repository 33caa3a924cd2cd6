#include "pccl/cost_model.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

namespace pccl {

RoundCost round_cost(const Topology& t, const std::vector<Transfer>& round,
                     double w, const CostParams& p) {
  RoundCost rc;
  std::map<std::pair<int, int>, int> load;
  for (const Transfer& tr : round) {
    if (tr.src < 0 || tr.src >= t.n() || tr.dst < 0 || tr.dst >= t.n())
      throw std::invalid_argument("transfer rank out of range");
    auto path = shortest_path(t, tr.src, tr.dst);
    if (!path) {
      rc.connected = false;
      rc.time = p.disconnect_penalty;
      return rc;
    }
    rc.dilation = std::max(rc.dilation, static_cast<int>(path->size()) - 1);
    for (size_t i = 0; i + 1 < path->size(); ++i) {
      int u = (*path)[i], v = (*path)[i + 1];
      std::pair<int, int> key =
          p.directed_edge_capacity ? std::pair{u, v}
                                   : std::pair{std::min(u, v), std::max(u, v)};
      rc.congestion = std::max(rc.congestion, ++load[key]);
    }
  }
  rc.time = p.alpha * rc.dilation + p.beta * rc.congestion * w;
  return rc;
}

ScheduleCost schedule_cost(const Topology& t, const Schedule& s,
                           const CostParams& p) {
  ScheduleCost sc;
  for (const auto& round : s.rounds) {
    sc.per_round.push_back(round_cost(t, round.transfers, round.size_bytes, p));
    sc.total += sc.per_round.back().time;
  }
  return sc;
}

double effective_bandwidth(double link_bw, int overlaps) {
  if (overlaps < 1) throw std::invalid_argument("overlaps must be >= 1");
  return link_bw / overlaps;
}

}  // namespace pccl
