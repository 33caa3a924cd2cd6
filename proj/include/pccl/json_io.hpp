#pragma once

#include <string>

#include "json.hpp"
#include "pccl/collectives.hpp"
#include "pccl/reconfig_planner.hpp"
#include "pccl/taskgraph.hpp"
#include "pccl/topology.hpp"

namespace pccl {

inline constexpr int kSchemaVersion = 1;

/// Fixed-format float rendering (9 significant digits) used everywhere a
/// number reaches a file, so equal inputs produce byte-identical output.
std::string format_float(double v);

nlohmann::json topology_to_json(const Topology& t);
Topology topology_from_json(const nlohmann::json& j);

nlohmann::json schedule_to_json(const Schedule& s);
Schedule schedule_from_json(const nlohmann::json& j);

nlohmann::json plan_to_json(const ReconfigPlan& p);

nlohmann::json taskgraph_to_json(const TaskGraph& g);
TaskGraph taskgraph_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const IterationReport& r);

/// Writes text to path; throws std::runtime_error with the path on errors.
void write_file(const std::string& path, const std::string& text);
std::string read_file(const std::string& path);

}  // namespace pccl
