#pragma once

#include <iosfwd>

#include <json.hpp>

#include "coopcast/broadcast.hpp"
#include "coopcast/convert.hpp"
#include "coopcast/net.hpp"

namespace coopcast {

// {"alpha": f, "threshold": f, "source": i, "positions": [[x,y],...]}
nlohmann::json network_to_json(const Network& net);
Network network_from_json(const nlohmann::json& j);

// {"entries": [[node, power], ...]}
nlohmann::json schedule_to_json(const Schedule& sched);
Schedule schedule_from_json(const nlohmann::json& j);

// Disks, selected set, winners, responsible map and assigned powers, in a
// form suitable for external plotting.
nlohmann::json trace_to_json(const Network& net, const ConversionTrace& trace);

// One row per node: node,received,ok
void report_to_csv(const DeliveryReport& report, std::ostream& out);

}  // namespace coopcast
