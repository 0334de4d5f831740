#include "coopcast/json_io.hpp"

#include <ostream>

namespace coopcast {

using nlohmann::json;

json network_to_json(const Network& net) {
  json positions = json::array();
  for (const auto& p : net.positions()) positions.push_back({p.x, p.y});
  return json{{"alpha", net.alpha()},
              {"threshold", net.threshold()},
              {"source", net.source()},
              {"positions", std::move(positions)}};
}

Network network_from_json(const json& j) {
  std::vector<Point2D> positions;
  for (const auto& p : j.at("positions"))
    positions.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  return Network(std::move(positions), j.at("alpha").get<double>(),
                 j.value("threshold", 1.0), j.at("source").get<NodeId>());
}

json schedule_to_json(const Schedule& sched) {
  json entries = json::array();
  for (const auto& e : sched.entries) entries.push_back({e.node, e.power});
  return json{{"entries", std::move(entries)}};
}

Schedule schedule_from_json(const json& j) {
  Schedule sched;
  for (const auto& e : j.at("entries"))
    sched.entries.push_back({e.at(0).get<NodeId>(), e.at(1).get<double>()});
  return sched;
}

json trace_to_json(const Network& net, const ConversionTrace& trace) {
  json disks = json::array();
  for (const auto& d : trace.disks) {
    const auto& c = net.position(d.center);
    disks.push_back({{"center", d.center},
                     {"x", c.x},
                     {"y", c.y},
                     {"radius", d.radius}});
  }
  json responsible = json::object();
  for (NodeId u = 0; u < net.size(); ++u)
    if (u != net.source())
      responsible[std::to_string(u)] = trace.responsible[u];
  json winners = json::object();
  json s_sets = json::object();
  for (std::size_t i = 0; i < trace.selected.size(); ++i) {
    winners[std::to_string(trace.selected[i])] = trace.winners[i];
    s_sets[std::to_string(trace.selected[i])] = trace.s_sets[i];
  }
  json powers = json::object();
  for (NodeId u = 0; u < net.size(); ++u)
    if (trace.powers[u] > 0.0) powers[std::to_string(u)] = trace.powers[u];
  return json{{"responsible", std::move(responsible)},
              {"disks", std::move(disks)},
              {"selected", trace.selected},
              {"s_sets", std::move(s_sets)},
              {"winners", std::move(winners)},
              {"powers", std::move(powers)}};
}

void report_to_csv(const DeliveryReport& report, std::ostream& out) {
  out << "node,received,ok\n";
  char buf[64];
  for (const auto& e : report.per_node) {
    std::snprintf(buf, sizeof(buf), "%.12g", e.received);
    out << e.node << ',' << buf << ',' << (e.ok ? 1 : 0) << '\n';
  }
}

}  // namespace coopcast
