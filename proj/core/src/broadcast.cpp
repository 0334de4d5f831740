#include "coopcast/broadcast.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace coopcast {

Schedule normalize(const Schedule& sched) {
  std::unordered_map<NodeId, std::size_t> slot;
  Schedule out;
  for (const auto& e : sched.entries) {
    if (!(e.power >= 0.0) || !std::isfinite(e.power))
      throw std::invalid_argument("normalize: power must be finite and >= 0");
    auto [it, inserted] = slot.try_emplace(e.node, out.entries.size());
    if (inserted)
      out.entries.push_back(e);
    else
      out.entries[it->second].power += e.power;
  }
  std::erase_if(out.entries, [](const ScheduleEntry& e) { return e.power == 0.0; });
  return out;
}

double total_power(const Schedule& sched) {
  double sum = 0.0;
  for (const auto& e : sched.entries) sum += e.power;
  return sum;
}

namespace {

constexpr std::size_t kNotTransmitting = std::numeric_limits<std::size_t>::max();

// Transmitters in order plus each node's position in that order.
struct TxIndex {
  std::vector<ScheduleEntry> txs;
  std::vector<std::size_t> pos;  // kNotTransmitting for silent nodes
};

TxIndex index_transmitters(const Network& net, const Schedule& sched) {
  TxIndex idx;
  idx.pos.assign(net.size(), kNotTransmitting);
  for (const auto& e : sched.entries) {
    if (e.node >= net.size())
      throw std::invalid_argument("schedule references unknown node id");
    if (!(e.power >= 0.0) || !std::isfinite(e.power))
      throw std::invalid_argument("schedule power must be finite and >= 0");
    if (e.power == 0.0) continue;
    if (idx.pos[e.node] != kNotTransmitting)
      throw std::invalid_argument("schedule is not normalized: repeated node");
    idx.pos[e.node] = idx.txs.size();
    idx.txs.push_back(e);
  }
  return idx;
}

DeliveryReport run_check(const Network& net, const Schedule& sched,
                         DeliveryMode mode, double tolerance) {
  const TxIndex idx = index_transmitters(net, sched);
  const double alpha = net.alpha();
  const double need = net.threshold() - tolerance;
  const std::size_t n = net.size();

  DeliveryReport report;
  report.mode = mode;
  report.all_delivered = true;
  report.per_node.reserve(n);

  auto evaluate = [&](NodeId u) {
    const std::size_t limit =
        idx.pos[u] == kNotTransmitting ? idx.txs.size() : idx.pos[u];
    double received = 0.0;
    const Point2D pu = net.position(u);
    for (std::size_t j = 0; j < limit; ++j) {
      const Point2D pv = net.position(idx.txs[j].node);
      const double dx = pu.x - pv.x, dy = pu.y - pv.y;
      const double contrib =
          idx.txs[j].power * gain_from_dsq(dx * dx + dy * dy, alpha);
      if (mode == DeliveryMode::Cooperative)
        received += contrib;
      else if (contrib > received)
        received = contrib;
    }
    const bool ok = u == net.source() || received >= need;
    if (!ok && report.all_delivered) {
      report.all_delivered = false;
      report.first_failure = u;
    }
    report.per_node.push_back({u, received, ok});
  };

  for (const auto& e : idx.txs) evaluate(e.node);
  for (NodeId u = 0; u < n; ++u)
    if (idx.pos[u] == kNotTransmitting) evaluate(u);
  return report;
}

}  // namespace

DeliveryReport check_cooperative(const Network& net, const Schedule& sched,
                                 double tolerance) {
  return run_check(net, sched, DeliveryMode::Cooperative, tolerance);
}

DeliveryReport check_noncooperative(const Network& net, const Schedule& sched,
                                    double tolerance) {
  return run_check(net, sched, DeliveryMode::NonCooperative, tolerance);
}

double gain(double p_noncoop, double p_coop) {
  if (!(p_coop > 0.0))
    throw std::invalid_argument("gain: cooperative power must be positive");
  return p_noncoop / p_coop;
}

}  // namespace coopcast
