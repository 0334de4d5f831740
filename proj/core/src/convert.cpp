#include "coopcast/convert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace coopcast {

namespace {

constexpr std::size_t kNoPos = std::numeric_limits<std::size_t>::max();

// Position of each node in the transmitter order; kNoPos for silent nodes.
std::vector<std::size_t> order_positions(const Network& net,
                                         const Schedule& coop) {
  std::vector<std::size_t> pos(net.size(), kNoPos);
  std::size_t k = 0;
  for (const auto& e : coop.entries) {
    if (e.node >= net.size())
      throw std::invalid_argument("schedule references unknown node id");
    if (e.power == 0.0) continue;
    if (pos[e.node] != kNoPos)
      throw std::invalid_argument("schedule is not normalized");
    pos[e.node] = k++;
  }
  return pos;
}

std::vector<NodeId> transmitters_in_order(const Schedule& coop) {
  std::vector<NodeId> txs;
  for (const auto& e : coop.entries)
    if (e.power != 0.0) txs.push_back(e.node);
  return txs;
}

std::vector<double> radius_by_node(const Network& net,
                                   const std::vector<Disk>& disks) {
  std::vector<double> r(net.size(), 0.0);
  for (const auto& d : disks) r[d.center] = d.radius;
  return r;
}

}  // namespace

std::vector<NodeId> responsible_map(const Network& net, const Schedule& coop) {
  const auto txs = transmitters_in_order(coop);
  if (txs.empty() || txs.front() != net.source())
    throw std::invalid_argument(
        "responsible_map: source must be the first transmitter");
  const auto pos = order_positions(net, coop);

  std::vector<NodeId> responsible(net.size(), net.source());
  for (NodeId u = 0; u < net.size(); ++u) {
    if (u == net.source()) continue;
    const std::size_t limit = pos[u] == kNoPos ? txs.size() : pos[u];
    if (limit == 0)
      throw std::invalid_argument(
          "responsible_map: node has no earlier transmitter");
    NodeId best = txs[0];
    double best_dsq = net.distance_sq(u, txs[0]);
    for (std::size_t j = 1; j < limit; ++j) {
      const double dsq = net.distance_sq(u, txs[j]);
      if (dsq < best_dsq) {  // strict: distance ties keep the earlier tx
        best_dsq = dsq;
        best = txs[j];
      }
    }
    responsible[u] = best;
  }
  return responsible;
}

std::vector<Disk> build_disks(const Network& net,
                              const std::vector<NodeId>& responsible) {
  std::vector<Disk> disks;
  disks.reserve(net.size() - 1);
  for (NodeId u = 0; u < net.size(); ++u) {
    if (u == net.source()) continue;
    const double dsq = net.distance_sq(u, responsible[u]);
    disks.push_back({u, std::sqrt(dsq), dsq});
  }
  return disks;
}

std::vector<NodeId> select_independent(const Network& net,
                                       const std::vector<Disk>& disks) {
  if (disks.empty())
    throw std::invalid_argument("select_independent: empty disk family");
  // Once a disk overlaps the selected set it stays overlapping, so the
  // largest-first greedy loop reduces to a single pass over the disks sorted
  // by descending radius.
  std::vector<std::size_t> order(disks.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (disks[a].radius != disks[b].radius)
      return disks[a].radius > disks[b].radius;
    return disks[a].center < disks[b].center;
  });

  std::vector<std::size_t> chosen;
  for (std::size_t idx : order) {
    const Disk& d = disks[idx];
    bool overlaps = false;
    for (std::size_t s : chosen) {
      const double reach = d.radius + disks[s].radius;
      if (net.distance_sq(d.center, disks[s].center) <= reach * reach) {
        overlaps = true;
        break;
      }
    }
    if (!overlaps) chosen.push_back(idx);
  }

  std::vector<NodeId> selected;
  selected.reserve(chosen.size());
  for (std::size_t idx : chosen) selected.push_back(disks[idx].center);
  return selected;
}

std::pair<std::vector<NodeId>, NodeId> winner_of(const Network& net,
                                                 const Schedule& coop,
                                                 const std::vector<Disk>& disks,
                                                 NodeId center) {
  const auto responsible = responsible_map(net, coop);
  const auto pos = order_positions(net, coop);
  const auto radius = radius_by_node(net, disks);
  const double rc = radius[center];
  if (!(rc > 0.0))
    throw std::invalid_argument("winner_of: center has no disk");

  std::vector<NodeId> s_set;
  for (const auto& d : disks) {
    if (d.radius > rc) continue;
    const double reach = d.radius + rc;
    if (net.distance_sq(d.center, center) > reach * reach) continue;
    const NodeId r = responsible[d.center];
    if (std::find(s_set.begin(), s_set.end(), r) == s_set.end())
      s_set.push_back(r);
  }
  // D_center itself always qualifies, so s_set is nonempty.
  if (s_set.empty())
    throw std::logic_error("winner_of: empty S set (internal invariant)");

  NodeId winner = s_set.front();
  for (NodeId v : s_set)
    if (pos[v] < pos[winner]) winner = v;
  std::sort(s_set.begin(), s_set.end());
  return {std::move(s_set), winner};
}

std::vector<double> assign_powers(const Network& net,
                                  const std::vector<NodeId>& selected,
                                  const std::vector<NodeId>& winners,
                                  const std::vector<Disk>& disks) {
  std::vector<double> rsq(net.size(), 0.0);
  for (const auto& d : disks) rsq[d.center] = d.radius_sq;
  std::vector<double> powers(net.size(), 0.0);
  for (std::size_t i = 0; i < selected.size(); ++i) {
    // (5r)^alpha in squared form from the exact radius_sq: a receiver at
    // squared distance exactly 25 * radius_sq then decodes at zero tolerance.
    const double p =
        dist_pow_from_dsq(25.0 * rsq[selected[i]], net.alpha());
    powers[winners[i]] = std::max(powers[winners[i]], p);
  }
  return powers;
}

ConversionResult convert(const Network& net, const Schedule& coop_raw,
                         bool verify) {
  const Schedule coop = normalize(coop_raw);
  if (verify) {
    const auto report = check_cooperative(net, coop);
    if (!report.all_delivered)
      throw std::invalid_argument(
          "convert: input schedule is not a delivering cooperative broadcast");
  }

  ConversionTrace trace;
  trace.responsible = responsible_map(net, coop);
  trace.disks = build_disks(net, trace.responsible);
  trace.selected = select_independent(net, trace.disks);

  const auto pos = order_positions(net, coop);
  const auto radius = radius_by_node(net, trace.disks);

  // One pass over the disk family per selected centre; the per-centre
  // winner_of entry point recomputes shared state and is kept for direct use.
  trace.s_sets.reserve(trace.selected.size());
  trace.winners.reserve(trace.selected.size());
  for (NodeId c : trace.selected) {
    const double rc = radius[c];
    std::vector<NodeId> s_set;
    for (const auto& d : trace.disks) {
      if (d.radius > rc) continue;
      const double reach = d.radius + rc;
      if (net.distance_sq(d.center, c) > reach * reach) continue;
      const NodeId r = trace.responsible[d.center];
      if (std::find(s_set.begin(), s_set.end(), r) == s_set.end())
        s_set.push_back(r);
    }
    if (s_set.empty())
      throw std::logic_error("convert: empty S set (internal invariant)");
    NodeId winner = s_set.front();
    for (NodeId v : s_set)
      if (pos[v] < pos[winner]) winner = v;
    std::sort(s_set.begin(), s_set.end());
    trace.s_sets.push_back(std::move(s_set));
    trace.winners.push_back(winner);
  }

  trace.powers =
      assign_powers(net, trace.selected, trace.winners, trace.disks);

  // Output transmitters inherit their relative order from the input.
  std::vector<NodeId> out_nodes;
  for (NodeId u = 0; u < net.size(); ++u)
    if (trace.powers[u] > 0.0) out_nodes.push_back(u);
  std::sort(out_nodes.begin(), out_nodes.end(),
            [&](NodeId a, NodeId b) { return pos[a] < pos[b]; });

  Schedule out;
  out.entries.reserve(out_nodes.size());
  for (NodeId u : out_nodes) out.entries.push_back({u, trace.powers[u]});

  if (verify) {
    const auto report = check_noncooperative(net, out, /*tolerance=*/0.0);
    if (!report.all_delivered)
      throw std::logic_error(
          "convert: constructed schedule failed full-delivery verification "
          "(implementation bug)");
  }
  return {std::move(out), std::move(trace)};
}

}  // namespace coopcast
