#include "coopcast/algos.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace coopcast {

Schedule greedy_filling(const Network& net) {
  const std::size_t n = net.size();
  const double alpha = net.alpha();
  const double th = net.threshold();
  const NodeId s = net.source();

  std::vector<double> energy(n, 0.0);
  std::vector<char> decoded(n, 0);
  // Cheapest transmitter for each undecoded node is simply its closest
  // decoded node: the marginal power (th - E) * d^alpha is minimized there.
  std::vector<double> best_dsq(n, 0.0);
  std::vector<NodeId> best_tx(n, s);

  decoded[s] = 1;
  std::size_t remaining = n - 1;
  for (NodeId v = 0; v < n; ++v)
    if (v != s) best_dsq[v] = net.distance_sq(v, s);

  Schedule raw;
  while (remaining > 0) {
    NodeId target = 0;
    double target_cost = std::numeric_limits<double>::infinity();
    for (NodeId v = 0; v < n; ++v) {
      if (decoded[v]) continue;
      const double deficit = std::max(0.0, th - energy[v]);
      const double cost = deficit * dist_pow_from_dsq(best_dsq[v], alpha);
      if (cost < target_cost) {
        target_cost = cost;
        target = v;
      }
    }

    const NodeId tx = best_tx[target];
    const double spend = target_cost;
    raw.entries.push_back({tx, spend});

    const Point2D pt = net.position(tx);
    for (NodeId w = 0; w < n; ++w) {
      if (decoded[w] || w == tx) continue;
      const double dx = net.position(w).x - pt.x;
      const double dy = net.position(w).y - pt.y;
      energy[w] += spend * gain_from_dsq(dx * dx + dy * dy, alpha);
    }

    std::vector<NodeId> fresh;
    decoded[target] = 1;  // reaches the threshold by construction
    fresh.push_back(target);
    --remaining;
    for (NodeId w = 0; w < n; ++w) {
      if (decoded[w]) continue;
      if (energy[w] >= th - kDeliveryTolerance) {
        decoded[w] = 1;
        fresh.push_back(w);
        --remaining;
      }
    }
    for (NodeId u : fresh) {
      const Point2D pu = net.position(u);
      for (NodeId w = 0; w < n; ++w) {
        if (decoded[w]) continue;
        const double dx = net.position(w).x - pu.x;
        const double dy = net.position(w).y - pu.y;
        const double dsq = dx * dx + dy * dy;
        if (dsq < best_dsq[w]) {
          best_dsq[w] = dsq;
          best_tx[w] = u;
        }
      }
    }
  }
  return normalize(raw);
}

Schedule bip(const Network& net) {
  const std::size_t n = net.size();
  const double alpha = net.alpha();
  const NodeId s = net.source();

  std::vector<double> power(n, 0.0);
  std::vector<NodeId> parent(n, s);
  std::vector<char> covered(n, 0);
  std::vector<double> best_incr(n, 0.0);
  std::vector<NodeId> best_tx(n, s);

  covered[s] = 1;
  for (NodeId v = 0; v < n; ++v)
    if (v != s) best_incr[v] = dist_pow_from_dsq(net.distance_sq(v, s), alpha);

  for (std::size_t step = 1; step < n; ++step) {
    NodeId pick = 0;
    double pick_incr = std::numeric_limits<double>::infinity();
    for (NodeId v = 0; v < n; ++v) {
      if (covered[v]) continue;
      if (best_incr[v] < pick_incr) {
        pick_incr = best_incr[v];
        pick = v;
      }
    }
    const NodeId tx = best_tx[pick];
    power[tx] = std::max(power[tx], dist_pow_from_dsq(net.distance_sq(tx, pick), alpha));
    parent[pick] = tx;
    covered[pick] = 1;

    // Candidate costs changed only through the new node and the transmitter
    // whose power just grew; cached entries via tx were overestimates and
    // are corrected by the min below.
    for (NodeId w = 0; w < n; ++w) {
      if (covered[w]) continue;
      const double via_new = dist_pow_from_dsq(net.distance_sq(w, pick), alpha);
      if (via_new < best_incr[w]) {
        best_incr[w] = via_new;
        best_tx[w] = pick;
      }
      const double via_tx = std::max(
          0.0, dist_pow_from_dsq(net.distance_sq(w, tx), alpha) - power[tx]);
      if (via_tx < best_incr[w]) {
        best_incr[w] = via_tx;
        best_tx[w] = tx;
      }
    }
  }

  // Emit transmitters in BFS order over the coverage tree.
  std::vector<std::vector<NodeId>> children(n);
  for (NodeId v = 0; v < n; ++v)
    if (v != s) children[parent[v]].push_back(v);
  Schedule out;
  std::vector<NodeId> queue{s};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId u = queue[head];
    if (power[u] > 0.0) out.entries.push_back({u, power[u]});
    for (NodeId c : children[u]) queue.push_back(c);
  }
  return out;
}

Schedule mst_broadcast(const Network& net) {
  const std::size_t n = net.size();
  const double alpha = net.alpha();
  const NodeId s = net.source();

  // Prim from the source; parent links double as the broadcast tree.
  std::vector<char> in_tree(n, 0);
  std::vector<double> key(n, std::numeric_limits<double>::infinity());
  std::vector<NodeId> parent(n, s);
  in_tree[s] = 1;
  for (NodeId v = 0; v < n; ++v)
    if (v != s) key[v] = net.distance_sq(v, s);

  for (std::size_t step = 1; step < n; ++step) {
    NodeId pick = 0;
    double pick_key = std::numeric_limits<double>::infinity();
    for (NodeId v = 0; v < n; ++v)
      if (!in_tree[v] && key[v] < pick_key) {
        pick_key = key[v];
        pick = v;
      }
    in_tree[pick] = 1;
    for (NodeId w = 0; w < n; ++w) {
      if (in_tree[w]) continue;
      const double dsq = net.distance_sq(w, pick);
      if (dsq < key[w]) {
        key[w] = dsq;
        parent[w] = pick;
      }
    }
  }

  std::vector<double> power(n, 0.0);
  std::vector<std::vector<NodeId>> children(n);
  for (NodeId v = 0; v < n; ++v) {
    if (v == s) continue;
    children[parent[v]].push_back(v);
    power[parent[v]] = std::max(
        power[parent[v]], dist_pow_from_dsq(net.distance_sq(v, parent[v]), alpha));
  }

  Schedule out;
  std::vector<NodeId> queue{s};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId u = queue[head];
    if (power[u] > 0.0) out.entries.push_back({u, power[u]});
    for (NodeId c : children[u]) queue.push_back(c);
  }
  return out;
}

namespace {

// Nodes ordered by Manhattan lattice distance from the source (ties by id):
// every node at distance k > 0 has a lattice neighbour at distance k - 1, so
// each transmitter is heard by an adjacent earlier one.
std::vector<NodeId> outward_order(const GridNetwork& grid) {
  const int m = grid.m;
  const int si = static_cast<int>(grid.net.source()) / m;
  const int sj = static_cast<int>(grid.net.source()) % m;
  std::vector<NodeId> order(grid.net.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    const int da = std::abs(int(a) / m - si) + std::abs(int(a) % m - sj);
    const int db = std::abs(int(b) / m - si) + std::abs(int(b) % m - sj);
    if (da != db) return da < db;
    return a < b;
  });
  return order;
}

}  // namespace

Schedule grid_all_nodes(const GridNetwork& grid) {
  const double p = dist_pow_from_dsq(grid.d * grid.d, grid.net.alpha());
  Schedule out;
  for (NodeId u : outward_order(grid)) out.entries.push_back({u, p});
  return out;
}

Schedule grid_coop_rows(const GridNetwork& grid, const GridCoopParams& params) {
  if (params.L < 1 || params.L > grid.m)
    throw std::invalid_argument("grid_coop_rows: L out of range");
  const int m = grid.m;
  const int si = static_cast<int>(grid.net.source()) / m;
  const int sj = static_cast<int>(grid.net.source()) % m;

  // Transmitting rows: the source's own row (which spreads the message
  // horizontally first) plus the fixed every-Lth-row family of the grid,
  // optionally topped up with the border rows.
  std::vector<char> transmits_row(m, 0);
  transmits_row[si] = 1;
  for (int r = 0; r < m; r += params.L) transmits_row[r] = 1;
  if (params.include_border_rows) {
    transmits_row[0] = 1;
    transmits_row[m - 1] = 1;
  }

  std::vector<int> rows;
  for (int r = 0; r < m; ++r)
    if (transmits_row[r]) rows.push_back(r);
  std::sort(rows.begin(), rows.end(), [&](int a, int b) {
    const int da = std::abs(a - si), db = std::abs(b - si);
    if (da != db) return da < db;
    return a < b;
  });

  std::vector<int> cols(m);
  std::iota(cols.begin(), cols.end(), 0);
  std::sort(cols.begin(), cols.end(), [&](int a, int b) {
    const int da = std::abs(a - sj), db = std::abs(b - sj);
    if (da != db) return da < db;
    return a < b;
  });

  const double p = dist_pow_from_dsq(grid.d * grid.d, grid.net.alpha());
  Schedule out;
  for (int r : rows)
    for (int c : cols)
      out.entries.push_back({static_cast<NodeId>(r) * m + c, p});
  return out;
}

int max_feasible_L(const GridNetwork& grid, bool include_border_rows) {
  int best = 1;  // L = 1 makes every row transmit and always delivers
  for (int L = 1; L <= grid.m; ++L) {
    const Schedule sched =
        grid_coop_rows(grid, {L, include_border_rows});
    if (check_cooperative(grid.net, sched).all_delivered) best = std::max(best, L);
  }
  return best;
}

Schedule single_transmission(const Network& net) {
  double max_dsq = 0.0;
  for (NodeId v = 0; v < net.size(); ++v)
    if (v != net.source())
      max_dsq = std::max(max_dsq, net.distance_sq(net.source(), v));
  return Schedule{{{net.source(), dist_pow_from_dsq(max_dsq, net.alpha())}}};
}

}  // namespace coopcast
