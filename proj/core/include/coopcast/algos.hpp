#pragma once

#include "coopcast/broadcast.hpp"
#include "coopcast/net.hpp"

namespace coopcast {

struct GridCoopParams {
  int L = 1;                       // transmitting-row spacing
  bool include_border_rows = false;  // top and bottom rows also transmit
};

// Marginal-power greedy: repeatedly spend the cheapest extra power that
// pushes some undecoded node to the threshold, letting every other undecoded
// node accumulate the side radiation. Always returns a schedule that passes
// the cooperative checker.
Schedule greedy_filling(const Network& net);

// Broadcast Incremental Power tree (Wieselthier et al. style greedy).
Schedule bip(const Network& net);

// Euclidean MST rooted at the source; each internal node covers its farthest
// child.
Schedule mst_broadcast(const Network& net);

// Every node transmits d^alpha, ordered outward from the source so each node
// hears an adjacent earlier transmitter. Total power is exactly n * d^alpha.
Schedule grid_all_nodes(const GridNetwork& grid);

// The source's row plus every Lth row (and optionally the border rows)
// transmit d^alpha each, rows ordered outward from the source. Delivery for
// arbitrary L is decided by check_cooperative, not guaranteed here.
Schedule grid_coop_rows(const GridNetwork& grid, const GridCoopParams& params);

// Largest L for which grid_coop_rows delivers, by increasing linear scan
// (delivery is not proven monotone in L).
int max_feasible_L(const GridNetwork& grid, bool include_border_rows);

// The source alone reaches the farthest node in one shot.
Schedule single_transmission(const Network& net);

}  // namespace coopcast
