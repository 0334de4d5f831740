#pragma once

#include <utility>
#include <vector>

#include "coopcast/broadcast.hpp"
#include "coopcast/net.hpp"

namespace coopcast {

// Disk centred at a node whose radius reaches exactly to the node's
// responsible transmitter.
struct Disk {
  NodeId center;
  double radius;
  // Exact squared centre-to-R(u) distance (radius = sqrt(radius_sq) up to
  // rounding). Power assignment works from this so that a receiver at
  // squared distance exactly 25 * radius_sq decodes at zero tolerance.
  double radius_sq;
};

// Full geometric trace of one cooperative -> non-cooperative conversion,
// kept around for tests and for plotting exports.
struct ConversionTrace {
  // responsible[u] for u != source; responsible[source] == source (unused).
  std::vector<NodeId> responsible;
  std::vector<Disk> disks;         // one per non-source node, ascending id
  std::vector<NodeId> selected;    // centres of the independent set, in
                                   // greedy selection order
  std::vector<std::vector<NodeId>> s_sets;  // parallel to selected
  std::vector<NodeId> winners;              // parallel to selected
  std::vector<double> powers;               // per node, mostly zero
};

// R(u): the closest node transmitting before u in the cooperative schedule;
// distance ties go to the earlier transmitter. The schedule must be
// normalized with the source transmitting first.
std::vector<NodeId> responsible_map(const Network& net, const Schedule& coop);

std::vector<Disk> build_disks(const Network& net,
                              const std::vector<NodeId>& responsible);

// Greedy largest-first independent subfamily. Two closed disks overlap iff
// centre distance <= r1 + r2 (tangency counts); radius ties break towards
// the smaller centre id.
std::vector<NodeId> select_independent(const Network& net,
                                       const std::vector<Disk>& disks);

// S_i and its earliest-transmitting member w_i for one selected centre.
std::pair<std::vector<NodeId>, NodeId> winner_of(const Network& net,
                                                 const Schedule& coop,
                                                 const std::vector<Disk>& disks,
                                                 NodeId center);

// Per-node powers: each selected disk pushes its winner to at least
// (5 r)^alpha; repeated winners keep the max, never the sum.
std::vector<double> assign_powers(const Network& net,
                                  const std::vector<NodeId>& selected,
                                  const std::vector<NodeId>& winners,
                                  const std::vector<Disk>& disks);

struct ConversionResult {
  Schedule schedule;
  ConversionTrace trace;
};

// The full conversion. With verify set, the input must pass the cooperative
// checker and the output is asserted to pass the non-cooperative checker at
// zero tolerance; an output failure is an implementation bug and throws.
ConversionResult convert(const Network& net, const Schedule& coop,
                         bool verify = true);

}  // namespace coopcast
