#pragma once

#include <optional>
#include <vector>

#include "coopcast/net.hpp"

namespace coopcast {

// Delivery comparisons use received >= threshold - kDeliveryTolerance to
// absorb accumulation round-off. Tests pass 0 when checking exact
// constructions.
inline constexpr double kDeliveryTolerance = 1e-9;

struct ScheduleEntry {
  NodeId node;
  double power;
};

// A broadcast algorithm: the ordered transmitter list realizes the strict
// total order on transmitters; nodes absent from the list (or listed with
// power 0) never transmit and are maximal in the order.
struct Schedule {
  std::vector<ScheduleEntry> entries;
};

enum class DeliveryMode { Cooperative, NonCooperative };

struct DeliveryReport {
  struct Entry {
    NodeId node;
    double received;  // accumulated sum (coop) or best single link (non-coop)
    bool ok;
  };
  DeliveryMode mode;
  std::vector<Entry> per_node;  // transmitters in order, then the rest by id
  bool all_delivered;
  std::optional<NodeId> first_failure;
};

// Merge repeated transmissions (powers add at the node's earliest position)
// and drop zero-power entries. Total power is preserved exactly.
Schedule normalize(const Schedule& sched);

double total_power(const Schedule& sched);

DeliveryReport check_cooperative(const Network& net, const Schedule& sched,
                                 double tolerance = kDeliveryTolerance);

DeliveryReport check_noncooperative(const Network& net, const Schedule& sched,
                                    double tolerance = kDeliveryTolerance);

// Cooperation gain: non-cooperative over cooperative total power.
double gain(double p_noncoop, double p_coop);

}  // namespace coopcast
