#pragma once

#include <vector>

#include "coopcast/broadcast.hpp"
#include "coopcast/convert.hpp"
#include "coopcast/net.hpp"

namespace coopcast {

// A disk free of any node association, used by the brightening problem.
struct FreeDisk {
  Point2D center;
  double radius;
};

struct BrighteningInstance {
  std::vector<FreeDisk> disks;
  double gamma;  // centre separation factor, > 1
  double alpha;  // > 2
};

// Lattice sum over the square grid offsets around a centre node; bounds the
// aggregate received power of one grid transmission. n must be a perfect
// square.
double zeta_alpha(int n, double alpha);

// (n-1) d^alpha / zeta_alpha(n): no cooperative grid broadcast can spend
// less.
double grid_coop_lower_bound(int m, double d, double alpha);

// n d^2 / 9: no non-cooperative grid broadcast can spend less (alpha = 2).
double grid_noncoop_lower_bound(int n, double d);

// (1 / 2L) ln(m / 2L - 1/2) >= 1: sufficient condition for the every-Lth-row
// grid broadcast to deliver without border rows.
bool grid_L_condition(int m, int L);
double grid_L_condition_value(int m, int L);

struct BetaConstants {
  double beta;
  double beta1;
  double beta2;
};

// Constants of the brightening lower bound; defined for alpha > 2.
BetaConstants beta_constants(double alpha, double gamma);

struct PointSource {
  Point2D position;
  double power;
};

struct SamplingSpec {
  int boundary = 256;  // samples on each disk boundary
  int radial = 64;     // interior polar grid rings
  int angular = 64;    // interior polar grid spokes
};

// True iff every sampled point of every disk accumulates at least the
// threshold. The boundary (worst case against a centred transmitter) is
// sampled explicitly; a transmitter sitting on a sample point makes that
// point trivially bright.
bool check_bright(const std::vector<FreeDisk>& disks,
                  const std::vector<PointSource>& transmitters, double alpha,
                  double threshold, const SamplingSpec& sampling = {});

// Same centres, radii divided by gamma.
std::vector<FreeDisk> contract_disks(const std::vector<FreeDisk>& disks,
                                     double gamma);

struct Bucket {
  NodeId owner;
  double capacity;  // (r/2)^alpha
  double fill;
};

enum class TransferScenario { AllFull, SomeUnfilled };

struct PowerTransferResult {
  std::vector<Bucket> buckets;  // parallel to trace.selected
  TransferScenario scenario;
  double leftover;  // scaled input power never taken by a bucket
};

// The iterative offering/taking procedure: each transmitter offers its
// remaining (scaled) power to its j-th closest eligible selected centre;
// centres take greedily up to capacity (r/2)^alpha. Conserves
// scale * total cooperative power = sum of fills + leftover.
PowerTransferResult power_transfer(const Network& net, const Schedule& coop,
                                   const ConversionTrace& trace, double scale);

// 127 ln(n): proven ceiling on the conversion ratio at alpha = 2.
double theorem3_ceiling(int n);

}  // namespace coopcast
