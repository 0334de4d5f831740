#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace coopcast {

using NodeId = std::uint32_t;

struct Point2D {
  double x = 0.0;
  double y = 0.0;
};

// Immutable 2D network under the simplified path-loss model: link gain
// between two nodes is d^-alpha. Safe to share read-only across threads.
class Network {
public:
  Network(std::vector<Point2D> positions, double alpha, double threshold,
          NodeId source);

  std::size_t size() const { return positions_.size(); }
  double alpha() const { return alpha_; }
  double threshold() const { return threshold_; }
  NodeId source() const { return source_; }
  const Point2D& position(NodeId u) const { return positions_[u]; }
  const std::vector<Point2D>& positions() const { return positions_; }

  double distance_sq(NodeId u, NodeId v) const {
    const double dx = positions_[u].x - positions_[v].x;
    const double dy = positions_[u].y - positions_[v].y;
    return dx * dx + dy * dy;
  }

  double distance(NodeId u, NodeId v) const {
    return std::sqrt(distance_sq(u, v));
  }

  // h_{u,v} = d^-alpha. Precondition: u != v (gain is undefined at d = 0).
  double link_gain(NodeId u, NodeId v) const;

private:
  std::vector<Point2D> positions_;
  double alpha_;
  double threshold_;
  NodeId source_;
};

// d^alpha from a squared distance, with a pow-free fast path for the common
// alpha = 2 case. All power/gain arithmetic in the library goes through this
// one form so that a power set to "exactly d^alpha" cancels bitwise against
// the checker's gain at the same squared distance.
inline double dist_pow_from_dsq(double d_sq, double alpha) {
  if (alpha == 2.0) return d_sq;
  return std::pow(d_sq, 0.5 * alpha);
}

// Received power at distance sqrt(d_sq) from a unit transmitter.
inline double gain_from_dsq(double d_sq, double alpha) {
  return 1.0 / dist_pow_from_dsq(d_sq, alpha);
}

struct GridPlacement {
  int m = 2;       // side length; n = m*m
  double d = 1.0;  // lattice spacing
};
struct UniformDiskPlacement {
  int n = 2;
  double radius = 1.0;
};
struct GaussianPlacement {
  int n = 2;
  double sigma = 0.5;
};
struct ClusteredPlacement {
  int n = 2;
  int clusters = 5;
  double sigma = 0.5;
};

struct PlacementSpec {
  std::variant<GridPlacement, UniformDiskPlacement, GaussianPlacement,
               ClusteredPlacement>
      kind;
  std::uint64_t seed = 0;
};

struct SourceRule {
  // Fixed node id, or uniformly random from the placement's RNG stream when
  // empty. The paper does not pin the source for random placements.
  std::optional<NodeId> fixed = NodeId{0};
  static SourceRule Fixed(NodeId u) { return SourceRule{u}; }
  static SourceRule RandomUniform() { return SourceRule{std::nullopt}; }
};

// A Network known to be an m x m lattice; node (i,j) has id i*m+j at
// coordinates (i*d, j*d).
struct GridNetwork {
  Network net;
  int m;
  double d;
};

GridNetwork build_grid(int m, double d, NodeId source, double alpha = 2.0,
                       double threshold = 1.0);

// Recover (m, d) from a Network laid out by build_grid. Used by the CLI so
// grid algorithms also accept --network files.
std::optional<GridNetwork> detect_grid(const Network& net);

Network sample_placement(const PlacementSpec& spec, double alpha,
                         const SourceRule& source_rule,
                         double threshold = 1.0);

}  // namespace coopcast
