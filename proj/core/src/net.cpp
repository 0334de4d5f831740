#include "coopcast/net.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "coopcast/rng.hpp"

namespace coopcast {

namespace {

// Exact-coordinate key; coincidence means bitwise-equal positions, which is
// what makes d^-alpha diverge.
std::uint64_t position_key(const Point2D& p) {
  const std::uint64_t hx = mix64(std::bit_cast<std::uint64_t>(p.x));
  const std::uint64_t hy = mix64(std::bit_cast<std::uint64_t>(p.y) ^ hx);
  return hx ^ (hy * 0x9e3779b97f4a7c15ULL);
}

}  // namespace

Network::Network(std::vector<Point2D> positions, double alpha,
                 double threshold, NodeId source)
    : positions_(std::move(positions)),
      alpha_(alpha),
      threshold_(threshold),
      source_(source) {
  if (positions_.size() < 2)
    throw std::invalid_argument("Network: need at least 2 nodes");
  if (!std::isfinite(alpha_))
    throw std::invalid_argument("Network: alpha must be finite");
  if (!(threshold_ > 0.0))
    throw std::invalid_argument("Network: threshold must be positive");
  if (source_ >= positions_.size())
    throw std::invalid_argument("Network: source id out of range");
  for (const auto& p : positions_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw std::invalid_argument("Network: non-finite coordinate");
  }
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(positions_.size() * 2);
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    if (!seen.insert(position_key(positions_[i])).second)
      throw std::invalid_argument("Network: coincident node " +
                                  std::to_string(i));
  }
}

double Network::link_gain(NodeId u, NodeId v) const {
  if (u == v) throw std::invalid_argument("link_gain: u == v is undefined");
  return gain_from_dsq(distance_sq(u, v), alpha_);
}

GridNetwork build_grid(int m, double d, NodeId source, double alpha,
                       double threshold) {
  if (m < 2) throw std::invalid_argument("build_grid: m must be >= 2");
  if (!(d > 0.0)) throw std::invalid_argument("build_grid: d must be > 0");
  const std::size_t n = static_cast<std::size_t>(m) * m;
  if (source >= n) throw std::invalid_argument("build_grid: source >= m*m");
  std::vector<Point2D> pos;
  pos.reserve(n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) pos.push_back({i * d, j * d});
  return GridNetwork{Network(std::move(pos), alpha, threshold, source), m, d};
}

std::optional<GridNetwork> detect_grid(const Network& net) {
  const std::size_t n = net.size();
  const int m = static_cast<int>(std::llround(std::sqrt(double(n))));
  if (m < 2 || static_cast<std::size_t>(m) * m != n) return std::nullopt;
  // Spacing from node (0,0) -> (0,1).
  const double d = net.position(1).y - net.position(0).y;
  if (!(d > 0.0)) return std::nullopt;
  const double eps = 1e-9 * d;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const Point2D& p = net.position(static_cast<NodeId>(i) * m + j);
      if (std::abs(p.x - i * d) > eps || std::abs(p.y - j * d) > eps)
        return std::nullopt;
    }
  }
  return GridNetwork{net, m, d};
}

namespace {

constexpr int kMaxResample = 100;

bool coincides(const std::vector<Point2D>& pts, std::size_t count,
               const Point2D& q) {
  for (std::size_t i = 0; i < count; ++i)
    if (pts[i].x == q.x && pts[i].y == q.y) return true;
  return false;
}

// Area-uniform point in a disk of the given radius around the origin.
Point2D uniform_in_disk(SeededRng& rng, double radius) {
  const double r = radius * std::sqrt(rng.uniform01());
  const double theta = 2.0 * 3.14159265358979323846 * rng.uniform01();
  return {r * std::cos(theta), r * std::sin(theta)};
}

void push_sampled(std::vector<Point2D>& pts, std::size_t idx, SeededRng& rng,
                  auto&& draw) {
  for (int attempt = 0; attempt < kMaxResample; ++attempt) {
    Point2D p = draw(rng);
    if (!coincides(pts, idx, p)) {
      pts[idx] = p;
      return;
    }
  }
  throw std::runtime_error(
      "sample_placement: coincident node persisted after resampling");
}

}  // namespace

Network sample_placement(const PlacementSpec& spec, double alpha,
                         const SourceRule& source_rule, double threshold) {
  if (std::holds_alternative<GridPlacement>(spec.kind)) {
    const auto& g = std::get<GridPlacement>(spec.kind);
    NodeId source = 0;
    if (source_rule.fixed) {
      source = *source_rule.fixed;
    } else {
      SeededRng rng(spec.seed);
      source = static_cast<NodeId>(
          rng.uniform_index(static_cast<std::uint64_t>(g.m) * g.m));
    }
    return build_grid(g.m, g.d, source, alpha, threshold).net;
  }

  SeededRng rng(spec.seed);
  std::vector<Point2D> pts;

  if (std::holds_alternative<UniformDiskPlacement>(spec.kind)) {
    const auto& u = std::get<UniformDiskPlacement>(spec.kind);
    if (u.n < 2 || !(u.radius > 0.0))
      throw std::invalid_argument("sample_placement: bad uniform-disk params");
    pts.resize(u.n);
    for (int i = 0; i < u.n; ++i)
      push_sampled(pts, i, rng, [&](SeededRng& r) {
        return uniform_in_disk(r, u.radius);
      });
  } else if (std::holds_alternative<GaussianPlacement>(spec.kind)) {
    const auto& g = std::get<GaussianPlacement>(spec.kind);
    if (g.n < 2 || !(g.sigma > 0.0))
      throw std::invalid_argument("sample_placement: bad gaussian params");
    pts.resize(g.n);
    for (int i = 0; i < g.n; ++i)
      push_sampled(pts, i, rng, [&](SeededRng& r) {
        return Point2D{g.sigma * r.gaussian(), g.sigma * r.gaussian()};
      });
  } else {
    const auto& c = std::get<ClusteredPlacement>(spec.kind);
    if (c.n < 2 || c.clusters < 1 || !(c.sigma > 0.0))
      throw std::invalid_argument("sample_placement: bad clustered params");
    // Cluster centers are drawn (uniformly in the unit disk) before any node;
    // each node then picks a center uniformly and adds a Gaussian offset.
    std::vector<Point2D> centers(c.clusters);
    for (int k = 0; k < c.clusters; ++k) centers[k] = uniform_in_disk(rng, 1.0);
    pts.resize(c.n);
    for (int i = 0; i < c.n; ++i)
      push_sampled(pts, i, rng, [&](SeededRng& r) {
        const auto& ctr = centers[r.uniform_index(centers.size())];
        return Point2D{ctr.x + c.sigma * r.gaussian(),
                       ctr.y + c.sigma * r.gaussian()};
      });
  }

  NodeId source = 0;
  if (source_rule.fixed) {
    if (*source_rule.fixed >= pts.size())
      throw std::invalid_argument("sample_placement: source id out of range");
    source = *source_rule.fixed;
  } else {
    source = static_cast<NodeId>(rng.uniform_index(pts.size()));
  }
  return Network(std::move(pts), alpha, threshold, source);
}

}  // namespace coopcast
