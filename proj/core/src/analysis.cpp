#include "coopcast/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace coopcast {

double zeta_alpha(int n, double alpha) {
  if (n < 2) throw std::invalid_argument("zeta_alpha: n must be >= 2");
  const int m = static_cast<int>(std::llround(std::sqrt(double(n))));
  if (m * m != n)
    throw std::invalid_argument("zeta_alpha: n must be a perfect square");
  const int lo = -((m - 1) / 2);
  const int hi = (m - 1 + 1) / 2;  // ceil((m-1)/2)
  double sum = 0.0;
  for (int i = lo; i <= hi; ++i) {
    for (int j = lo; j <= hi; ++j) {
      if (i == 0 && j == 0) continue;
      sum += std::pow(double(i) * i + double(j) * j, -0.5 * alpha);
    }
  }
  return sum;
}

double grid_coop_lower_bound(int m, double d, double alpha) {
  if (m < 2 || !(d > 0.0))
    throw std::invalid_argument("grid_coop_lower_bound: bad grid parameters");
  const int n = m * m;
  return (n - 1) * std::pow(d, alpha) / zeta_alpha(n, alpha);
}

double grid_noncoop_lower_bound(int n, double d) {
  if (n < 2 || !(d > 0.0))
    throw std::invalid_argument("grid_noncoop_lower_bound: bad parameters");
  return n * d * d / 9.0;
}

double grid_L_condition_value(int m, int L) {
  if (m < 2 || L < 1 || L > m)
    throw std::invalid_argument("grid_L_condition: bad parameters");
  const double arg = double(m) / (2.0 * L) - 0.5;
  if (!(arg > 0.0)) return -std::numeric_limits<double>::infinity();
  return std::log(arg) / (2.0 * L);
}

bool grid_L_condition(int m, int L) {
  return grid_L_condition_value(m, L) >= 1.0;
}

BetaConstants beta_constants(double alpha, double gamma) {
  if (!(alpha > 2.0))
    throw std::invalid_argument("beta_constants: requires alpha > 2");
  if (!(gamma > 1.0))
    throw std::invalid_argument("beta_constants: requires gamma > 1");
  const double beta1 = 1.0 / ((alpha - 2.0) * std::pow(gamma, alpha - 2.0)) *
                       std::pow((2.0 * gamma + 1.0) / (2.0 * gamma - 1.0), alpha);
  const double beta2 = beta1 * std::pow(gamma / (gamma - 1.0), alpha);
  return {1.0 - beta1 - beta2, beta1, beta2};
}

namespace {

bool point_bright(const Point2D& p,
                  const std::vector<PointSource>& transmitters, double alpha,
                  double need) {
  double sum = 0.0;
  for (const auto& t : transmitters) {
    const double dx = p.x - t.position.x;
    const double dy = p.y - t.position.y;
    const double dsq = dx * dx + dy * dy;
    if (dsq == 0.0) return true;  // unbounded received power
    sum += t.power * gain_from_dsq(dsq, alpha);
    if (sum >= need) return true;
  }
  return sum >= need;
}

}  // namespace

bool check_bright(const std::vector<FreeDisk>& disks,
                  const std::vector<PointSource>& transmitters, double alpha,
                  double threshold, const SamplingSpec& sampling) {
  const double need = threshold - kDeliveryTolerance;
  constexpr double kTwoPi = 2.0 * 3.14159265358979323846;
  for (const auto& disk : disks) {
    for (int k = 0; k < sampling.boundary; ++k) {
      const double theta = kTwoPi * k / sampling.boundary;
      const Point2D p{disk.center.x + disk.radius * std::cos(theta),
                      disk.center.y + disk.radius * std::sin(theta)};
      if (!point_bright(p, transmitters, alpha, need)) return false;
    }
    if (!point_bright(disk.center, transmitters, alpha, need)) return false;
    for (int i = 1; i <= sampling.radial; ++i) {
      const double r = disk.radius * i / (sampling.radial + 1);
      for (int k = 0; k < sampling.angular; ++k) {
        const double theta = kTwoPi * k / sampling.angular;
        const Point2D p{disk.center.x + r * std::cos(theta),
                        disk.center.y + r * std::sin(theta)};
        if (!point_bright(p, transmitters, alpha, need)) return false;
      }
    }
  }
  return true;
}

std::vector<FreeDisk> contract_disks(const std::vector<FreeDisk>& disks,
                                     double gamma) {
  if (!(gamma > 1.0))
    throw std::invalid_argument("contract_disks: requires gamma > 1");
  std::vector<FreeDisk> out;
  out.reserve(disks.size());
  for (const auto& d : disks) out.push_back({d.center, d.radius / gamma});
  return out;
}

PowerTransferResult power_transfer(const Network& net, const Schedule& coop,
                                   const ConversionTrace& trace, double scale) {
  const Schedule norm = normalize(coop);
  const double alpha = net.alpha();

  std::vector<double> radius(net.size(), 0.0);
  for (const auto& d : trace.disks) radius[d.center] = d.radius;

  PowerTransferResult result;
  result.buckets.reserve(trace.selected.size());
  std::vector<std::size_t> bucket_of(net.size(), SIZE_MAX);
  for (NodeId c : trace.selected) {
    bucket_of[c] = result.buckets.size();
    result.buckets.push_back(
        {c, std::pow(radius[c] / 2.0, alpha), 0.0});
  }

  // Eligible centres per transmitter: those whose disk the transmitter is
  // not strictly inside (boundary counts as outside), sorted by distance
  // with ties towards the smaller centre id.
  struct Offerer {
    NodeId node;
    double remaining;
    std::vector<std::size_t> targets;  // bucket indices, closest first
  };
  std::vector<Offerer> offerers;
  std::size_t max_targets = 0;
  for (const auto& e : norm.entries) {
    Offerer o{e.node, scale * e.power, {}};
    for (std::size_t b = 0; b < result.buckets.size(); ++b) {
      const NodeId c = result.buckets[b].owner;
      if (net.distance_sq(e.node, c) < radius[c] * radius[c])
        continue;  // strictly inside the disk
      o.targets.push_back(b);
    }
    std::sort(o.targets.begin(), o.targets.end(),
              [&](std::size_t a, std::size_t b) {
                const double da = net.distance_sq(e.node, result.buckets[a].owner);
                const double db = net.distance_sq(e.node, result.buckets[b].owner);
                if (da != db) return da < db;
                return result.buckets[a].owner < result.buckets[b].owner;
              });
    max_targets = std::max(max_targets, o.targets.size());
    offerers.push_back(std::move(o));
  }

  for (std::size_t iter = 0; iter < max_targets; ++iter) {
    // Offers of one iteration, taken in transmitter order for determinism.
    for (auto& o : offerers) {
      if (o.remaining <= 0.0 || iter >= o.targets.size()) continue;
      Bucket& bucket = result.buckets[o.targets[iter]];
      const double take =
          std::min(o.remaining, bucket.capacity - bucket.fill);
      if (take > 0.0) {
        bucket.fill += take;
        o.remaining -= take;
      }
    }
  }

  result.leftover = 0.0;
  for (const auto& o : offerers) result.leftover += o.remaining;
  result.scenario = TransferScenario::AllFull;
  for (const auto& b : result.buckets) {
    if (b.fill < b.capacity - 1e-12 * std::max(1.0, b.capacity)) {
      result.scenario = TransferScenario::SomeUnfilled;
      break;
    }
  }
  return result;
}

double theorem3_ceiling(int n) {
  if (n < 2) throw std::invalid_argument("theorem3_ceiling: n must be >= 2");
  return 127.0 * std::log(double(n));
}

}  // namespace coopcast
