#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <set>

#include "coopcast/algos.hpp"
#include "coopcast/broadcast.hpp"
#include "coopcast/convert.hpp"
#include "coopcast/net.hpp"

using namespace coopcast;

namespace {

// Seven-node instance reproducing the walkthrough relations: with the
// cooperative transmitter order u1 < u3 < u5 < u6 (ids 0 < 2 < 4 < 5),
// R(u2)=u1, R(u3)=u1, R(u4)=u3, R(u5)=u3, R(u6)=u5, R(u7)=u6, and the
// conversion selects the u7- and u4-disks with winners u1 and u3.
Network sample7() {
  return Network({{0.0, 0.0},     // u1 (source)
                  {0.0, 1.5},     // u2
                  {2.0, 0.0},     // u3
                  {2.0, -1.2},    // u4
                  {4.5, 0.0},     // u5
                  {6.0, 0.0},     // u6
                  {6.3, 4.0}},    // u7
                 2.0, 1.0, 0);
}

Schedule sample7_coop() {
  return Schedule{{{0, 100.0}, {2, 100.0}, {4, 100.0}, {5, 100.0}}};
}

}  // namespace

TEST_CASE("responsible_map on the walkthrough network") {
  const Network net = sample7();
  const Schedule coop = sample7_coop();
  REQUIRE(check_cooperative(net, coop).all_delivered);
  const auto R = responsible_map(net, coop);
  CHECK(R[1] == 0);  // R(u2) = u1
  CHECK(R[2] == 0);  // R(u3) = u1
  CHECK(R[3] == 2);  // R(u4) = u3
  CHECK(R[4] == 2);  // R(u5) = u3
  CHECK(R[5] == 4);  // R(u6) = u5
  CHECK(R[6] == 5);  // R(u7) = u6
}

TEST_CASE("responsible_map basics and tie-break") {
  const Network two({{0, 0}, {3, 0}}, 2.0, 1.0, 0);
  const auto r2 = responsible_map(two, Schedule{{{0, 9.0}}});
  CHECK(r2[1] == 0);

  // node 2 equidistant from transmitters 0 and 1: tie goes to the earlier
  const Network tri({{0, 0}, {2, 0}, {1, 0.5}}, 2.0, 1.0, 0);
  const auto rt = responsible_map(tri, Schedule{{{0, 5.0}, {1, 5.0}}});
  CHECK(rt[2] == 0);

  // malformed: source not first
  CHECK_THROWS_AS(responsible_map(tri, Schedule{{{1, 5.0}, {0, 5.0}}}),
                  std::invalid_argument);
}

TEST_CASE("build_disks radii") {
  const Network two({{0, 0}, {3, 0}}, 2.0, 1.0, 0);
  const auto disks = build_disks(two, responsible_map(two, Schedule{{{0, 9.0}}}));
  REQUIRE(disks.size() == 1);
  CHECK(disks[0].center == 1);
  CHECK(disks[0].radius == doctest::Approx(3.0));
  CHECK(disks[0].radius_sq == doctest::Approx(9.0));

  // walkthrough network: one disk per non-source node
  const Network net = sample7();
  CHECK(build_disks(net, responsible_map(net, sample7_coop())).size() == 6);

  // grid, all nodes transmitting outward: nearest earlier transmitter is an
  // adjacent node, so every radius is the lattice spacing
  const GridNetwork g = build_grid(3, 1.0, 0, 2.0);
  const Schedule all = grid_all_nodes(g);
  for (const auto& d : build_disks(g.net, responsible_map(g.net, all)))
    CHECK(d.radius == doctest::Approx(1.0));
}

TEST_CASE("select_independent greedy rules") {
  const Network net({{0, 0}, {1, 0}, {4, 0}}, 2.0, 1.0, 0);

  // one disk
  CHECK(select_independent(net, {{1, 2.0, 4.0}}) == std::vector<NodeId>{1});

  // two disjoint disks radii 2 and 1 (center distance 4 > 3): both, larger
  // first regardless of the input order
  const Network far({{0, 0}, {1, 0}, {5, 0}}, 2.0, 1.0, 0);
  CHECK(select_independent(far, {{2, 1.0, 1.0}, {1, 2.0, 4.0}}) ==
        std::vector<NodeId>{1, 2});

  // tangent disks (center distance 3 = 2 + 1): only the larger survives
  CHECK(select_independent(net, {{1, 2.0, 4.0}, {2, 1.0, 1.0}}) ==
        std::vector<NodeId>{1});

  // radius tie -> smaller center id first
  CHECK(select_independent(far, {{2, 1.0, 1.0}, {1, 1.0, 1.0}}) ==
        std::vector<NodeId>{1, 2});

  CHECK_THROWS_AS(select_independent(net, {}), std::invalid_argument);
}

TEST_CASE("winner_of") {
  const Network two({{0, 0}, {3, 0}}, 2.0, 1.0, 0);
  const Schedule coop{{{0, 9.0}}};
  const auto disks = build_disks(two, responsible_map(two, coop));
  const auto [s_set, w] = winner_of(two, coop, disks, 1);
  CHECK(s_set == std::vector<NodeId>{0});
  CHECK(w == 0);

  // disk whose only <=-radius intersecting disk is itself: node 1's disk
  // (radius 1) meets node 2's disk, but that one is larger and filtered out
  const Network tri({{0, 0}, {1, 0}, {10, 0}}, 2.0, 1.0, 0);
  const Schedule c2{{{0, 100.0}, {1, 100.0}}};
  const auto d2 = build_disks(tri, responsible_map(tri, c2));
  const auto [s2, w2] = winner_of(tri, c2, d2, 1);
  CHECK(s2 == std::vector<NodeId>{0});  // just R(1)
  CHECK(w2 == 0);
}

TEST_CASE("assign_powers uses max semantics") {
  const Network net({{0, 0}, {1, 0}, {8, 0}}, 2.0, 1.0, 0);
  const std::vector<Disk> disks{{1, 1.0, 1.0}, {2, 2.0, 4.0}};
  const auto powers = assign_powers(net, {2, 1}, {0, 0}, disks);
  CHECK(powers[0] == doctest::Approx(100.0));  // max(100, 25), never 125
  CHECK(powers[1] == 0.0);
  CHECK(powers[2] == 0.0);

  const auto one = assign_powers(net, {1}, {0}, disks);
  CHECK(one[0] == doctest::Approx(25.0));  // (5*1)^2
}

TEST_CASE("convert on the walkthrough network reproduces the trace") {
  const Network net = sample7();
  const auto [sched, trace] = convert(net, sample7_coop());

  CHECK(trace.selected == std::vector<NodeId>{6, 1, 3});
  REQUIRE(trace.winners.size() == 3);
  CHECK(trace.winners[0] == 0);
  CHECK(trace.winners[1] == 0);
  CHECK(trace.winners[2] == 2);
  CHECK(trace.s_sets[0] == std::vector<NodeId>{0, 2, 4, 5});
  CHECK(trace.s_sets[2] == std::vector<NodeId>{2});

  // transmitting set {u1, u3}, u1 first; powers (5 r7)^2 and (5 r4)^2
  REQUIRE(sched.entries.size() == 2);
  CHECK(sched.entries[0].node == 0);
  CHECK(sched.entries[1].node == 2);
  const double r7_sq = net.distance_sq(6, 5);
  const double r4_sq = net.distance_sq(3, 2);
  CHECK(sched.entries[0].power == doctest::Approx(25.0 * r7_sq));
  CHECK(sched.entries[1].power == doctest::Approx(25.0 * r4_sq));

  CHECK(check_noncooperative(net, sched, 0.0).all_delivered);
}

TEST_CASE("convert smallest case and input validation") {
  const Network two({{0, 0}, {3, 0}}, 2.0, 1.0, 0);
  const auto [sched, trace] = convert(two, Schedule{{{0, 9.0}}});
  REQUIRE(sched.entries.size() == 1);
  CHECK(sched.entries[0].node == 0);
  CHECK(sched.entries[0].power == doctest::Approx(225.0));
  CHECK(check_noncooperative(two, sched, 0.0).all_delivered);

  // non-delivering input rejected
  CHECK_THROWS_AS(convert(two, Schedule{{{0, 1.0}}}), std::invalid_argument);
}

TEST_CASE("convert properties across random networks") {
  for (int variant = 0; variant < 3; ++variant) {
    for (int n : {5, 20, 50}) {
      for (double alpha : {2.0, 3.0}) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
          PlacementSpec spec;
          spec.seed = seed * 31 + variant;
          if (variant == 0)
            spec.kind = UniformDiskPlacement{n, 1.0};
          else if (variant == 1)
            spec.kind = GaussianPlacement{n, 0.6};
          else
            spec.kind = ClusteredPlacement{n, 3, 0.25};
          const Network net =
              sample_placement(spec, alpha, SourceRule::Fixed(0));
          const Schedule coop = greedy_filling(net);
          // verify=true throws if the output misses full delivery
          const auto [out, trace] = convert(net, coop);

          // Remark 2: output transmitters are a subset of input transmitters
          std::set<NodeId> coop_tx;
          for (const auto& e : coop.entries) coop_tx.insert(e.node);
          for (const auto& e : out.entries)
            CHECK(coop_tx.count(e.node) == 1);

          // Remark 1: total <= sum over selected of (5r)^alpha, equality iff
          // winners are pairwise distinct
          double bound = 0.0;
          std::vector<double> rsq(net.size(), 0.0);
          for (const auto& d : trace.disks) rsq[d.center] = d.radius_sq;
          for (NodeId c : trace.selected)
            bound += dist_pow_from_dsq(25.0 * rsq[c], alpha);
          const double total = total_power(out);
          CHECK(total <= bound * (1.0 + 1e-12));
          std::set<NodeId> winner_set(trace.winners.begin(),
                                      trace.winners.end());
          if (winner_set.size() == trace.winners.size())
            CHECK(total == doctest::Approx(bound));

          // selected disks: strict pairwise separation; every unselected
          // disk overlaps some selected disk
          for (std::size_t i = 0; i < trace.selected.size(); ++i)
            for (std::size_t j = i + 1; j < trace.selected.size(); ++j) {
              const double reach = std::sqrt(rsq[trace.selected[i]]) +
                                   std::sqrt(rsq[trace.selected[j]]);
              CHECK(net.distance(trace.selected[i], trace.selected[j]) >
                    reach);
            }
          for (const auto& d : trace.disks) {
            if (std::find(trace.selected.begin(), trace.selected.end(),
                          d.center) != trace.selected.end())
              continue;
            bool overlaps = false;
            for (NodeId c : trace.selected) {
              const double reach = d.radius + std::sqrt(rsq[c]);
              if (net.distance_sq(d.center, c) <= reach * reach) {
                overlaps = true;
                break;
              }
            }
            CHECK(overlaps);
          }

          // determinism
          const auto [out2, trace2] = convert(net, coop);
          REQUIRE(out2.entries.size() == out.entries.size());
          for (std::size_t i = 0; i < out.entries.size(); ++i) {
            CHECK(out2.entries[i].node == out.entries[i].node);
            CHECK(out2.entries[i].power == out.entries[i].power);
          }
          CHECK(trace2.selected == trace.selected);
          CHECK(trace2.winners == trace.winners);
        }
      }
    }
  }
}
