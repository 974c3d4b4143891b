#include <catch2/catch_amalgamated.hpp>

#include "fairdiv/fixtures.hpp"
#include "helpers.hpp"

using namespace fairdiv;

namespace {

// The six goods of the three-agent study, 0-based: a b c d e f.
std::multiset<std::vector<int>> partition_of(const Allocation& alloc, int n) {
  std::multiset<std::vector<int>> bundles;
  for (int i = 0; i < n; ++i) bundles.insert(agent_bundle(alloc, i));
  return bundles;
}

}  // namespace

TEST_CASE("allocation space counts and order") {
  auto four = all_allocations(2, 2);
  REQUIRE(four.size() == 4);
  REQUIRE(four.front() == Allocation{{0, 0}});
  REQUIRE(four.back() == Allocation{{1, 1}});
  REQUIRE(std::is_sorted(four.begin(), four.end()));

  REQUIRE(all_allocations(3, 6).size() == 729);
  REQUIRE(all_allocations(1, 5).size() == 1);
  REQUIRE(all_allocations(2, 0).size() == 1);

  std::set<Allocation> distinct(four.begin(), four.end());
  REQUIRE(distinct.size() == 4);
}

TEST_CASE("symmetry reduction keeps one representative per relabeling class") {
  auto reduced = all_allocations(2, 2, {}, true);
  REQUIRE(reduced == std::vector<Allocation>{Allocation{{0, 0}}, Allocation{{0, 1}}});
  REQUIRE(all_allocations(3, 3, {}, true).size() == 5);  // restricted growth strings of length 3

  // The reduced space still reaches the orbit-invariant minimum distance.
  Instance inst = fixtures::identical_three_agents();
  std::optional<Rational> best;
  for (const auto& a : all_allocations(3, 6, {}, true)) {
    Rational d = distance_sq_to_ps(inst, a);
    if (!best || d < *best) best = d;
  }
  REQUIRE(*best == 46050);
}

TEST_CASE("allocation stream respects the state cap") {
  Limits tight;
  tight.max_states = 100;
  REQUIRE_THROWS_AS(AllocationStream(3, 20, tight), ResourceLimitError);
  REQUIRE_THROWS_AS(all_allocations(2, 30, tight), ResourceLimitError);
}

TEST_CASE("incremental totals agree with value_vector") {
  SplitMix64 rng(101);
  for (int round = 0; round < 10; ++round) {
    Instance inst = testutil::random_instance(rng, 1 + static_cast<int>(rng.in_range(0, 2)),
                                              static_cast<int>(rng.in_range(0, 5)), 0, 20, false);
    for_each_allocation_with_totals(inst, {}, [&](const Allocation& alloc,
                                                  const std::vector<Rational>& totals) {
      REQUIRE(totals == value_vector(inst, alloc));
    });
  }
}

TEST_CASE("squared distance to the proportional point") {
  Instance inst = fixtures::identical_three_agents();
  REQUIRE(distance_sq_to_ps(inst, Allocation{{2, 1, 1, 0, 0, 0}}) == 46050);
  // (1176,912,912) against (1000)^3: 176^2 + 88^2 + 88^2.
  REQUIRE(distance_sq_to_ps(inst, Allocation{{0, 1, 2, 2, 1, 0}}) == 46464);
  REQUIRE_THROWS_AS(distance_sq_to_ps(fixtures::skewed_two_agents(), Allocation{{0, 1}}),
                    DomainError);
}

TEST_CASE("three-agent study: distance minimizers") {
  Instance inst = fixtures::identical_three_agents();
  auto records = min_distance_allocations(inst, false);
  REQUIRE(records.size() == 6);
  std::multiset<std::vector<int>> expected{{3, 4, 5}, {1, 2}, {0}};
  std::set<ValueVector> vectors;
  for (const auto& rec : records) {
    REQUIRE(rec.dist_sq == 46050);
    REQUIRE(partition_of(rec.alloc, 3) == expected);
    vectors.insert(rec.vector);
  }
  REQUIRE(vectors.size() == 6);  // all rotations of (1095, 1080, 825) are distinct
  REQUIRE(std::is_sorted(records.begin(), records.end(),
                         [](const auto& a, const auto& b) { return a.alloc < b.alloc; }));
}

TEST_CASE("three-agent study: mms-restricted minimizers") {
  Instance inst = fixtures::identical_three_agents();
  auto records = min_distance_allocations(inst, true);
  // The mms-fair partition is unique; its two 912-bundles make only three
  // distinct value vectors across the six assignments.
  REQUIRE(records.size() == 6);
  std::multiset<std::vector<int>> expected{{0, 5}, {1, 4}, {2, 3}};
  std::set<ValueVector> vectors;
  for (const auto& rec : records) {
    REQUIRE(rec.dist_sq == 46464);
    REQUIRE(partition_of(rec.alloc, 3) == expected);
    vectors.insert(rec.vector);
  }
  REQUIRE(vectors.size() == 3);
  REQUIRE(records.front().dist_sq > min_distance_allocations(inst, false).front().dist_sq);
}

TEST_CASE("restriction can only raise the minimum") {
  SplitMix64 rng(103);
  for (int round = 0; round < 15; ++round) {
    Instance inst = testutil::random_instance(rng, 3, 1 + static_cast<int>(rng.in_range(0, 4)), 1,
                                              30, true);
    auto full = min_distance_allocations(inst, false);
    auto restricted = min_distance_allocations(inst, true);
    REQUIRE_FALSE(restricted.empty());
    REQUIRE(restricted.front().dist_sq >= full.front().dist_sq);
  }
}

TEST_CASE("single identical good splits both ways") {
  Instance inst;
  inst.num_agents = 2;
  inst.num_goods = 1;
  inst.values.assign(2, {6});
  auto records = min_distance_allocations(inst, false);
  REQUIRE(records.size() == 2);
  REQUIRE(records[0].dist_sq == 18);  // 6^2 / 2
  REQUIRE(records[1].dist_sq == 18);
}

TEST_CASE("difference-minimizing partitions") {
  SECTION("three goods") {
    auto ties = difference_minimizing_partitions({3, 1, 1});
    REQUIRE(ties == std::vector<Allocation>{Allocation{{0, 1, 1}}, Allocation{{1, 0, 0}}});
  }
  SECTION("identical pair") {
    auto ties = difference_minimizing_partitions({5, 5});
    REQUIRE(ties == std::vector<Allocation>{Allocation{{0, 1}}, Allocation{{1, 0}}});
  }
  SECTION("eleven unit goods split 5/6") {
    auto ties = difference_minimizing_partitions(std::vector<Rational>(11, Rational(1)));
    REQUIRE(ties.size() == 924);  // C(11,5) + C(11,6)
    for (const auto& alloc : ties) {
      int ones = 0;
      for (int o : alloc.owner) ones += o;
      REQUIRE((ones == 5 || ones == 6));
    }
  }
}

TEST_CASE("two identical agents: difference minimizers equal distance minimizers") {
  SplitMix64 rng(107);
  for (int round = 0; round < 20; ++round) {
    Instance inst = testutil::random_instance(
        rng, 2, 1 + static_cast<int>(rng.in_range(0, 11)), 0, 99, true);
    auto by_difference = difference_minimizing_partitions(inst.values[0]);
    std::set<Allocation> diff_set(by_difference.begin(), by_difference.end());
    REQUIRE(diff_set == testutil::allocation_set(min_distance_allocations(inst, false)));
  }
}

TEST_CASE("distance minimizers of positive identical instances are efx") {
  SplitMix64 rng(109);
  for (int round = 0; round < 15; ++round) {
    int n = 2 + static_cast<int>(rng.in_range(0, 1));
    Instance inst =
        testutil::random_instance(rng, n, 1 + static_cast<int>(rng.in_range(0, 5)), 1, 50, true);
    for (const auto& rec : min_distance_allocations(inst, false))
      REQUIRE(check_fairness(inst, rec.alloc, FairnessCriterion::efx()));
  }
}

TEST_CASE("minimizer mms ratios respect the efx floors") {
  SplitMix64 rng(113);
  for (int round = 0; round < 10; ++round) {
    Instance inst3 =
        testutil::random_instance(rng, 3, 3 + static_cast<int>(rng.in_range(0, 3)), 1, 40, true);
    for (const auto& rec : min_distance_allocations(inst3, false)) {
      auto ratio = mms_ratio(inst3, rec.alloc);
      if (ratio.ratio) REQUIRE(*ratio.ratio >= Rational(2, 3));
    }
    Instance inst4 =
        testutil::random_instance(rng, 4, 4 + static_cast<int>(rng.in_range(0, 2)), 1, 40, true);
    for (const auto& rec : min_distance_allocations(inst4, false)) {
      auto ratio = mms_ratio(inst4, rec.alloc);
      if (ratio.ratio) REQUIRE(*ratio.ratio >= Rational(4, 7));
    }
  }
}

TEST_CASE("csv export of distance records") {
  Instance inst;
  inst.num_agents = 2;
  inst.num_goods = 1;
  inst.values.assign(2, {6});
  auto csv = records_to_csv(min_distance_allocations(inst, false), 2);
  REQUIRE(csv ==
          "allocation,v_1,v_2,dist_sq\n"
          "1,6,0,18\n"
          "2,0,6,18\n");
}
