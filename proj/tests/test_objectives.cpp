#include <catch2/catch_amalgamated.hpp>

#include "fairdiv/fixtures.hpp"
#include "fairdiv/objectives.hpp"
#include "helpers.hpp"

using namespace fairdiv;

TEST_CASE("agent statistics golden values") {
  Instance skewed = fixtures::skewed_two_agents();
  Distribution d_min = fixtures::skewed_min_lottery();

  AgentStats second = agent_stats(skewed, d_min, 1);
  REQUIRE(second.mean == 50);
  REQUIRE(second.variance == 600);

  AgentStats first = agent_stats(skewed, d_min, 0);
  REQUIRE(first.mean == Rational(2400, 31));
  REQUIRE(first.variance == Rational(1382400, 961));

  AgentStats point = agent_stats(skewed, point_mass(Allocation{{1, 0}}), 0);
  REQUIRE(point.mean == 96);
  REQUIRE(point.variance == 0);
}

TEST_CASE("two-atom lotteries follow the bernoulli variance formula") {
  SplitMix64 rng(127);
  for (int round = 0; round < 40; ++round) {
    int m = 1 + static_cast<int>(rng.in_range(0, 4));
    Instance inst = testutil::random_instance(rng, 2, m, 0, 50, false);
    Allocation a = testutil::random_allocation(rng, 2, m);
    Allocation b = testutil::random_allocation(rng, 2, m);
    if (a == b) continue;
    Rational p(BigInt(rng.in_range(1, 9)), 10);
    Distribution dist = normalize_support({{a, p}, {b, 1 - p}});
    for (int i = 0; i < 2; ++i) {
      Rational va = bundle_value(inst, i, agent_bundle(a, i));
      Rational vb = bundle_value(inst, i, agent_bundle(b, i));
      Rational gap = va - vb;
      REQUIRE(agent_stats(inst, dist, i).variance == p * (1 - p) * gap * gap);
    }
  }
}

TEST_CASE("objective golden values") {
  Instance skewed = fixtures::skewed_two_agents();
  Distribution d_min = fixtures::skewed_min_lottery();
  Distribution d_good = fixtures::skewed_balanced_lottery();

  REQUIRE(std::get<Rational>(evaluate(skewed, d_good, ObjectiveKind::SoV)) == 2260);
  REQUIRE(std::get<Rational>(evaluate(skewed, d_min, ObjectiveKind::SoV)) ==
          Rational(1959000, 961));
  REQUIRE(std::get<Rational>(evaluate(skewed, d_good, ObjectiveKind::VoV)) == 972196);
  REQUIRE(std::get<Rational>(evaluate(skewed, d_min, ObjectiveKind::VoV)) ==
          Rational(402900, 961) * Rational(402900, 961));
  REQUIRE(std::get<Rational>(evaluate(skewed, d_good, ObjectiveKind::MaxVar)) == 2116);
  REQUIRE(std::get<Rational>(evaluate(skewed, d_min, ObjectiveKind::MaxVar)) ==
          Rational(1382400, 961));
  REQUIRE(std::get<Rational>(evaluate(skewed, d_good, ObjectiveKind::StdOfStds)) == 17);

  Instance stds = fixtures::stds_two_agents();
  REQUIRE(std::get<Rational>(evaluate(stds, fixtures::stds_balanced_lottery(),
                                      ObjectiveKind::SumOfStds)) == 45);
  auto f_value = evaluate(stds, fixtures::stds_min_lottery(), ObjectiveKind::SumOfStds);
  const auto& interval = std::get<CertifiedReal>(f_value);
  REQUIRE(interval.upper < 42);
  REQUIRE(interval.lower > 41);
}

TEST_CASE("sovor equals sov scaled by the squared common total") {
  Instance skewed = fixtures::skewed_two_agents();
  Distribution d_good = fixtures::skewed_balanced_lottery();
  REQUIRE(std::get<Rational>(evaluate(skewed, d_good, ObjectiveKind::SoVoR)) ==
          Rational(2260) / (100 * 100));

  SplitMix64 rng(131);
  for (int round = 0; round < 20; ++round) {
    int m = 1 + static_cast<int>(rng.in_range(0, 3));
    Instance inst = testutil::random_instance(rng, 2, m, 1, 30, true);
    Distribution dist = testutil::random_distribution(rng, 2, m, 2);
    Rational c = *is_normalized(inst);
    REQUIRE(std::get<Rational>(evaluate(inst, dist, ObjectiveKind::SoVoR)) ==
            std::get<Rational>(evaluate(inst, dist, ObjectiveKind::SoV)) / (c * c));
  }
}

TEST_CASE("sovor requires positive totals") {
  Instance inst;
  inst.num_agents = 2;
  inst.num_goods = 1;
  inst.values = {{1}, {0}};
  REQUIRE_THROWS_AS(evaluate(inst, point_mass(Allocation{{0}}), ObjectiveKind::SoVoR),
                    DomainError);
}

TEST_CASE("two identical agents: sum of variances is twice either variance") {
  SplitMix64 rng(137);
  for (int round = 0; round < 25; ++round) {
    int m = 1 + static_cast<int>(rng.in_range(0, 5));
    Instance inst = testutil::random_instance(rng, 2, m, 0, 40, true);
    Distribution dist = testutil::random_distribution(rng, 2, m, 3);
    Rational phi = std::get<Rational>(evaluate(inst, dist, ObjectiveKind::SoV));
    REQUIRE(phi == 2 * agent_stats(inst, dist, 0).variance);
    REQUIRE(phi == 2 * agent_stats(inst, dist, 1).variance);
  }
}

TEST_CASE("distance form of the sum of variances") {
  Instance inst = fixtures::identical_three_agents();
  SECTION("uniform cyclic family over the distance minimizer") {
    Allocation base{{2, 1, 1, 0, 0, 0}};
    std::vector<std::pair<Allocation, Rational>> entries;
    for (auto& shift : cyclic_shifts(base, 3)) entries.emplace_back(shift, Rational(1, 3));
    Distribution dist = normalize_support(std::move(entries));
    REQUIRE(sov_distance_form(inst, dist) == 46050);
    REQUIRE(std::get<Rational>(evaluate(inst, dist, ObjectiveKind::SoV)) == 46050);
  }
  SECTION("uniform cyclic family over the mms allocation") {
    Allocation base{{0, 1, 2, 2, 1, 0}};
    std::vector<std::pair<Allocation, Rational>> entries;
    for (auto& shift : cyclic_shifts(base, 3)) entries.emplace_back(shift, Rational(1, 3));
    REQUIRE(sov_distance_form(inst, normalize_support(std::move(entries))) == 46464);
  }
  SECTION("point mass on a proportional allocation") {
    Instance pair;
    pair.num_agents = 2;
    pair.num_goods = 2;
    pair.values.assign(2, {5, 5});
    REQUIRE(sov_distance_form(pair, point_mass(Allocation{{0, 1}})) == 0);
  }
  SECTION("preconditions are reported") {
    REQUIRE_THROWS_AS(
        sov_distance_form(fixtures::skewed_two_agents(), fixtures::skewed_min_lottery()),
        DomainError);
    REQUIRE_THROWS_AS(sov_distance_form(inst, point_mass(Allocation{{0, 0, 0, 0, 0, 0}})),
                      DomainError);
  }
}

TEST_CASE("distance form matches direct evaluation on proportional mixtures") {
  SplitMix64 rng(139);
  for (int round = 0; round < 20; ++round) {
    int n = 2 + static_cast<int>(rng.in_range(0, 2));
    int m = 1 + static_cast<int>(rng.in_range(0, 4));
    Instance inst = testutil::random_instance(rng, n, m, 0, 30, true);
    Distribution dist = testutil::random_proportional_mixture(rng, inst);
    REQUIRE(check_exante_proportional(inst, dist));
    REQUIRE(std::get<Rational>(evaluate(inst, dist, ObjectiveKind::SoV)) ==
            sov_distance_form(inst, dist));
  }
}

TEST_CASE("max-var sandwiches the sum of variances") {
  SplitMix64 rng(149);
  for (int round = 0; round < 25; ++round) {
    int n = 2 + static_cast<int>(rng.in_range(0, 2));
    int m = 1 + static_cast<int>(rng.in_range(0, 3));
    Instance inst = testutil::random_instance(rng, n, m, 0, 30, false);
    Distribution dist = testutil::random_distribution(rng, n, m, 3);
    Rational max_var = std::get<Rational>(evaluate(inst, dist, ObjectiveKind::MaxVar));
    Rational sov = std::get<Rational>(evaluate(inst, dist, ObjectiveKind::SoV));
    REQUIRE(max_var <= sov);
    REQUIRE(sov <= n * max_var);
  }
}

TEST_CASE("certified intervals") {
  SECTION("exact square roots collapse to points") {
    REQUIRE(*exact_sqrt(Rational(2116)) == 46);
    REQUIRE(*exact_sqrt(Rational(9, 4)) == Rational(3, 2));
    REQUIRE_FALSE(exact_sqrt(Rational(2)));
    REQUIRE(certified_sqrt(Rational(144), 64).is_exact());
  }
  SECTION("sqrt bounds enclose and tighten") {
    CertifiedReal two = certified_sqrt(Rational(2), 32);
    REQUIRE(two.lower * two.lower <= 2);
    REQUIRE(two.upper * two.upper >= 2);
    REQUIRE(two.lower < two.upper);
    CertifiedReal finer = certified_sqrt(Rational(2), 128);
    REQUIRE(contains(two, finer));
  }
  SECTION("refinement at 256 bits nests inside the evaluation interval") {
    Instance skewed = fixtures::skewed_two_agents();
    Limits coarse, fine;
    coarse.bits = 128;
    fine.bits = 256;
    auto wide = std::get<CertifiedReal>(
        evaluate(skewed, fixtures::skewed_min_lottery(), ObjectiveKind::StdOfStds, coarse));
    auto narrow = std::get<CertifiedReal>(
        evaluate(skewed, fixtures::skewed_min_lottery(), ObjectiveKind::StdOfStds, fine));
    REQUIRE(contains(wide, narrow));
    REQUIRE(narrow.upper - narrow.lower <= wide.upper - wide.lower);
    REQUIRE(wide.upper < 7);
  }
  SECTION("formatting") {
    REQUIRE(format_certified(CertifiedReal{Rational(1, 3), Rational(1, 2), 128}) ==
            "[1/3, 1/2] @128");
  }
}

TEST_CASE("comparisons") {
  Instance skewed = fixtures::skewed_two_agents();
  Distribution d_min = fixtures::skewed_min_lottery();
  Distribution d_good = fixtures::skewed_balanced_lottery();

  REQUIRE(compare(skewed, d_min, d_good, ObjectiveKind::SoV).order == Ordering::Less);
  REQUIRE(compare(skewed, d_good, d_min, ObjectiveKind::SoV).order == Ordering::Greater);
  REQUIRE(compare(skewed, d_min, d_good, ObjectiveKind::MaxVar).order == Ordering::Less);
  REQUIRE(compare(skewed, d_min, d_good, ObjectiveKind::VoV).order == Ordering::Less);
  REQUIRE(compare(skewed, d_min, d_good, ObjectiveKind::StdOfStds).order == Ordering::Less);

  Instance stds = fixtures::stds_two_agents();
  REQUIRE(compare(stds, fixtures::stds_min_lottery(), fixtures::stds_balanced_lottery(),
                  ObjectiveKind::SumOfStds)
              .order == Ordering::Less);

  SECTION("reflexivity across all kinds") {
    for (ObjectiveKind kind :
         {ObjectiveKind::SoV, ObjectiveKind::SoVoR, ObjectiveKind::MaxVar, ObjectiveKind::VoV,
          ObjectiveKind::StdOfStds, ObjectiveKind::SumOfStds}) {
      REQUIRE(compare(skewed, d_min, d_min, kind).order == Ordering::Equal);
    }
  }
  SECTION("equal variances give an exact zero spread") {
    REQUIRE(*fairdiv::detail::exact_objective(ObjectiveKind::StdOfStds,
                                              {Rational(8), Rational(8)}) == 0);
    REQUIRE(fairdiv::detail::compare_variances(ObjectiveKind::StdOfStds, {Rational(8), Rational(8)},
                                               {Rational(0), Rational(0)}, {})
                .order == Ordering::Equal);
  }
  SECTION("equal radicand multisets settle without escalation") {
    // Swapping which agent carries which variance leaves both objectives
    // unchanged; the multiset certificate decides this even when the bit
    // budget would never separate anything.
    Limits tiny;
    tiny.bits = 4;
    tiny.max_bits = 4;
    REQUIRE(fairdiv::detail::compare_variances(ObjectiveKind::SumOfStds, {Rational(2), Rational(8)},
                                               {Rational(8), Rational(2)}, tiny)
                .order == Ordering::Equal);
    REQUIRE(fairdiv::detail::compare_variances(ObjectiveKind::StdOfStds, {Rational(2), Rational(8)},
                                               {Rational(8), Rational(2)}, tiny)
                .order == Ordering::Equal);
  }
  SECTION("undecided comparisons report their intervals") {
    // sqrt(8) + sqrt(0) equals sqrt(2) + sqrt(2) as a real number, but the
    // radicand multisets differ, so escalation can never separate the sides.
    Limits capped;
    capped.bits = 16;
    capped.max_bits = 256;
    auto result = fairdiv::detail::compare_variances(ObjectiveKind::SumOfStds, {Rational(8), Rational(0)},
                                                     {Rational(2), Rational(2)}, capped);
    REQUIRE(result.order == Ordering::Undecided);
    REQUIRE(result.intervals.has_value());
    REQUIRE(result.intervals->first.lower <= result.intervals->second.upper);
  }
}
