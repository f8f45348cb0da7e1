#include <numeric>

#include "helpers.hpp"

using namespace seedsim;

TEST_CASE("seed budgets derive from fractions with a floor of one") {
  REQUIRE(SeedBudget::from_fraction(2000, 0.05).budget == 100);
  REQUIRE(SeedBudget::from_fraction(10, 0.04).budget == 1);  // rounds to zero, floored
  REQUIRE(SeedBudget::from_fraction(10, 1.0).budget == 10);
  REQUIRE(SeedBudget::from_fraction(2000, 0.05).sp == 0.05);
  REQUIRE_THROWS_AS(SeedBudget::from_fraction(10, 0.0), InputError);
  REQUIRE_THROWS_AS(SeedBudget::from_fraction(10, 1.2), InputError);
  REQUIRE_THROWS_AS(SeedBudget::from_count(0), InputError);
}

TEST_CASE("next_seed returns the best inactive node") {
  Ranking r = th::ranking_of({2, 0, 1});
  std::vector<std::uint8_t> active(3, 0);
  REQUIRE(next_seed(r, active) == NodeId{2});
  active[2] = active[0] = 1;
  REQUIRE(next_seed(r, active) == NodeId{1});
  active[1] = 1;
  REQUIRE_FALSE(next_seed(r, active).has_value());
}

TEST_CASE("next_seed cursor never rescans skipped nodes") {
  Ranking r = th::ranking_of({0, 1, 2, 3});
  std::vector<std::uint8_t> active{1, 1, 0, 0};
  std::size_t cursor = 0;
  REQUIRE(next_seed(r, active, cursor) == NodeId{2});
  active[2] = 1;
  REQUIRE(next_seed(r, active, cursor) == NodeId{3});
  REQUIRE(cursor == 3);
}

TEST_CASE("seeding decisions follow the schedule definitions") {
  SECTION("ss spends everything once") {
    SeedBudget b = SeedBudget::from_count(5);
    REQUIRE(seeding_decision(SeedingMode::SS, 0, b) == 5);
    b.remaining = 0;
    REQUIRE(seeding_decision(SeedingMode::SS, 0, b) == 0);
  }
  SECTION("sq is unconditional while funded") {
    SeedBudget b = SeedBudget::from_count(2);
    REQUIRE(seeding_decision(SeedingMode::Sq, 7, b) == 1);
    REQUIRE(seeding_decision(SeedingMode::Sq, 0, b) == 1);
    b.remaining = 0;
    REQUIRE(seeding_decision(SeedingMode::Sq, 0, b) == 0);
  }
  SECTION("rsq waits for the plateau") {
    SeedBudget b = SeedBudget::from_count(3);
    REQUIRE(seeding_decision(SeedingMode::RSq, 4, b) == 0);
    REQUIRE(seeding_decision(SeedingMode::RSq, 0, b) == 1);
    b.remaining = 0;
    REQUIRE(seeding_decision(SeedingMode::RSq, 0, b) == 0);
  }
  SECTION("bsq banks credit and spends it all on the plateau") {
    SeedBudget b = SeedBudget::from_count(10);
    std::vector<std::size_t> injections;
    for (std::size_t naturals : {5u, 3u, 2u, 0u}) {
      injections.push_back(seeding_decision(SeedingMode::BSq, naturals, b));
    }
    REQUIRE(injections == std::vector<std::size_t>{0, 0, 0, 4});
    REQUIRE(b.buffer_credit == 0);
  }
  SECTION("bsq credit is capped by the remaining budget") {
    SeedBudget b = SeedBudget::from_count(2);
    REQUIRE(seeding_decision(SeedingMode::BSq, 1, b) == 0);
    REQUIRE(seeding_decision(SeedingMode::BSq, 1, b) == 0);
    REQUIRE(seeding_decision(SeedingMode::BSq, 1, b) == 0);
    REQUIRE(b.buffer_credit == 2);
    REQUIRE(seeding_decision(SeedingMode::BSq, 0, b) == 2);
  }
}

TEST_CASE("mode names round-trip") {
  for (SeedingMode m : {SeedingMode::SS, SeedingMode::Sq, SeedingMode::RSq, SeedingMode::BSq}) {
    REQUIRE(seeding_mode_from_string(to_string(m)) == m);
  }
  REQUIRE_THROWS_AS(seeding_mode_from_string("simultaneous"), InputError);
  REQUIRE_FALSE(is_sequential(SeedingMode::SS));
  REQUIRE(is_sequential(SeedingMode::BSq));
}

TEST_CASE("with pp=0 every mode covers exactly the budget") {
  Rng grng = StreamKey(12).rng();
  Graph g = th::random_graph(grng, 30, 3.0);
  Ranking rk = rank_nodes(g, RankStrategy::Degree);
  for (SeedingMode mode :
       {SeedingMode::SS, SeedingMode::Sq, SeedingMode::RSq, SeedingMode::BSq}) {
    Rng rng = StreamKey(1).rng();
    RunResult r = run_strategy(g, rk, mode, SeedBudget::from_count(4), 0.0, rng);
    REQUIRE(r.active_count == 4);
    REQUIRE(r.natural_count == 0);
    REQUIRE(r.seeds_used.size() == 4);
  }
}

TEST_CASE("sq run with pp=0 stages one seed at a time") {
  Graph g = th::graph_of(6, {{0, 1}, {2, 3}, {4, 5}});
  Rng rng = StreamKey(2).rng();
  RunResult r = run_strategy(g, th::ranking_of({0, 1, 2, 3, 4, 5}), SeedingMode::Sq,
                             SeedBudget::from_count(3), 0.0, rng);
  std::size_t one_seed_rows = 0;
  for (const StageRecord& rec : r.log) {
    if (rec.seeded_count == 1) ++one_seed_rows;
  }
  REQUIRE(one_seed_rows == 3);
  REQUIRE(r.duration() == 2);
  REQUIRE(r.peak_stage() == 2);
}

TEST_CASE("ss places the whole budget at stage 0") {
  Rng grng = StreamKey(13).rng();
  Graph g = th::random_graph(grng, 40, 3.0);
  Ranking rk = rank_nodes(g, RankStrategy::Degree);
  Rng rng = StreamKey(3).rng();
  RunResult r = run_strategy(g, rk, SeedingMode::SS, SeedBudget::from_count(5), 0.3, rng);
  REQUIRE(r.log[0].seeded_count == 5);
  for (std::size_t i = 1; i < r.log.size(); ++i) REQUIRE(r.log[i].seeded_count == 0);
  // the ss seed set is exactly the ranking prefix
  for (std::size_t i = 0; i < 5; ++i) {
    REQUIRE(r.seeds_used[i] == std::pair<std::size_t, NodeId>{0, rk.order[i]});
  }
}

TEST_CASE("with pp=1 a single ss seed floods its component in eccentricity stages") {
  SECTION("path graph") {
    Graph path = th::graph_of(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    Ranking rk = rank_nodes(path, RankStrategy::Degree);
    REQUIRE(rk.order.front() == 1);  // degree tie broken by id
    Rng rng = StreamKey(4).rng();
    RunResult r = run_strategy(path, rk, SeedingMode::SS, SeedBudget::from_count(1), 1.0, rng);
    REQUIRE(r.coverage_total() == 1.0);
    REQUIRE(r.duration() == th::bfs_eccentricity(path, 1));
  }
  SECTION("random connected graph") {
    Rng grng = StreamKey(5).rng();
    Graph g = generate_ba({.n = 80, .m = 2}, grng);
    Ranking rk = rank_nodes(g, RankStrategy::PageRank);
    Rng rng = StreamKey(6).rng();
    RunResult r = run_strategy(g, rk, SeedingMode::SS, SeedBudget::from_count(1), 1.0, rng);
    REQUIRE(r.coverage_total() == 1.0);
    REQUIRE(r.duration() == th::bfs_eccentricity(g, rk.order.front()));
    REQUIRE(r.peak_stage() == r.duration());
  }
}

TEST_CASE("run_strategy validates its inputs") {
  Graph g = th::graph_of(3, {{0, 1}, {1, 2}});
  Ranking rk = th::ranking_of({0, 1, 2});
  Rng rng = StreamKey(1).rng();
  REQUIRE_THROWS_AS(run_strategy(g, rk, SeedingMode::Sq, SeedBudget::from_count(4), 0.5, rng),
                    InputError);
  REQUIRE_THROWS_AS(run_strategy(g, rk, SeedingMode::Sq, SeedBudget::from_count(2), 1.5, rng),
                    InputError);
  REQUIRE_THROWS_AS(
      run_strategy(g, th::ranking_of({0, 1}), SeedingMode::Sq, SeedBudget::from_count(2), 0.5, rng),
      InputError);
  LiveEdgeSample wrong;
  wrong.live.assign(3, 0);
  REQUIRE_THROWS_AS(run_strategy(g, rk, SeedingMode::Sq, SeedBudget::from_count(2), wrong),
                    InputError);
}

TEST_CASE("schedule bookkeeping holds across random runs") {
  Rng rng = StreamKey(41).rng();
  for (int trial = 0; trial < 60; ++trial) {
    Graph g = th::random_graph(rng, 10 + uniform_below(rng, 40), 3.0);
    Ranking rk = rank_nodes(g, RankStrategy::Random, &rng);
    const std::size_t budget = 1 + uniform_below(rng, g.node_count());
    const double pp = uniform01(rng);
    for (SeedingMode mode : {SeedingMode::Sq, SeedingMode::RSq, SeedingMode::BSq}) {
      RunResult r = run_strategy(g, rk, mode, SeedBudget::from_count(budget), pp, rng);

      REQUIRE(r.seeds_used.size() <= budget);
      REQUIRE(r.active_count == r.natural_count + r.seeds_used.size());
      REQUIRE(r.active_count <= g.node_count());

      std::size_t cumulative = 0;
      for (const StageRecord& rec : r.log) {
        cumulative += rec.natural_count + rec.seeded_count;
        REQUIRE(rec.cumulative_active == cumulative);
        if (mode == SeedingMode::RSq) REQUIRE(rec.seeded_count <= 1);
        if (mode != SeedingMode::BSq) REQUIRE(rec.buffer_credit == 0);
      }
      REQUIRE(cumulative == r.active_count);

      // a run that never saturates must spend the whole budget
      if (r.active_count < g.node_count()) REQUIRE(r.seeds_used.size() == budget);

      // sq seeds exactly one per stage until the budget runs out
      if (mode == SeedingMode::Sq) {
        for (const StageRecord& rec : r.log) {
          if (rec.stage < budget && rec.cumulative_active < g.node_count()) {
            REQUIRE(rec.seeded_count == 1);
          }
        }
      }
    }
  }
}

TEST_CASE("coupled sequential runs reach exactly the closure of their seeds") {
  Rng rng = StreamKey(43).rng();
  for (int trial = 0; trial < 60; ++trial) {
    Graph g = th::random_graph(rng, 10 + uniform_below(rng, 40), 3.0);
    Ranking rk = rank_nodes(g, RankStrategy::Random, &rng);
    LiveEdgeSample sample = sample_live_edges(g, uniform01(rng), rng);
    const std::size_t budget = 1 + uniform_below(rng, g.node_count());
    for (SeedingMode mode : {SeedingMode::Sq, SeedingMode::RSq, SeedingMode::BSq}) {
      RunResult r = run_strategy(g, rk, mode, SeedBudget::from_count(budget), sample);
      std::vector<NodeId> seeds;
      for (const auto& [stage, node] : r.seeds_used) seeds.push_back(node);
      REQUIRE(r.final_active == reachable_coverage(g, sample, seeds));
    }
  }
}

TEST_CASE("coupled sequential coverage dominates single stage") {
  Rng rng = StreamKey(47).rng();
  for (int trial = 0; trial < 100; ++trial) {
    Graph g = th::random_graph(rng, 10 + uniform_below(rng, 60), 3.0);
    Ranking rk = rank_nodes(g, RankStrategy::Random, &rng);
    LiveEdgeSample sample = sample_live_edges(g, uniform01(rng), rng);
    SeedBudget budget = SeedBudget::from_count(1 + uniform_below(rng, g.node_count()));
    RunResult ss = run_strategy(g, rk, SeedingMode::SS, budget, sample);
    for (SeedingMode mode : {SeedingMode::Sq, SeedingMode::RSq, SeedingMode::BSq}) {
      RunResult seq = run_strategy(g, rk, mode, budget, sample);
      REQUIRE(seq.active_count >= ss.active_count);
    }
  }
}

TEST_CASE("the 6-node coupled fixture reproduces its hand trace") {
  // two live chains: 0->2->3 and 4->5; ranking prefers 0, 2, 4
  Graph g = th::graph_of(6, {{0, 2}, {2, 3}, {4, 5}});
  LiveEdgeSample sample = th::sample_of(g, {{0, 2}, {2, 3}, {4, 5}});
  Ranking rk = th::ranking_of({0, 2, 4, 1, 3, 5});
  SeedBudget budget = SeedBudget::from_count(2);

  RunResult ss = run_strategy(g, rk, SeedingMode::SS, budget, sample);
  REQUIRE(ss.active_count == 3);  // seeds 0,2 plus natural 3
  REQUIRE(ss.duration() == 1);
  REQUIRE(ss.seeds_used ==
          std::vector<std::pair<std::size_t, NodeId>>{{0, 0}, {0, 2}});

  RunResult seq = run_strategy(g, rk, SeedingMode::Sq, budget, sample);
  REQUIRE(seq.active_count == 5);  // 0 -> 2 -> 3 naturally, second seed lands on 4
  REQUIRE(seq.duration() == 2);
  REQUIRE(seq.seeds_used ==
          std::vector<std::pair<std::size_t, NodeId>>{{0, 0}, {1, 4}});
  REQUIRE(seq.natural_count == 3);
}
