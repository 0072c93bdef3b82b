#include <doctest.h>

#include <array>
#include <string>
#include <vector>

#include "callctl/adversary.hpp"
#include "callctl/error.hpp"
#include "callctl/ledger.hpp"
#include "callctl/online_algs.hpp"
#include "instances.hpp"
#include "oracles.hpp"

using namespace callctl;

namespace {

std::vector<Frequency> accepted_frequencies(const RunTrace& trace) {
  std::vector<Frequency> out;
  for (const Step& s : trace.steps()) {
    if (s.outcome.accepted()) out.push_back(s.outcome.frequency());
  }
  return out;
}

std::vector<CellId> repeat(CellId c, int n) { return std::vector<CellId>(n, c); }

}  // namespace

TEST_CASE("algorithm selectors") {
  CHECK(parse_algorithm("greedy").kind == AlgorithmKind::Greedy);
  CHECK(parse_algorithm("caco").kind == AlgorithmKind::Caco);
  CHECK(parse_algorithm("caco2").kind == AlgorithmKind::Caco2);
  const auto p = parse_algorithm("partition:3:1");
  CHECK(p.kind == AlgorithmKind::PartitionFamily);
  CHECK(p.x_share == 3);
  CHECK(p.y_share == 1);
  CHECK(to_string(p) == "partition:3:1");
  CHECK_THROWS_AS(parse_algorithm("partition:0:1"), ConfigError);
  CHECK_THROWS_AS(parse_algorithm("partition:2"), ConfigError);
  CHECK_THROWS_AS(parse_algorithm("fastest"), ConfigError);

  CHECK(omega_divisor(parse_algorithm("caco")) == 7);
  CHECK(omega_divisor(parse_algorithm("caco2")) == 3);
  CHECK(omega_divisor(parse_algorithm("greedy")) == 1);
  CHECK(smallest_valid_omega(parse_algorithm("caco"), 9) == 14);
  CHECK(smallest_valid_omega(parse_algorithm("partition:1:1"), 9) == 12);
  CHECK_THROWS_AS(check_omega(parse_algorithm("caco2"), 10), DivisibilityError);
}

TEST_CASE("greedy_next") {
  const Network net({{0, 0}, {1, 0}});
  AssignmentState s(net, 5);
  CHECK(greedy_next(s, {0, 0}) == Outcome::accept(1));
  s.assign(CellId{0, 0}, 1);
  s.assign(CellId{0, 0}, 2);
  CHECK(greedy_next(s, {1, 0}) == Outcome::accept(3));
  for (int f = 3; f <= 5; ++f) s.assign(CellId{1, 0}, f);
  CHECK(greedy_next(s, {0, 0}) == Outcome::reject());
  CHECK(greedy_next(s, {1, 0}) == Outcome::reject());
}

TEST_CASE("caco_next") {
  const auto caco = parse_algorithm("caco");
  const Network one({{0, 0}});
  const auto trace = run_sequence(caco, one, 21, repeat({0, 0}, 10));
  CHECK(accepted_frequencies(trace) ==
        std::vector<Frequency>{1, 2, 3, 4, 5, 6, 19, 20, 21});
  CHECK_FALSE(trace.steps().back().outcome.accepted());

  const auto partition = make_partition_caco(21);
  {
    const Network g({{1, 0}});
    AssignmentState s(g, 21);
    for (int f = 7; f <= 12; ++f) s.assign(CellId{1, 0}, f);
    CHECK(caco_next(s, partition, {1, 0}) == Outcome::accept(19));
  }
  {
    const Network pair({{1, 0}, {0, 0}});
    AssignmentState s(pair, 21);
    for (int f = 7; f <= 12; ++f) s.assign(CellId{1, 0}, f);
    for (int f = 19; f <= 21; ++f) s.assign(CellId{0, 0}, f);
    CHECK(caco_next(s, partition, {1, 0}) == Outcome::reject());
  }
}

TEST_CASE("partition family") {
  const Network one({{0, 0}});
  CHECK(run_sequence(parse_algorithm("partition:1:1"), one, 4, repeat({0, 0}, 4))
            .total_accepted() == 2);
  CHECK(run_sequence(parse_algorithm("partition:3:1"), one, 10, repeat({0, 0}, 10))
            .total_accepted() == 4);

  // 2:1 is CACO on every sequence.
  const std::array<int, 1> omegas{21};
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const auto inst = testing::random_instance(seed, omegas, false);
    const auto a = run_sequence(parse_algorithm("caco"), inst.network, 21, inst.requests);
    const auto b =
        run_sequence(parse_algorithm("partition:2:1"), inst.network, 21, inst.requests);
    REQUIRE(a.steps().size() == b.steps().size());
    for (std::size_t k = 0; k < a.steps().size(); ++k) {
      REQUIRE(a.steps()[k].outcome == b.steps()[k].outcome);
    }
  }
}

TEST_CASE("caco2_next examples") {
  const auto caco2 = parse_algorithm("caco2");
  const Network lone({{0, 0}});
  const auto iso = run_sequence(caco2, lone, 9, repeat({0, 0}, 10));
  CHECK(iso.total_accepted() == 9);
  CHECK_FALSE(iso.steps().back().outcome.accepted());

  const auto star = star_network();
  const auto center = run_sequence(caco2, star, 9, repeat({0, 0}, 7));
  CHECK(accepted_frequencies(center) == std::vector<Frequency>{1, 2, 3, 7, 8, 9});

  const Network two({{0, 0}, {1, 0}, {-1, 0}});
  const auto spill = run_sequence(caco2, two, 9, repeat({0, 0}, 7));
  CHECK(accepted_frequencies(spill) == std::vector<Frequency>{1, 2, 3, 6, 5, 4});

  CHECK_THROWS_AS(run_sequence(caco2, flower_network(), 9, repeat({0, 0}, 1)),
                  ContractViolation);
}

TEST_CASE("caco2 color-case table") {
  const std::array<Color, 3> colors{Color::R, Color::G, Color::B};
  for (Color x : colors) {
    CHECK_FALSE(caco2_overflow(x, Isolated{}).has_value());
    for (Color y : colors) {
      if (y == x) continue;
      const Color z = third_color(x, y);
      for (int k = 2; k <= 3; ++k) {
        const auto o = caco2_overflow(x, StructureA{y, k});
        REQUIRE(o.has_value());
        CHECK(o->target == z);
        CHECK(o->direction ==
              (successor(x) == y ? Direction::BottomToTop : Direction::TopToBottom));
      }
      const auto single = caco2_overflow(x, StructureA{y, 1});
      REQUIRE(single.has_value());
      CHECK(*single == Overflow{successor(x), Direction::TopToBottom});
    }
    const auto b = caco2_overflow(x, StructureB{successor(x), predecessor(x)});
    REQUIRE(b.has_value());
    CHECK(*b == Overflow{successor(x), Direction::TopToBottom});
  }
  CHECK_THROWS_AS(caco2_overflow(Color::R, General{6}), ContractViolation);
}

TEST_CASE("run_sequence bookkeeping") {
  const auto caco = parse_algorithm("caco");
  const auto empty = run_sequence(caco, star_network(), 21, {});
  CHECK(empty.total_accepted() == 0);
  CHECK(empty.total_demand() == 0);

  const auto star = star_network();
  std::vector<CellId> requests = repeat({0, 0}, 21);
  const auto phase1 = run_sequence(caco, star, 21, requests);
  CHECK(phase1.tally(star.index_of({0, 0})).accepted == 9);
  for (CellId c : {CellId{1, 0}, CellId{0, -1}, CellId{-1, 1}}) {
    const auto more = repeat(c, 21);
    requests.insert(requests.end(), more.begin(), more.end());
  }
  const auto full = run_sequence(caco, star, 21, requests);
  CHECK(full.total_accepted() == 27);
  CHECK(full.total_demand() == 84);

  const std::vector<CellId> bad{{0, 0}, {1, 0}, {4, 4}};
  try {
    run_sequence(caco, star, 21, bad);
    FAIL("expected UnknownCellError");
  } catch (const UnknownCellError& e) {
    const std::string what = e.what();
    CHECK(what.find("request 2") != std::string::npos);
    CHECK(what.find("(4,4)") != std::string::npos);
  }
}

TEST_CASE("property: every algorithm matches the reference simulator") {
  struct Case {
    const char* algorithm;
    std::vector<int> omegas;
    bool triangle_free;
  };
  const std::vector<Case> cases{
      {"greedy", {1, 2, 5, 9}, false},
      {"caco", {7, 14, 21}, false},
      {"partition:1:1", {4, 8, 12}, false},
      {"partition:3:1", {10, 20}, false},
      {"partition:1:2", {5, 10}, false},
      {"caco2", {3, 6, 9, 12}, true},
      {"greedy", {3, 6}, true},
  };
  for (const Case& c : cases) {
    const auto spec = parse_algorithm(c.algorithm);
    for (std::uint64_t seed = 1; seed <= 150; ++seed) {
      const auto inst = testing::random_instance(seed, c.omegas, c.triangle_free);
      const auto cells = inst.network->cells();
      oracle::ReferenceSimulator ref({cells.begin(), cells.end()}, inst.omega,
                                     c.algorithm);
      Simulator sim(spec, inst.network, inst.omega);
      for (CellId cell : inst.requests) {
        const int expected = ref.submit(cell);
        const Outcome got = sim.submit(cell);
        REQUIRE_MESSAGE(got == (expected ? Outcome::accept(expected) : Outcome::reject()),
                        c.algorithm << " seed " << seed);
      }
      REQUIRE(sim.trace().state().is_interference_free());
      const auto tallies = sim.trace().tallies();
      for (std::size_t i = 0; i < cells.size(); ++i) {
        REQUIRE(tallies[i].accepted == static_cast<int>(ref.used(i).size()));
        REQUIRE(tallies[i].accepted <= tallies[i].demand);
      }
    }
  }
}

TEST_CASE("property: determinism and greedy maximality") {
  const std::array<int, 3> omegas{3, 5, 8};
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto inst = testing::random_instance(seed, omegas, false);
    const auto spec = parse_algorithm("greedy");
    const auto a = run_sequence(spec, inst.network, inst.omega, inst.requests);
    const auto b = run_sequence(spec, inst.network, inst.omega, inst.requests);
    CHECK(a.accepted() == b.accepted());

    Simulator sim(spec, inst.network, inst.omega);
    for (CellId cell : inst.requests) {
      const auto before = sim.trace().state();
      if (!sim.submit(cell).accepted()) {
        for (int f = 1; f <= inst.omega; ++f) REQUIRE_FALSE(before.is_available(cell, f));
      }
    }
  }
}

TEST_CASE("property: per-trace facts hold") {
  const std::array<int, 3> caco_omegas{7, 14, 21};
  const std::array<int, 3> caco2_omegas{3, 9, 12};
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    const auto a = testing::random_instance(seed, caco_omegas, false);
    const auto caco = run_sequence(parse_algorithm("caco"), a.network, a.omega, a.requests);
    REQUIRE(check_own_range_fact(caco).passed);
    REQUIRE(check_shared_exhaustion_fact(caco).passed);

    const auto b = testing::random_instance(seed, caco2_omegas, true);
    REQUIRE(check_opposite_ends(
                run_sequence(parse_algorithm("caco2"), b.network, b.omega, b.requests))
                .passed);
    // A CACO2 cell only leaves its own range once nothing there is available.
    const auto p = make_partition_caco2(b.omega);
    Simulator sim(parse_algorithm("caco2"), b.network, b.omega);
    for (CellId cell : b.requests) {
      const auto before = sim.trace().state();
      const Outcome o = sim.submit(cell);
      if (!o.accepted()) continue;
      const FrequencyRange own = p.range(color_of(cell));
      if (!own.contains(o.frequency()) &&
          !std::holds_alternative<Isolated>(classify_neighbor_config(*b.network, cell))) {
        REQUIRE_FALSE(before.first_available(cell, own, Direction::BottomToTop));
      }
    }
  }
}
