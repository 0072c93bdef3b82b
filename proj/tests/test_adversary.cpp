#include <doctest.h>

#include <memory>
#include <vector>

#include "callctl/adversary.hpp"
#include "callctl/error.hpp"
#include "callctl/harness.hpp"
#include "callctl/offline_opt.hpp"

using namespace callctl;

namespace {

struct Duel {
  int online = 0;
  int opt = 0;
  int center = 0;
  int phases = 0;
};

Duel duel(const AdversaryScenario& scenario, const char* algorithm) {
  const auto played = play(scenario, parse_algorithm(algorithm));
  Duel d;
  d.online = played.trace.total_accepted();
  d.opt = exact_optimum(*scenario.network, scenario.omega, played.trace.demands()).total;
  d.center = played.trace.tally(scenario.network->index_of({0, 0})).accepted;
  d.phases = static_cast<int>(played.checkpoints.size());
  return d;
}

}  // namespace

TEST_CASE("star and flower") {
  const auto star = star_network();
  CHECK(star.size() == 4);
  CHECK(star.degree(star.index_of({0, 0})) == 3);
  CHECK(is_triangle_free(star));
  CHECK(flower_network().size() == 7);
}

TEST_CASE("fig2 adversary") {
  const auto caco = duel(fig2_adversary(21), "caco");
  CHECK(caco.online == 27);
  CHECK(caco.opt == 63);
  CHECK(caco.center == 9);
  CHECK(caco.phases == 2);

  const auto half = duel(fig2_adversary(4), "partition:1:1");
  CHECK(half.online == 5);
  CHECK(half.opt == 12);

  const auto greedy = duel(fig2_adversary(21), "greedy");
  CHECK(greedy.online == 21);
  CHECK(greedy.opt == 63);
}

TEST_CASE("fig3 adversary") {
  const auto caco2 = duel(fig3_adversary(9), "caco2");
  CHECK(caco2.center == 6);
  CHECK(caco2.online == 15);
  CHECK(caco2.opt == 27);
  CHECK(caco2.phases == 2);

  const auto greedy = duel(fig3_adversary(9), "greedy");
  CHECK(greedy.online == 9);
  CHECK(greedy.opt == 27);
}

TEST_CASE("fig3 stops when the center accepts at most 3 omega / 5") {
  // 1:2 at omega 10 gives the center 2 own + 4 shared = 6 = 3 omega / 5.
  const auto scenario = fig3_adversary(10);
  const auto played = play(scenario, parse_algorithm("partition:1:2"));
  REQUIRE(played.checkpoints.size() == 1);
  const int x = played.trace.total_accepted();
  CHECK(x == 6);
  CHECK(5 * x <= 3 * scenario.omega);
  // OPT = omega on the single phase, so the ratio omega / x reaches 5/3.
  const int opt =
      exact_optimum(*scenario.network, scenario.omega, played.trace.demands()).total;
  CHECK(opt == 10);
  CHECK(Rational(opt, x) >= Rational(5, 3));
}

TEST_CASE("fig2 matches the partition-family formula") {
  const std::vector<std::pair<int, int>> shares{{1, 1}, {2, 1}, {3, 1}, {4, 1},
                                                {5, 1}, {6, 1}, {1, 2}, {1, 3}};
  for (auto [x, y] : shares) {
    const int unit = 3 * x + y;
    const int omega = 2 * unit;
    const auto spec = "partition:" + std::to_string(x) + ":" + std::to_string(y);
    const auto scenario = fig2_adversary(omega);
    const auto played = play(scenario, parse_algorithm(spec));
    Rational worst(0);
    for (const Checkpoint& c : played.checkpoints) {
      const int opt = exact_optimum(*scenario.network, omega, c.demands).total;
      worst = std::max(worst, Rational(opt, c.online_total));
    }
    CHECK_MESSAGE(worst == fig2_partition_ratio(x, y), spec);
  }
  CHECK(fig2_partition_ratio(2, 1) == Rational(7, 3));
  CHECK(fig2_partition_ratio(1, 1) == Rational(12, 5));
}

TEST_CASE("host networks") {
  const auto flower = std::make_shared<const Network>(flower_network());
  const auto scenario = fig2_adversary(21, flower);
  CHECK(scenario.network->size() == 7);
  const auto played = play(scenario, parse_algorithm("caco"));
  CHECK(played.trace.total_demand() == 84);

  const auto missing = std::make_shared<const Network>(Network({{0, 0}, {1, 0}}));
  CHECK_THROWS_AS(fig3_adversary(9, missing), UnknownCellError);
}

TEST_CASE("selectors") {
  CHECK_NOTHROW(validate_adversary_selector("fig2"));
  CHECK_NOTHROW(validate_adversary_selector("random:4:10"));
  CHECK_THROWS_AS(validate_adversary_selector("random:4"), ConfigError);
  CHECK_THROWS_AS(validate_adversary_selector("random:x:10"), ConfigError);
  CHECK_THROWS_AS(validate_adversary_selector("fig4"), ConfigError);
  CHECK_THROWS_AS(make_adversary("random:1:5", 7), ContractViolation);
}

TEST_CASE("random_sequence") {
  const auto flower = flower_network();
  CHECK(random_sequence(flower, 0, 3).empty());
  CHECK(random_sequence(flower, 50, 3) == random_sequence(flower, 50, 3));
  CHECK(random_sequence(flower, 50, 3) != random_sequence(flower, 50, 4));

  const std::vector<int> weights{0, 0, 0, 1, 0, 0, 0};
  for (CellId c : random_sequence(flower, 40, 9, weights)) {
    CHECK(c == flower.cell(3));
  }

  // Regression snapshot: per-cell counts and the first twelve draws.
  const auto seq = random_sequence(flower, 200, 2024);
  REQUIRE(seq.size() == 200);
  std::vector<int> counts(flower.size(), 0);
  for (CellId c : seq) ++counts[flower.index_of(c)];
  const std::vector<CellId> head(seq.begin(), seq.begin() + 12);
  std::string head_text;
  for (CellId c : head) head_text += to_string(c);
  CHECK(counts == std::vector<int>{35, 27, 36, 20, 31, 26, 25});
  CHECK(head_text == "(0,1)(0,-1)(0,1)(1,-1)(-1,1)(-1,0)(-1,1)(1,-1)(0,0)(-1,0)(-1,1)(1,-1)");
}
