#include <doctest.h>

#include <random>

#include "callctl/adversary.hpp"
#include "callctl/error.hpp"
#include "callctl/spectrum.hpp"

using namespace callctl;

TEST_CASE("caco partition") {
  const auto p = make_partition_caco(21);
  CHECK(p.range(Color::R) == FrequencyRange{1, 6});
  CHECK(p.range(Color::G) == FrequencyRange{7, 12});
  CHECK(p.range(Color::B) == FrequencyRange{13, 18});
  CHECK(p.shared() == FrequencyRange{19, 21});

  const auto small = make_partition_caco(7);
  CHECK(small.range(Color::R) == FrequencyRange{1, 2});
  CHECK(small.range(Color::G) == FrequencyRange{3, 4});
  CHECK(small.range(Color::B) == FrequencyRange{5, 6});
  CHECK(small.shared() == FrequencyRange{7, 7});

  CHECK_THROWS_AS(make_partition_caco(10), DivisibilityError);
  CHECK_THROWS_AS(make_partition_caco(0), DivisibilityError);
}

TEST_CASE("caco2 partition") {
  const auto p = make_partition_caco2(9);
  CHECK(p.range(Color::R) == FrequencyRange{1, 3});
  CHECK(p.range(Color::G) == FrequencyRange{4, 6});
  CHECK(p.range(Color::B) == FrequencyRange{7, 9});
  CHECK_FALSE(p.has_shared());

  const auto s = make_partition_caco2(3);
  CHECK(s.range(Color::R) == FrequencyRange{1, 1});
  CHECK(s.range(Color::G) == FrequencyRange{2, 2});
  CHECK(s.range(Color::B) == FrequencyRange{3, 3});

  CHECK_THROWS_AS(make_partition_caco2(8), DivisibilityError);
}

TEST_CASE("partition family") {
  const auto p = make_partition_family(10, 3, 1);
  CHECK(p.range(Color::R).size() == 3);
  CHECK(p.shared() == FrequencyRange{10, 10});
  CHECK_THROWS_AS(make_partition_family(10, 2, 1), DivisibilityError);
  CHECK_THROWS_AS(make_partition_family(10, 0, 1), ConfigError);
}

TEST_CASE("property: 2:2:2:1 sizes and exact cover for every omega up to 10^4") {
  for (int omega = 7; omega <= 10000; omega += 7) {
    const auto p = make_partition_caco(omega);
    const int unit = omega / 7;
    bool ok = p.range(Color::R).size() == 2 * unit &&
              p.range(Color::G).size() == 2 * unit &&
              p.range(Color::B).size() == 2 * unit && p.shared().size() == unit;
    // Consecutive, disjoint, covering 1..omega.
    ok = ok && p.range(Color::R).first == 1 &&
         p.range(Color::G).first == p.range(Color::R).last + 1 &&
         p.range(Color::B).first == p.range(Color::G).last + 1 &&
         p.shared().first == p.range(Color::B).last + 1 && p.shared().last == omega;
    REQUIRE(ok);
  }
  for (int omega = 3; omega <= 300; omega += 3) {
    const auto p = make_partition_caco2(omega);
    for (int f = 1; f <= omega; ++f) {
      int hits = 0;
      for (Color c : {Color::R, Color::G, Color::B}) hits += p.range(c).contains(f);
      REQUIRE(hits == 1);
    }
  }
}

TEST_CASE("is_available and assign") {
  const Network net({{0, 0}, {1, 0}, {3, 3}});
  AssignmentState s(net, 21);
  for (int f = 1; f <= 21; ++f) CHECK(s.is_available(CellId{0, 0}, f));

  s.assign(CellId{1, 0}, 5);
  CHECK_FALSE(s.is_available(CellId{0, 0}, 5));
  CHECK(s.is_available(CellId{3, 3}, 5));

  s.assign(CellId{0, 0}, 1);
  CHECK(s.count(net.index_of({0, 0})) == 1);
  CHECK_FALSE(s.is_available(CellId{0, 0}, 1));
  CHECK_THROWS_AS(s.assign(CellId{0, 0}, 1), ContractViolation);
  CHECK_THROWS_AS(s.assign(CellId{1, 0}, 1), ContractViolation);
  CHECK_THROWS_AS(s.assign(CellId{3, 3}, 22), ContractViolation);
  CHECK_THROWS_AS(s.assign(CellId{7, 7}, 2), UnknownCellError);
  CHECK(s.total() == 2);
}

TEST_CASE("first_available") {
  const Network net({{0, 0}, {1, 0}});
  AssignmentState s(net, 21);
  CHECK(s.first_available(CellId{0, 0}, {1, 6}, Direction::BottomToTop) == 1);
  CHECK(s.first_available(CellId{0, 0}, {4, 6}, Direction::TopToBottom) == 6);
  s.assign(CellId{1, 0}, 7);
  s.assign(CellId{1, 0}, 8);
  CHECK(s.first_available(CellId{0, 0}, {7, 12}, Direction::BottomToTop) == 9);
  for (int f = 9; f <= 12; ++f) s.assign(CellId{0, 0}, f);
  CHECK_FALSE(s.first_available(CellId{0, 0}, {7, 12}, Direction::BottomToTop));
}

TEST_CASE("property: random assigns stay interference-free; scans match brute force") {
  std::mt19937_64 rng(42);
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    const auto net = std::make_shared<const Network>(random_network(seed, 10, false));
    const int omega = 1 + static_cast<int>(rng() % 15);
    AssignmentState s(net, omega);
    for (int step = 0; step < 80; ++step) {
      const std::size_t cell = rng() % net->size();
      const Frequency f = 1 + static_cast<Frequency>(rng() % omega);
      if (s.is_available(cell, f)) {
        s.assign(cell, f);
      } else {
        CHECK_THROWS_AS(s.assign(cell, f), ContractViolation);
      }
      const int lo = 1 + static_cast<int>(rng() % omega);
      const int hi = lo + static_cast<int>(rng() % (omega - lo + 1));
      std::optional<Frequency> min_free, max_free;
      for (int g = lo; g <= hi; ++g) {
        if (s.is_available(cell, g)) {
          if (!min_free) min_free = g;
          max_free = g;
        }
      }
      CHECK(s.first_available(cell, {lo, hi}, Direction::BottomToTop) == min_free);
      CHECK(s.first_available(cell, {lo, hi}, Direction::TopToBottom) == max_free);
    }
    REQUIRE(s.is_interference_free());
    int sum = 0;
    for (std::size_t i = 0; i < net->size(); ++i) {
      CHECK(s.count(i) == static_cast<int>(s.frequencies(i).size()));
      sum += s.count(i);
    }
    CHECK(sum == s.total());
  }
}

TEST_CASE("slot_of and per-range counters add up") {
  const auto p = make_partition_caco(14);
  CHECK(p.slot_of(1) == Slot::R);
  CHECK(p.slot_of(5) == Slot::G);
  CHECK(p.slot_of(12) == Slot::B);
  CHECK(p.slot_of(13) == Slot::S);

  const Network net({{0, 0}});
  AssignmentState s(net, 14);
  for (int f : {1, 2, 6, 13}) s.assign(std::size_t{0}, f);
  int sum = 0;
  for (Slot slot : {Slot::R, Slot::G, Slot::B, Slot::S}) sum += s.count_in(0, p.range(slot));
  CHECK(sum == s.count(0));
}
