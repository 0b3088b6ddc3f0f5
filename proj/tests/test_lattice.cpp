#include <doctest.h>

#include <random>
#include <stdexcept>

#include "smallworld/lattice.hpp"

using namespace smallworld;

TEST_CASE("manhattan distance") {
  CHECK(manhattan({0, 0}, {3, 4}) == 7);
  CHECK(manhattan({2, 5}, {2, 5}) == 0);
  CHECK(manhattan({0, 0}, {3, 3}) == diameter(4));
  CHECK(diameter(4) == 6);
}

TEST_CASE("manhattan is a metric on random triples") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> coord(0, 999);
  for (int i = 0; i < 20000; ++i) {
    const Coord a{coord(rng), coord(rng)}, b{coord(rng), coord(rng)}, c{coord(rng), coord(rng)};
    CHECK(manhattan(a, b) >= 0);
    CHECK((manhattan(a, b) == 0) == (a == b));
    CHECK(manhattan(a, b) == manhattan(b, a));
    CHECK(manhattan(a, c) <= manhattan(a, b) + manhattan(b, c));
  }
}

TEST_CASE("local_step follows the x-first rule") {
  CHECK(local_step({0, 0}, {10, 10}, 1) == Coord{1, 0});
  CHECK(local_step({0, 0}, {10, 0}, 3) == Coord{3, 0});
  CHECK(local_step({5, 5}, {5, 6}, 2) == Coord{5, 6});
  CHECK(local_step({4, 4}, {5, 9}, 3) == Coord{5, 6});
  CHECK(local_step({9, 9}, {0, 2}, 4) == Coord{5, 9});
}

TEST_CASE("local_step lowers the distance by min(p, d) and stays in the grid") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20000; ++i) {
    const std::int64_t n = std::uniform_int_distribution<std::int64_t>(2, 60)(rng);
    const std::int64_t p = std::uniform_int_distribution<std::int64_t>(1, n - 1)(rng);
    std::uniform_int_distribution<std::int64_t> coord(0, n - 1);
    const Coord cur{coord(rng), coord(rng)}, target{coord(rng), coord(rng)};
    if (cur == target) continue;
    const Coord next = local_step(cur, target, p);
    CHECK(in_grid(next, n));
    CHECK(manhattan(next, target) == std::max<std::int64_t>(0, manhattan(cur, target) - p));
    CHECK(manhattan(cur, next) == std::min(p, manhattan(cur, target)));
  }
}

TEST_CASE("neighborhood size of the six-degrees scenarios") {
  CHECK(neighborhood_size(1, 600) == 604);
  CHECK(neighborhood_size(10, 380) == 600);
  CHECK(neighborhood_size(15, 120) == 600);
}

TEST_CASE("GridParams validation") {
  CHECK_NOTHROW((GridParams{2, 0.0, 1, 1}.validate()));
  CHECK_THROWS_AS((GridParams{1, 2.0, 1, 1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((GridParams{8, -0.5, 1, 1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((GridParams{8, 2.0, 0, 1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((GridParams{8, 2.0, 8, 1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((GridParams{8, 2.0, 1, 0}.validate()), std::invalid_argument);
}
