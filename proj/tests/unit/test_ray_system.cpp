#include <doctest.h>

#include <random>

#include "houghton/errors.hpp"
#include "houghton/ray_system.hpp"

using namespace houghton;

TEST_CASE("lex order compares ray first") {
  RaySystem sys(3);
  CHECK(sys.lex_compare({1, 5}, {2, 0}) == std::strong_ordering::less);
  CHECK(sys.lex_compare({2, 3}, {2, 3}) == std::strong_ordering::equal);
  CHECK(sys.lex_compare({3, 0}, {2, 999}) == std::strong_ordering::greater);
  CHECK_THROWS_AS(sys.lex_compare({4, 0}, {1, 0}), InvalidInput);
  CHECK_THROWS_AS(sys.lex_compare({1, -1}, {1, 0}), InvalidInput);
}

TEST_CASE("deletion iso closes gaps ray by ray") {
  const RayPoint f1[] = {{1, 0}};
  DeletionIso iso(2, f1);
  for (std::int64_t k = 1; k < 20; ++k) CHECK(iso.forward({1, k}) == RayPoint{1, k - 1});
  for (std::int64_t k = 0; k < 20; ++k) CHECK(iso.forward({2, k}) == RayPoint{2, k});
  CHECK_THROWS_AS(iso.forward({1, 0}), InvalidInput);

  DeletionIso id(3, {});
  CHECK(id.forward({2, 7}) == RayPoint{2, 7});

  const RayPoint f2[] = {{2, 0}, {2, 1}};
  DeletionIso iso2(3, f2);
  CHECK(iso2.forward({2, 2}) == RayPoint{2, 0});
  CHECK(iso2.forward({2, 10}) == RayPoint{2, 8});
  CHECK(iso2.forward({1, 4}) == RayPoint{1, 4});
  CHECK(iso2.forward({3, 4}) == RayPoint{3, 4});
}

TEST_CASE("deletion iso round trip and order preservation") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    std::vector<RayPoint> f;
    for (int k = 0; k < 6; ++k) f.push_back({1 + static_cast<int>(rng() % n), static_cast<std::int64_t>(rng() % 12)});
    DeletionIso iso(n, f);
    Window w(n, 30);
    std::vector<RayPoint> kept;
    for (const auto& p : w.points()) {
      if (iso.deleted(p)) continue;
      kept.push_back(p);
      CHECK(iso.inverse(iso.forward(p)) == p);
    }
    for (const auto& q : Window(n, 20).points()) CHECK(iso.forward(iso.inverse(q)) == q);
    for (int k = 0; k < 1000; ++k) {
      const auto& p = kept[rng() % kept.size()];
      const auto& q = kept[rng() % kept.size()];
      CHECK((p <=> q) == (iso.forward(p) <=> iso.forward(q)));
    }
  }
}

TEST_CASE("window indexing") {
  Window w(3, 5);
  CHECK(w.size() == 15);
  for (std::int64_t i = 0; i < w.size(); ++i) CHECK(w.index(w.point(i)) == i);
  CHECK_FALSE(w.contains({1, 5}));
}
