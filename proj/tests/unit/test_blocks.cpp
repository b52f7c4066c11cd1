#include <doctest.h>

#include "fixtures.hpp"
#include "houghton/errors.hpp"

using namespace houghton;
using namespace fixtures;

TEST_CASE("block size bound is the lattice index") {
  CHECK(block_size_bound(Lattice::zero_sum(4)) == 1);
  CHECK(block_size_bound(translation_lattice(delta_k(3, 2))) == 4);
  CHECK(block_size_bound(translation_lattice(delta_k(4, 3))) == 27);
  CHECK(block_size_bound(Lattice(3, {{1, 2, -3}, {2, 1, -3}})) == 3);
  CHECK(block_size_bound(translation_lattice(pair_group())) == 2);
  CHECK_THROWS_AS(block_size_bound(Lattice(3, {{1, -1, 0}})), InvalidInput);
}

TEST_CASE("verification of block systems") {
  auto v = verify_block_system(pair_group(), pair_blocks(), 40);
  CHECK(v.valid());
  CHECK(v.proper);
  CHECK(v.words_checked > 10);

  auto d2 = delta_k(3, 2);
  CHECK(verify_block_system(d2, singleton_blocks(d2, 40), 40).valid());
  auto h3 = houghton_group(3);
  CHECK(verify_block_system(h3, singleton_blocks(h3, 40), 40).valid());

  auto bad = verify_block_system(houghton_group(2), {{{{1, 0}, {2, 0}}}}, 40);
  CHECK_FALSE(bad.valid());
  CHECK_FALSE(bad.equivariant);
  CHECK_FALSE(bad.witness.empty());

  // Two blocks in one orbit.
  CHECK_FALSE(verify_block_system(pair_group(), {{{{1, 0}, {1, 1}}, {{1, 2}, {1, 3}}}}, 40).orbit_incidence);
  // Overlapping blocks.
  CHECK_FALSE(verify_block_system(d2, {{{{1, 0}}, {{1, 0}, {1, 1}}}}, 40).disjoint);
}

TEST_CASE("translates of the pair block") {
  TranslateCongruence c(pair_group(), pair_blocks(), 40);
  CHECK(c.consistent());
  CHECK(c.covered_depth() >= 40);
  for (const auto& t : c.translates()) {
    REQUIRE(t.size() == 2);
    CHECK(t[0].ray == t[1].ray);
    CHECK(t[0].pos % 2 == 0);
    CHECK(t[1].pos == t[0].pos + 1);
  }
  CHECK(c.multi_ray_count() == 0);
}

TEST_CASE("block search") {
  auto pg = pair_group();
  const auto e = block_size_bound(translation_lattice(pg));
  auto found = find_block_systems(pg, 40, e);
  REQUIRE(found.systems.size() == 1);
  CHECK(found.systems[0] == pair_blocks());
  for (const auto& s : found.systems)
    for (const auto& b : s.blocks) CHECK(static_cast<std::int64_t>(b.size()) <= e);

  auto d2 = delta_k(3, 2);
  CHECK(find_block_systems(d2, 40, block_size_bound(translation_lattice(d2))).systems.empty());
  CHECK(find_block_systems(houghton_group(3), 40, 1).systems.empty());
  CHECK(find_block_systems(houghton_group(3), 40, 1).window_caveat);
}

TEST_CASE("quotient of the pair block system") {
  auto pg = pair_group();
  QuotientStructure q(pg, pair_blocks(), 60);
  CHECK(q.extent()[0] >= 30);
  CHECK(q.extent()[1] >= 30);
  // Classes are ordered by least element.
  for (std::size_t k = 1; k < q.classes().size(); ++k) CHECK(q.classes()[k - 1].front() < q.classes()[k].front());
  CHECK(q.induced_generators()[0] == Element::generator(2, 2));
  CHECK(q.induced_generators()[1].is_identity());
  CHECK(q.induced_generators()[2] == Element::transposition(2, {1, 0}, {1, 1}));
  CHECK(translation_lattice(GeneratedSubgroup(2, q.induced_generators())) == Lattice::zero_sum(2));
  CHECK(q.kernel_finitary());
  CHECK(q.kernel_words() > 1);
  for (const auto& we : ball(pg, 3))
    for (const auto& we2 : ball(pg, 2)) CHECK(q.induce(we.element * we2.element) == q.induce(we.element) * q.induce(we2.element));
}

TEST_CASE("singleton quotient reproduces the action") {
  auto h3 = houghton_group(3);
  QuotientStructure q(h3, singleton_blocks(h3, 40), 40);
  for (std::size_t k = 0; k < h3.generators.size(); ++k) CHECK(q.induced_generators()[k] == h3.generators[k]);
  CHECK_THROWS_AS(q.induce(Element::generator(2, 2)), InvalidInput);
}

TEST_CASE("inference needs enough window") {
  auto shift = [](const RayPoint& p) -> std::optional<RayPoint> { return RayPoint{p.ray, p.pos}; };
  CHECK(infer_element(2, {10, 10}, shift).is_identity());
  CHECK_THROWS_AS(infer_element(2, {2, 10}, shift), Inconclusive);
  auto drift = [](const RayPoint& p) -> std::optional<RayPoint> { return RayPoint{p.ray, p.pos + 1}; };
  CHECK_THROWS_AS(infer_element(2, {10, 10}, drift), Inconclusive);
}
