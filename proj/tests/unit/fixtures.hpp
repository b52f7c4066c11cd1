#pragma once

#include "houghton/blocks.hpp"
#include "houghton/subgroup.hpp"

namespace fixtures {

using namespace houghton;

// Preserves the pairs {(j,2m),(j,2m+1)} in H_2.
inline GeneratedSubgroup pair_group() {
  const RayPoint a[] = {{1, 0}, {1, 2}}, b[] = {{1, 1}, {1, 3}};
  return GeneratedSubgroup(2,
                           {Element::generator(2, 2).pow(2), Element::transposition(2, {1, 0}, {1, 1}),
                            Element::cycle(2, a) * Element::cycle(2, b)},
                           {"a", "s", "p"});
}

inline BlockSystem pair_blocks() { return {{{{1, 0}, {1, 1}}}}; }

inline BlockSystem singleton_blocks(const GeneratedSubgroup& g, std::int64_t w) {
  BlockSystem b;
  for (const auto& c : orbit_windows(g, w).classes) b.blocks.push_back({c.points.front()});
  return b;
}

}  // namespace fixtures

namespace fixtures {

// A subgroup of Delta_2 in H_3 preserving the pairs {(j,2m),(j,2m+1)}; each
// pair meets both parity orbits.
inline houghton::GeneratedSubgroup cross_pair_group() {
  using namespace houghton;
  const RayPoint a[] = {{1, 0}, {1, 2}}, b[] = {{1, 1}, {1, 3}};
  return GeneratedSubgroup(3, {residue_shift(3, 2, 2), residue_shift(3, 3, 2), Element::cycle(3, a) * Element::cycle(3, b)},
                           {"s2", "s3", "p"});
}

}  // namespace fixtures
