#include <doctest.h>

#include "fixtures.hpp"
#include "houghton/classify.hpp"
#include "houghton/errors.hpp"

using namespace houghton;
using namespace fixtures;

namespace {

GeneratedSubgroup non_level_group() {
  const Element g2 = Element::generator(3, 2), g3 = Element::generator(3, 3);
  return GeneratedSubgroup(3, {g2.pow(-2) * g3.pow(3), g2.pow(-1) * g3.pow(3)}, {"u", "v"});
}

void check_consistent(const ClassificationReport& r) {
  CHECK(r.full_hirsch == (r.hirsch_length == r.n - 1));
  if (r.full_hirsch) {
    CHECK(r.verdict == verdict_full(r.n));
    CHECK(r.conditional == (r.n == 2));
  } else {
    CHECK(r.conditional);
    CHECK(r.verdict.find("conditional") != std::string::npos);
  }
}

}  // namespace

TEST_CASE("Houghton groups") {
  for (int n = 3; n <= 4; ++n) {
    auto r = classify(houghton_group(n));
    check_consistent(r);
    CHECK(r.level_status == "level");
    CHECK(r.g_fin == "infinite");
    REQUIRE(r.certificate);
    CHECK(r.certificate->certified);
    CHECK(r.orbits.classes.size() == 1);
    REQUIRE(r.commutator);
    CHECK(r.commutator->meets_every_class);
  }
  CHECK(classify(houghton_group(3)).verdict == "type F_2, not FP_3, max-n");
  CHECK(classify(houghton_group(4)).verdict == "type F_3, not FP_4, max-n");
  auto h2 = classify(houghton_group(2));
  check_consistent(h2);
  CHECK(h2.verdict == "finitely generated, max-n; not FP_2 unless finite-by-Z");
  CHECK(h2.g_fin == "undetermined");
  CHECK(h2.level_status == "inconclusive");
}

TEST_CASE("Delta_2") {
  auto r = classify(delta_k(3, 2));
  check_consistent(r);
  CHECK(r.verdict == "type F_2, not FP_3, max-n");
  CHECK(r.level_status == "level");
  CHECK(r.index == 4);
  CHECK(r.orbits.stabilized);
  REQUIRE(r.orbits.classes.size() == 2);
  for (const auto& c : r.orbits.classes) CHECK(c.rays == std::vector<int>{1, 2, 3});
  CHECK(r.block_bound == 4);
  REQUIRE(r.blocks.size() == 1);
  CHECK_FALSE(r.blocks[0].from_search);
  REQUIRE(r.blocks[0].kk);
  CHECK(r.blocks[0].kk->passed());
  REQUIRE(r.probes.size() == 2);
  for (const auto& p : r.probes) CHECK(p.found);
  REQUIRE(r.commutator);
  CHECK(r.commutator->classes_met == std::vector<int>{0, 1});
}

TEST_CASE("pair-block group in H_2") {
  auto r = classify(pair_group());
  check_consistent(r);
  CHECK(r.full_hirsch);
  CHECK(r.block_bound == 2);
  REQUIRE_FALSE(r.blocks.empty());
  CHECK(r.blocks[0].from_search);
  CHECK(r.blocks[0].system == pair_blocks());
  CHECK(r.blocks[0].max_block <= 2);
  REQUIRE(r.blocks[0].kk);
  CHECK(r.blocks[0].kk->passed());
}

TEST_CASE("non-level full-rank subgroup") {
  auto r = classify(non_level_group());
  check_consistent(r);
  CHECK(r.verdict == "type F_2, not FP_3, max-n");
  CHECK(r.level_status == "not level");
  CHECK(r.level_fail_i == 2);
  CHECK(r.level_reduction_m == 3);
  CHECK_FALSE(r.congruence_m.has_value());
  REQUIRE(r.certificate);
  CHECK_FALSE(r.certificate->certified);
}

TEST_CASE("subgroups without full Hirsch length") {
  const RayPoint c[] = {{1, 0}, {2, 0}, {3, 0}};
  auto r = classify(GeneratedSubgroup(3, {Element::cycle(3, c)}));
  check_consistent(r);
  CHECK(r.hirsch_length == 0);
  CHECK(r.verdict == "type FP_3 iff G_fin is finite (conditional)");
  CHECK(r.g_fin == "finite");
  CHECK_FALSE(r.certificate.has_value());
  CHECK(std::any_of(r.reasons.begin(), r.reasons.end(), [](const std::string& s) { return s.find("order 3") != std::string::npos; }));

  auto one = classify(GeneratedSubgroup(3, {Element::generator(3, 2)}));
  check_consistent(one);
  CHECK(one.hirsch_length == 1);
  CHECK(one.g_fin == "undetermined");

  auto fin2 = classify(GeneratedSubgroup(2, {Element::transposition(2, {1, 0}, {2, 0})}));
  check_consistent(fin2);
  CHECK(fin2.hirsch_length == 0);
}

TEST_CASE("determinism and input checks") {
  ClassifyOptions o;
  o.seed = 7;
  auto a = classify(delta_k(3, 2), o), b = classify(delta_k(3, 2), o);
  REQUIRE(a.blocks.size() == b.blocks.size());
  CHECK(a.blocks[0].kk->pairs == b.blocks[0].kk->pairs);
  CHECK(a.verdict == b.verdict);
  o.window = 2;
  CHECK_THROWS_AS(classify(houghton_group(3), o), InvalidInput);
}
