#include <doctest.h>

#include "fixtures.hpp"
#include "houghton/errors.hpp"
#include "houghton/random.hpp"
#include "houghton/wreath.hpp"

using namespace houghton;
using namespace fixtures;

namespace {

MultiWreathElement random_wreath(const BlockContext& ctx, Rng& rng) {
  auto words = ball(ctx.group(), 3);
  MultiWreathElement x = kk_embed(words[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(words.size()) - 1))].element, ctx);
  MultiWreathElement b = wreath_identity(ctx);
  for (int k = 0; k < 3; ++k) {
    RayPoint q{static_cast<int>(rng.uniform(1, ctx.quotient().n())), rng.uniform(0, 5)};
    RayPoint key = ctx.qpoint_to_key(q);
    Perm p = identity_perm(static_cast<int>(ctx.class_points(key).size()));
    rng.shuffle(p);
    if (!is_identity(p)) b.base[key] = p;
  }
  return multiply(ctx, b, x);
}

}  // namespace

TEST_CASE("embedding of the pair-block generators") {
  BlockContext ctx(pair_group(), pair_blocks(), 60);
  auto swap = kk_embed(Element::transposition(2, {1, 0}, {1, 1}), ctx);
  REQUIRE(swap.base.size() == 1);
  CHECK(swap.base.begin()->first == RayPoint{1, 0});
  CHECK(swap.base.begin()->second == Perm{1, 0});
  CHECK(swap.head.is_identity());

  Element a = Element::generator(2, 2).pow(2);
  auto ka = kk_embed(a, ctx);
  CHECK(ka.head == Element::generator(2, 2));
  // Only the class {(2,0),(2,1)} is reversed; every far class is order preserving.
  REQUIRE(ka.base.size() == 1);
  CHECK(ka.base.begin()->first == RayPoint{2, 0});
  CHECK(non_order_preserving_classes(a, ctx) == std::vector<RayPoint>{{2, 0}});

  CHECK(kk_embed(Element::identity(2), ctx) == wreath_identity(ctx));
}

TEST_CASE("wreath multiplication is a group law") {
  BlockContext ctx(pair_group(), pair_blocks(), 60);
  Rng rng(21);
  for (int k = 0; k < 100; ++k) {
    auto x = random_wreath(ctx, rng), y = random_wreath(ctx, rng), z = random_wreath(ctx, rng);
    CHECK(multiply(ctx, multiply(ctx, x, y), z) == multiply(ctx, x, multiply(ctx, y, z)));
    CHECK(multiply(ctx, x, inverse(ctx, x)) == wreath_identity(ctx));
    CHECK(multiply(ctx, wreath_identity(ctx), x) == x);
  }
  // Base-only elements multiply pointwise.
  MultiWreathElement p = wreath_identity(ctx), q = wreath_identity(ctx);
  p.base[{1, 0}] = {1, 0};
  q.base[{1, 0}] = {1, 0};
  q.base[{1, 2}] = {1, 0};
  auto pq = multiply(ctx, p, q);
  CHECK(pq.base.size() == 1);
  CHECK(pq.base.count({1, 2}) == 1);
}

TEST_CASE("context mismatch is rejected") {
  BlockContext a(pair_group(), pair_blocks(), 60);
  auto d2 = delta_k(3, 2);
  BlockContext b(d2, singleton_blocks(d2, 40), 40);
  CHECK_THROWS_AS(multiply(a, wreath_identity(a), wreath_identity(b)), InvalidInput);
}

TEST_CASE("kappa is an injective homomorphism with restricted base") {
  BlockContext pair(pair_group(), pair_blocks(), 60);
  auto rep = verify_kk(pair, 300, 1);
  CHECK(rep.passed());
  CHECK(rep.inconclusive == 0);

  auto d2 = delta_k(3, 2);
  BlockContext single(d2, singleton_blocks(d2, 40), 40);
  auto r2 = verify_kk(single, 200, 2);
  CHECK(r2.passed());
  CHECK(r2.inconclusive == 0);

  BlockContext cross(cross_pair_group(), pair_blocks(), 60);
  auto r3 = verify_kk(cross, 200, 3);
  CHECK(r3.passed());
  CHECK(r3.inconclusive == 0);
}

TEST_CASE("corrupted transversal keeps the homomorphism but breaks restrictedness") {
  BlockContext ctx(pair_group(), pair_blocks(), 60);
  ctx.override_transversal({1, 6}, {1, 0});
  auto rep = verify_kk(ctx, 300, 4);
  CHECK(rep.homomorphism_failures == 0);
  CHECK(rep.injectivity_failures == 0);
  CHECK(rep.support_mismatches > 0);
  // g_2^2 is order preserving at {(1,6),(1,7)} yet now has a value there.
  auto ka = kk_embed(Element::generator(2, 2).pow(2), ctx);
  CHECK(ka.base.count({1, 6}) == 1);
}

TEST_CASE("W_r groups") {
  BlockContext ctx(pair_group(), pair_blocks(), 60);
  auto w = w_groups(ctx);
  REQUIRE(w.size() == 1);
  CHECK(w[0].of_group.order() == 2);
  CHECK(w[0].of_finitary.order() == 2);
  CHECK(w[0].of_kernel.order() == 2);
  CHECK(w[0].group_equals_finitary);
  CHECK(w[0].finitary_equals_kernel);
  CHECK_FALSE(w[0].kernel_elements.empty());

  auto d2 = delta_k(3, 2);
  BlockContext single(d2, singleton_blocks(d2, 40), 40);
  for (const auto& x : w_groups(single)) {
    CHECK(x.of_group.order() == 1);
    CHECK(x.of_kernel.order() == 1);
  }

  GeneratedSubgroup trivial(2, {});
  BlockContext tctx(trivial, singleton_blocks(trivial, 6), 6);
  for (const auto& x : w_groups(tctx)) CHECK(x.of_group.order() == 1);
}

TEST_CASE("descent through conjugates of the kernel") {
  BlockContext ctx(pair_group(), pair_blocks(), 60);
  auto f = w_groups(ctx)[0].kernel_elements;
  REQUIRE_FALSE(f.empty());

  // alpha in kappa(G): nothing to do.
  Element g = Element::generator(2, 2).pow(2) * Element::transposition(2, {1, 0}, {1, 1});
  auto exact = phi_s_descent(kk_embed(g, ctx), ctx, f);
  CHECK(exact.success);
  CHECK(multiply(ctx, exact.s, kk_embed(exact.g, ctx)) == kk_embed(g, ctx));

  for (int off = 1; off <= 3; ++off) {
    MultiWreathElement delta = wreath_identity(ctx);
    for (int k = 0; k < off; ++k) delta.base[ctx.qpoint_to_key({1 + k % 2, 2 + k})] = {1, 0};
    auto lifted = lift_head(ctx, Element::generator(2, 2), 6, 20000);
    REQUIRE(lifted.has_value());
    auto alpha = multiply(ctx, delta, kk_embed(*lifted, ctx));
    auto res = phi_s_descent(alpha, ctx, f);
    REQUIRE(res.success);
    CHECK(res.measures.front() == static_cast<std::size_t>(off));
    CHECK(res.steps() == static_cast<std::size_t>(off));
    for (std::size_t k = 1; k < res.measures.size(); ++k) CHECK(res.measures[k] < res.measures[k - 1]);
    CHECK(multiply(ctx, res.s, kk_embed(res.g, ctx)) == alpha);
    CHECK(res.s.head.is_identity());
  }
}
