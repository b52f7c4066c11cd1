#include <doctest.h>

#include <numeric>

#include "houghton/bns.hpp"
#include "houghton/errors.hpp"
#include "houghton/random.hpp"
#include "houghton/subgroup.hpp"

using namespace houghton;

namespace {

Character chi(const std::string& s, int n) { return parse_character(s, n); }

std::vector<Rational> ints(std::initializer_list<std::int64_t> xs) {
  std::vector<Rational> out;
  for (auto x : xs) out.emplace_back(x);
  return out;
}

// Level by residues.  L contains e * Z0 (e the index), so for n >= 3 the
// coordinate slice projects onto ray j as gcd(e, r_j) over the residues r of
// L mod e with r_i = 0.  All residues come from coefficient vectors in [0, e).
bool level_by_residues(const IntMatrix& rows, int n, std::int64_t e) {
  const std::size_t r = rows.size();
  std::vector<std::int64_t> col(static_cast<std::size_t>(n), e);
  std::vector<std::vector<std::int64_t>> sliced(static_cast<std::size_t>(n), col);
  std::vector<std::int64_t> c(r, 0);
  while (true) {
    IntVec v(static_cast<std::size_t>(n), 0);
    for (std::size_t k = 0; k < r; ++k)
      for (int j = 0; j < n; ++j) v[j] = (v[j] + c[k] * rows[k][j]) % e;
    for (int j = 0; j < n; ++j) {
      col[j] = std::gcd(col[j], v[j]);
      for (int i = 0; i < n; ++i)
        if (v[i] == 0) sliced[i][j] = std::gcd(sliced[i][j], v[j]);
    }
    std::size_t k = 0;
    while (k < r && c[k] == e - 1) c[k++] = 0;
    if (k == r) break;
    ++c[k];
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && sliced[i][j] != col[j]) return false;
  return true;
}

}  // namespace

TEST_CASE("rationals and linear forms") {
  CHECK(parse_rational("2/3") == Rational(2, 3));
  CHECK(parse_rational("-4/6") == Rational(-2, 3));
  CHECK(to_string(Rational(6, 4)) == "3/2");
  CHECK(to_string(Rational(-5)) == "-5");
  CHECK_THROWS_AS(parse_rational("1/0"), InvalidInput);
  CHECK_THROWS_AS(parse_rational("x"), InvalidInput);
  CHECK(parse_linear_form("t1 - 2/3 t3", 3) == std::vector<Rational>{1, 0, Rational(-2, 3)});
  CHECK(parse_linear_form("-t2+2*t2+t1", 2) == ints({1, 1}));
  CHECK_THROWS_AS(parse_linear_form("t4", 3), InvalidInput);
  CHECK_THROWS_AS(parse_linear_form("t1 t2", 3), InvalidInput);
  CHECK(to_string(chi("t1 - 1/2 t3", 3)) == "t1 - 1/2 t3");
}

TEST_CASE("canonical form") {
  auto c = canonicalize(chi("t1 - t2", 3));
  CHECK(c.a == ints({2, 0, 1}));
  CHECK(c.support().size() == 2);
  CHECK(canonicalize(chi("t1", 3)).a == ints({1, 0, 0}));
  CHECK_THROWS_AS(canonicalize(chi("t1 + t2 + t3", 3)), InvalidInput);
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = static_cast<int>(rng.uniform(2, 6));
    Character x{n, {}};
    for (int i = 0; i < n; ++i) x.a.emplace_back(rng.uniform(-5, 5), rng.uniform(1, 4));
    if (x.support().empty()) continue;
    const Rational shift(rng.uniform(-9, 9), rng.uniform(1, 5));
    Character y = x;
    for (auto& a : y.a) a += shift;
    const auto cx = canonicalize(x);
    CHECK(canonicalize(cx) == cx);
    CHECK(canonicalize(y) == cx);
    CHECK(*std::min_element(cx.a.begin(), cx.a.end()) == Rational(0));
  }
}

TEST_CASE("skeleton membership") {
  for (int n = 3; n <= 5; ++n)
    for (int i = 1; i <= n; ++i) CHECK_FALSE(in_sigma(chi("t" + std::to_string(i), n), 1));
  CHECK(in_sigma(chi("t1 - t2", 3), 1));
  CHECK_FALSE(in_sigma(chi("t1 - t2", 3), 2));
  CHECK(in_sigma(chi("t1 + 2 t2 + 3 t3", 4), 2));
  CHECK_FALSE(in_sigma(chi("t1 + 2 t2 + 3 t3", 4), 3));
  CHECK_THROWS_AS(in_sigma(chi("t1", 3), 3), InvalidInput);
  Rng rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = static_cast<int>(rng.uniform(2, 6));
    Character x{n, {}};
    for (int i = 0; i < n; ++i) x.a.emplace_back(rng.uniform(0, 2));
    if (x.support().empty()) continue;
    bool prev = true;
    for (int m = 1; m <= n - 1; ++m) {
      const bool now = in_sigma(x, m);
      if (!prev) CHECK_FALSE(now);
      prev = now;
    }
  }
}

TEST_CASE("finiteness type of subgroups above the commutator") {
  auto k = subgroup_type(kernel_lattice(4, {parse_linear_form("t1+t2", 4)}));
  CHECK(k.verdict == "F_1, not F_2");
  CHECK(k.max_m == 1);
  REQUIRE(k.extreme.size() == 2);
  CHECK(k.extreme[0].support() == std::vector<int>{1, 2});
  CHECK(k.extreme[1].support() == std::vector<int>{3, 4});

  auto z = subgroup_type(Lattice(4, {}));
  CHECK(z.verdict == "not F_1");
  CHECK(z.max_m == 0);
  auto full = subgroup_type(Lattice::zero_sum(4));
  CHECK(full.capped);
  CHECK(full.max_m == 3);
  CHECK(subgroup_type(Lattice::zero_sum(3, 2)).max_m == 2);
  // ker(t1 - t2) in H_3: the only characters are +-(t1 - t2), support 2.
  CHECK(subgroup_type(kernel_lattice(3, {parse_linear_form("t1 - t2", 3)})).verdict == "F_1, not F_2");
  // ker(t1) in H_n contains a vertex character.
  for (int n = 3; n <= 5; ++n) CHECK(subgroup_type(kernel_lattice(n, {parse_linear_form("t1", n)})).max_m == 0);
  // ker(t1 + t2 + t3) in H_5 pairs supports {1,2,3} and {4,5}.
  CHECK(subgroup_type(kernel_lattice(5, {parse_linear_form("t1+t2+t3", 5)})).max_m == 1);
  CHECK_THROWS_AS(subgroup_type(Lattice(3, {{1, 0, 0}})), InvalidInput);

  // Invariance under a unimodular change of basis.
  Rng rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    IntVec a{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3), 0};
    a[3] = -(a[0] + a[1] + a[2]);
    IntVec b{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3), 0};
    b[3] = -(b[0] + b[1] + b[2]);
    const std::int64_t s = rng.uniform(-3, 3);
    IntVec c(4);
    for (int i = 0; i < 4; ++i) c[i] = b[i] + s * a[i];
    CHECK(subgroup_type(Lattice(4, {a, b})).verdict == subgroup_type(Lattice(4, {c, a})).verdict);
  }
}

TEST_CASE("Meinert skeleton rule against join dimensions") {
  std::vector<Rational> zero(3, Rational(0));
  CHECK(meinert_complement_bound(3, {ints({1, 0, 0}), zero}));
  CHECK_FALSE(meinert_complement_bound(3, {ints({1, 2, 0}), ints({0, 1, 0})}));
  CHECK(meinert_complement_bound(3, {ints({1, 2, 0}), zero}));
  CHECK_THROWS_AS(meinert_complement_bound(3, {zero, zero}), InvalidInput);

  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = static_cast<int>(rng.uniform(3, 5));
    const int k = static_cast<int>(rng.uniform(2, 3));
    std::vector<std::vector<Rational>> grid;
    int dim = -1, nonzero = 0;
    for (int f = 0; f < k; ++f) {
      std::vector<std::int64_t> row;
      const bool blank = rng.uniform(0, 3) == 0;
      for (int i = 0; i < n; ++i) row.push_back(blank ? 7 : rng.uniform(0, 1) * rng.uniform(1, 3));
      const std::int64_t lo = *std::min_element(row.begin(), row.end());
      const int s = static_cast<int>(std::count_if(row.begin(), row.end(), [&](auto x) { return x != lo; }));
      if (s > 0) {
        dim += s;  // a face with s vertices has dimension s - 1, and each join adds 1
        ++nonzero;
      }
      std::vector<Rational> r;
      for (auto x : row) r.emplace_back(x);
      grid.push_back(r);
    }
    if (nonzero == 0) continue;
    CHECK(meinert_complement_bound(n, grid) == (dim <= n - 2));
  }
}

TEST_CASE("level certificate") {
  auto c = f_certificate(Lattice::zero_sum(4));
  CHECK(c.certified);
  CHECK(c.witnesses.size() == 12);
  for (const auto& w : c.witnesses) {
    CHECK(w.vector[static_cast<std::size_t>(w.zero_ray - 1)] < 0);
    CHECK(w.vector[static_cast<std::size_t>(w.positive_ray - 1)] > 0);
    CHECK(Lattice::zero_sum(4).contains(w.vector));
  }
  CHECK(f_certificate(translation_lattice(delta_k(3, 2))).certified);
  CHECK(f_certificate(translation_lattice(delta_k(4, 3))).certified);
  auto bad = f_certificate(Lattice(3, {{1, 2, -3}, {2, 1, -3}}));
  CHECK_FALSE(bad.certified);
  CHECK(bad.offending_zero_ray == 2);
  CHECK(f_certificate(Lattice::zero_sum(2, 3)).certified);
  CHECK_THROWS_AS(f_certificate(Lattice(3, {{1, -1, 0}})), InvalidInput);

  Rng rng(23);
  int tried = 0, levels = 0;
  while (tried < 300) {
    const int n = static_cast<int>(rng.uniform(3, 4));
    IntMatrix rows;
    for (int k = 0; k + 1 < n; ++k) {
      IntVec v(static_cast<std::size_t>(n), 0);
      for (int i = 0; i + 1 < n; ++i) v[i] = rng.uniform(-3, 3);
      v[n - 1] = -std::accumulate(v.begin(), v.end() - 1, std::int64_t{0});
      rows.push_back(v);
    }
    Lattice l(n, rows);
    if (!l.full_rank_in_zero_sum()) continue;
    ++tried;
    const bool oracle = level_by_residues(rows, n, *l.index_in_zero_sum());
    CHECK(f_certificate(l).certified == oracle);
    levels += oracle;
  }
  CHECK(levels > 0);
  CHECK(levels < 300);
}
