#include <doctest.h>

#include <random>

#include "houghton/lattice.hpp"

using namespace houghton;

namespace {

IntVec mul(const IntVec& x, const IntMatrix& rows) {
  IntVec v(rows.empty() ? 0 : rows[0].size(), 0);
  for (std::size_t k = 0; k < rows.size(); ++k)
    for (std::size_t c = 0; c < v.size(); ++c) v[c] += x[k] * rows[k][c];
  return v;
}

}  // namespace

TEST_CASE("hermite form of the non-level example") {
  Lattice l(3, {{1, 2, -3}, {2, 1, -3}});
  CHECK(l.rank() == 2);
  CHECK(l.basis() == IntMatrix{{1, 2, -3}, {0, 3, -3}});
  CHECK(l.index_in_zero_sum() == 3);
  CHECK(l.contains({3, 0, -3}));
  CHECK(l.contains({1, -1, 0}));
  CHECK_FALSE(l.contains({1, 0, -1}));
  CHECK(l.line_multiple({1, 0, -1}) == 3);
  CHECK(l.coordinate_slice(1).column_gcd(0) == 3);
}

TEST_CASE("zero-sum lattices and multiples") {
  for (int n = 2; n <= 6; ++n) {
    CHECK(Lattice::zero_sum(n).index_in_zero_sum() == 1);
    std::int64_t k3 = 1;
    for (int i = 0; i + 1 < n; ++i) k3 *= 3;
    CHECK(Lattice::zero_sum(n, 3).index_in_zero_sum() == k3);
  }
  CHECK(Lattice(3, {}).rank() == 0);
  CHECK_FALSE(Lattice(3, {{1, -1, 0}}).index_in_zero_sum().has_value());
}

TEST_CASE("normal form does not depend on the spanning set") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 3);
    IntMatrix rows;
    for (int r = 0; r < n; ++r) {
      IntVec v(static_cast<std::size_t>(n), 0);
      for (int c = 0; c + 1 < n; ++c) {
        v[c] = static_cast<std::int64_t>(rng() % 9) - 4;
        v[n - 1] -= v[c];
      }
      rows.push_back(v);
    }
    Lattice a(n, rows);
    // Unimodular shuffle: add random multiples of rows to each other.
    IntMatrix mixed = rows;
    for (int step = 0; step < 10; ++step) {
      auto i = rng() % mixed.size(), j = rng() % mixed.size();
      if (i == j) continue;
      std::int64_t q = static_cast<std::int64_t>(rng() % 5) - 2;
      for (int c = 0; c < n; ++c) mixed[i][c] += q * mixed[j][c];
    }
    std::swap(mixed[0], mixed.back());
    CHECK(Lattice(n, mixed) == a);
    for (const auto& r : rows) CHECK(a.contains(r));
    RowReduction rr = row_reduce(rows, n);
    for (const auto& k : rr.kernel) CHECK(mul(k, rows) == IntVec(static_cast<std::size_t>(n), 0));
    CHECK(rr.kernel.size() + rr.hnf.size() == rows.size());
    for (const auto& r : rows) {
      auto c = express(rows, n, r);
      REQUIRE(c.has_value());
      CHECK(mul(*c, rows) == r);
    }
  }
}
