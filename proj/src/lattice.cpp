#include "houghton/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "houghton/errors.hpp"

namespace houghton {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in lattice arithmetic");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in lattice arithmetic");
  return r;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  return checked_mul(a / gcd64(a, b), b < 0 ? -b : b);
}

namespace {

// row[dst] -= q * row[src] on both the working matrix and the transform.
void axpy(IntVec& dst, const IntVec& src, std::int64_t q) {
  for (std::size_t k = 0; k < dst.size(); ++k) dst[k] = checked_add(dst[k], -checked_mul(q, src[k]));
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

RowReduction row_reduce(const IntMatrix& rows, int cols) {
  const std::size_t m = rows.size();
  IntMatrix a = rows;
  for (const auto& r : a)
    if (static_cast<int>(r.size()) != cols) throw InvalidInput("lattice row has wrong length");
  IntMatrix u(m, IntVec(m, 0));
  for (std::size_t i = 0; i < m; ++i) u[i][i] = 1;

  RowReduction out;
  std::size_t top = 0;
  for (int c = 0; c < cols && top < m; ++c) {
    // Euclid on column c among rows top..m-1.
    while (true) {
      std::size_t best = m;
      for (std::size_t r = top; r < m; ++r)
        if (a[r][c] != 0 && (best == m || std::llabs(a[r][c]) < std::llabs(a[best][c]))) best = r;
      if (best == m) break;
      std::swap(a[top], a[best]);
      std::swap(u[top], u[best]);
      bool done = true;
      for (std::size_t r = top + 1; r < m; ++r) {
        if (a[r][c] == 0) continue;
        std::int64_t q = a[r][c] / a[top][c];
        axpy(a[r], a[top], q);
        axpy(u[r], u[top], q);
        if (a[r][c] != 0) done = false;
      }
      if (done) break;
    }
    if (a[top][c] == 0) continue;
    if (a[top][c] < 0) {
      for (auto& x : a[top]) x = -x;
      for (auto& x : u[top]) x = -x;
    }
    for (std::size_t r = 0; r < top; ++r) {
      std::int64_t q = floor_div(a[r][c], a[top][c]);
      if (q != 0) {
        axpy(a[r], a[top], q);
        axpy(u[r], u[top], q);
      }
    }
    out.pivot_cols.push_back(c);
    ++top;
  }
  out.hnf.assign(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(top));
  out.transform = u;
  out.kernel.assign(u.begin() + static_cast<std::ptrdiff_t>(top), u.end());
  return out;
}

std::optional<IntVec> express(const IntMatrix& rows, int cols, const IntVec& v) {
  RowReduction rr = row_reduce(rows, cols);
  IntVec rest = v;
  IntVec y(rr.hnf.size(), 0);
  for (std::size_t k = 0; k < rr.hnf.size(); ++k) {
    int c = rr.pivot_cols[k];
    if (rest[c] % rr.hnf[k][c] != 0) return std::nullopt;
    y[k] = rest[c] / rr.hnf[k][c];
    axpy(rest, rr.hnf[k], y[k]);
  }
  if (std::any_of(rest.begin(), rest.end(), [](auto x) { return x != 0; })) return std::nullopt;
  IntVec coeffs(rows.size(), 0);
  for (std::size_t k = 0; k < y.size(); ++k)
    for (std::size_t r = 0; r < rows.size(); ++r)
      coeffs[r] = checked_add(coeffs[r], checked_mul(y[k], rr.transform[k][r]));
  return coeffs;
}

Lattice::Lattice(int n, const IntMatrix& spanning_rows) : n_(n) {
  if (n < 1) throw InvalidInput("lattice needs n >= 1");
  basis_ = row_reduce(spanning_rows, n).hnf;
}

Lattice Lattice::zero_sum(int n, std::int64_t m) {
  IntMatrix rows;
  for (int i = 0; i + 1 < n; ++i) {
    IntVec v(static_cast<std::size_t>(n), 0);
    v[i] = m;
    v[n - 1] = -m;
    rows.push_back(v);
  }
  return Lattice(n, rows);
}

bool Lattice::is_zero_sum() const {
  return std::all_of(basis_.begin(), basis_.end(), [](const IntVec& r) {
    return std::accumulate(r.begin(), r.end(), std::int64_t{0}) == 0;
  });
}

std::optional<std::int64_t> Lattice::index_in_zero_sum() const {
  if (!full_rank_in_zero_sum() || !is_zero_sum()) return std::nullopt;
  // Coordinates in the basis e_i - e_n are the first n - 1 entries, so the index is
  // the determinant of that square block, i.e. the product of the pivots.
  std::int64_t idx = 1;
  for (int k = 0; k < rank(); ++k) {
    if (basis_[k][k] == 0) return std::nullopt;
    idx = checked_mul(idx, basis_[k][k]);
  }
  return idx;
}

bool Lattice::contains(const IntVec& v) const {
  if (static_cast<int>(v.size()) != n_) return false;
  return express(basis_, n_, v).has_value();
}

Lattice Lattice::coordinate_slice(int i) const {
  IntMatrix col;
  for (const auto& r : basis_) col.push_back({r[i]});
  RowReduction rr = row_reduce(col, 1);
  IntMatrix rows;
  for (const auto& x : rr.kernel) {
    IntVec v(static_cast<std::size_t>(n_), 0);
    for (std::size_t k = 0; k < x.size(); ++k)
      for (int c = 0; c < n_; ++c) v[c] = checked_add(v[c], checked_mul(x[k], basis_[k][c]));
    rows.push_back(v);
  }
  return Lattice(n_, rows);
}

std::int64_t Lattice::column_gcd(int j) const {
  std::int64_t g = 0;
  for (const auto& r : basis_) g = gcd64(g, r[j]);
  return g;
}

std::int64_t Lattice::line_multiple(const IntVec& w) const {
  IntMatrix rows = basis_;
  rows.push_back(w);
  RowReduction rr = row_reduce(rows, n_);
  std::int64_t d = 0;
  for (const auto& x : rr.kernel) d = gcd64(d, x.back());
  return d;
}

std::string to_string(const IntVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

}  // namespace houghton
