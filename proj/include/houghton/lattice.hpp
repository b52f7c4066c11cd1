#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace houghton {

using IntVec = std::vector<std::int64_t>;
using IntMatrix = std::vector<IntVec>;

/// Overflow-checked arithmetic; throws std::overflow_error.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);

/// Row Hermite normal form with the unimodular transform: transform * input = hnf,
/// where the last (rows - rank) rows of hnf are zero.  Pivots are positive and the
/// entries above each pivot are reduced into [0, pivot).
struct RowReduction {
  IntMatrix hnf;        // rank rows, nonzero
  IntMatrix transform;  // rows x input-rows; first rank rows produce hnf
  IntMatrix kernel;     // integer basis of {x : x * input = 0}
  std::vector<int> pivot_cols;
};

RowReduction row_reduce(const IntMatrix& rows, int cols);

/// Integer coefficients c with sum_k c_k rows[k] = v, if any.
std::optional<IntVec> express(const IntMatrix& rows, int cols, const IntVec& v);

/// A sublattice of Z^n (in practice of the zero-sum lattice), stored by its
/// canonical row Hermite normal form.
class Lattice {
 public:
  Lattice() = default;
  Lattice(int n, const IntMatrix& spanning_rows);

  /// The zero-sum lattice {v : sum v = 0} and its multiples m * Z0.
  static Lattice zero_sum(int n, std::int64_t m = 1);

  int n() const noexcept { return n_; }
  const IntMatrix& basis() const noexcept { return basis_; }
  int rank() const noexcept { return static_cast<int>(basis_.size()); }
  bool is_zero_sum() const;
  bool full_rank_in_zero_sum() const noexcept { return rank() == n_ - 1; }
  /// Index in the zero-sum lattice; nullopt when the rank is not n - 1.
  std::optional<std::int64_t> index_in_zero_sum() const;

  bool contains(const IntVec& v) const;
  /// L intersected with {v : v_i = 0} (i is 0-based).
  Lattice coordinate_slice(int i) const;
  /// gcd of the j-th coordinates of L (0 when L lies in v_j = 0).
  std::int64_t column_gcd(int j) const;
  /// Least d > 0 with d * w in L, or 0 when no positive multiple of w lies in L.
  std::int64_t line_multiple(const IntVec& w) const;

  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.n_ == b.n_ && a.basis_ == b.basis_;
  }

 private:
  int n_ = 0;
  IntMatrix basis_;
};

std::string to_string(const IntVec& v);

}  // namespace houghton
