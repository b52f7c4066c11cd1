#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <span>
#include <string>
#include <vector>

namespace houghton {

/// Image array of a permutation of {0, ..., degree-1}; p[x] is the image of x.
using Perm = std::vector<int>;
using BigInt = boost::multiprecision::cpp_int;

Perm identity_perm(int degree);
bool is_perm(const Perm& p);
bool is_identity(const Perm& p);
/// a then b (right action): x(ab) = (xa)b.
Perm compose(const Perm& a, const Perm& b);
Perm inverse(const Perm& p);
/// Cycle notation "(0 1 2)(3 4)" over 0-based points.
Perm parse_cycles(const std::string& text, int degree);
std::string cycle_string(const Perm& p);

inline constexpr int kMaxDegree = 30;

/// A finite permutation group given by generators, with a stabilizer chain built
/// by the Sims-table method on a fixed base (prefix first, then domain order).
class FinitePermGroup {
 public:
  FinitePermGroup(int degree, std::vector<Perm> generators, std::vector<int> base_prefix = {});

  int degree() const noexcept { return degree_; }
  const std::vector<Perm>& generators() const noexcept { return gens_; }
  const std::vector<int>& base() const noexcept { return base_; }

  std::vector<int> orbit(int point) const;
  std::vector<std::vector<int>> orbits() const;
  bool contains(const Perm& p) const;
  BigInt order() const;
  /// Pointwise stabilizer of the given points, with strong generators.
  FinitePermGroup pointwise_stabilizer(std::span<const int> points) const;
  /// Action on an invariant subset, relabelled 0..|subset|-1 in the given order.
  FinitePermGroup restricted(std::span<const int> subset) const;
  /// Every element; only sensible for small groups.
  std::vector<Perm> elements() const;

 private:
  bool sift_from(std::size_t level, Perm p) const;
  void add_gen(std::size_t level, const Perm& p);
  void ensure_coset(std::size_t level, const Perm& p);

  int degree_;
  std::vector<Perm> gens_;
  std::vector<int> base_;                        // full base: every point, prefix first
  std::vector<std::vector<Perm>> level_gens_;    // T_k
  std::vector<std::vector<Perm>> reps_;          // reps_[k][x]: maps base_[k] to x, or empty
};

/// The least block of G containing p and q (union-find refinement).  When p and q
/// lie in one orbit on which G acts transitively this is the minimal block of that
/// action; in general it is the class of p in the finest G-invariant partition
/// joining p and q.
std::vector<int> minimal_block(const FinitePermGroup& g, int p, int q);
/// The finest G-invariant partition in which p and q share a part.
std::vector<std::vector<int>> minimal_partition(const FinitePermGroup& g, int p, int q);

struct SopVerdict {
  bool strongly_orbit_primitive = false;
  std::vector<std::vector<int>> witness;  // block system, one block per orbit met
  std::string reason;
};

SopVerdict is_strongly_orbit_primitive(const FinitePermGroup& g);
/// Oracle: enumerates every partition of the domain (degree <= 10) and applies the
/// definition directly.
SopVerdict brute_force_partition_check(const FinitePermGroup& g);
bool contains_full_alternating(const FinitePermGroup& g, std::span<const int> orbit);

}  // namespace houghton
