#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "houghton/ray_system.hpp"

namespace houghton {

using TranslationVector = std::vector<std::int64_t>;

struct CycleStructure {
  std::vector<std::vector<RayPoint>> finite_cycles;  // cycles of length >= 2, each from its least point
  std::int64_t infinite_cycle_count = 0;             // half the l1 norm of t
  bool window_cross_check = false;                   // window tracing agrees on both counts
};

struct SupportDescription {
  std::vector<RayPoint> moved_below_threshold;
  std::vector<int> translated_rays;
};

/// An element of the Houghton group H_n, acting on the right.
///
/// Stored in canonical form: the translation vector t, the least threshold N such
/// that (j, l) -> (j, l + t_j) for every l >= N, and the head table listing exactly
/// the points (all below N) whose image is not given by that rule.  Two elements are
/// equal iff their canonical forms are equal.
class Element {
 public:
  using HeadEntry = std::pair<RayPoint, RayPoint>;

  Element() : Element(identity(1)) {}

  static Element identity(int n);
  /// Validates every invariant (zero sum, threshold rule, bijectivity) and
  /// canonicalizes.  Throws InvalidInput naming the failed invariant.
  static Element from_table(int n, TranslationVector t, std::int64_t threshold,
                            std::vector<HeadEntry> head);
  /// Finitary permutation given by an explicit table on a finite set.
  static Element finitary(int n, std::span<const HeadEntry> mapping);
  /// The cycle (p0 p1 ... pk): p0 -> p1 -> ... -> pk -> p0.
  static Element cycle(int n, std::span<const RayPoint> points);
  static Element transposition(int n, RayPoint a, RayPoint b);
  /// The standard generator g_j (2 <= j <= n): shifts ray 1 up, ray j down,
  /// and sends (j, 0) to (1, 0).
  static Element generator(int n, int j);

  int n() const noexcept { return n_; }
  const TranslationVector& t() const noexcept { return t_; }
  std::int64_t threshold() const noexcept { return threshold_; }
  const std::vector<HeadEntry>& head() const noexcept { return head_; }
  std::int64_t max_abs_translation() const noexcept;
  /// Depth threshold + 3 * max(1, max |t_i|): every finite cycle and every order
  /// violation of the element lives inside this window.
  std::int64_t oracle_depth() const noexcept;

  RayPoint apply(const RayPoint& p) const;
  RayPoint apply_inverse(const RayPoint& q) const;

  /// this then h (right action): p(gh) = (pg)h.
  Element operator*(const Element& h) const;
  Element inverse() const;
  Element pow(std::int64_t k) const;

  bool is_identity() const noexcept { return head_.empty() && threshold_ == 0; }
  bool is_finitary() const noexcept;
  SupportDescription support() const;
  /// Points moved by the element; requires is_finitary().
  std::vector<RayPoint> finitary_support() const;

  CycleStructure cycle_structure() const;
  /// Minimum-size finite set outside of which the element preserves lex order.
  std::vector<RayPoint> aop_exceptional_set() const;

  std::size_t hash() const noexcept;
  friend bool operator==(const Element& a, const Element& b) noexcept {
    return a.n_ == b.n_ && a.t_ == b.t_ && a.head_ == b.head_;
  }

 private:
  Element(int n, TranslationVector t) : n_(n), t_(std::move(t)) {}
  // Builds the canonical form from images of all points with pos < depth[j] on
  // ray j; beyond those depths the element must act by translation.
  template <class Map>
  static Element canonical_from_region(int n, TranslationVector t,
                                       const std::vector<std::int64_t>& depth, Map&& map);

  int n_ = 1;
  TranslationVector t_;
  std::int64_t threshold_ = 0;
  std::vector<HeadEntry> head_;      // sorted by domain point
  std::vector<HeadEntry> inv_head_;  // the same pairs swapped, sorted by image
};

Element commutator(const Element& a, const Element& b);

/// Window cycle tracing on depth `depth`: returns {finite cycles of length >= 2,
/// infinite cycles} counted as closed and open components of the window graph.
std::pair<std::int64_t, std::int64_t> window_cycle_counts(const Element& g,
                                                          std::int64_t depth);

/// Deterministic random element: zero-sum t with |t_i| <= t_bound realised as a
/// product of generator powers, preceded by a random finitary scramble of at most
/// head_budget points.
Element random_element(int n, int head_budget, std::int64_t t_bound, std::uint64_t seed);

struct ElementHash {
  std::size_t operator()(const Element& g) const noexcept { return g.hash(); }
};

}  // namespace houghton
