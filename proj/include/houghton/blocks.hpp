#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "houghton/subgroup.hpp"

namespace houghton {

struct RayPointHash {
  std::size_t operator()(const RayPoint& p) const noexcept {
    return std::hash<std::int64_t>{}(p.pos * 1000003 + p.ray);
  }
};

/// Finite blocks B_1..B_k; each block sorted in lex order.
struct BlockSystem {
  std::vector<std::vector<RayPoint>> blocks;
  friend bool operator==(const BlockSystem&, const BlockSystem&) = default;
};

/// The translates B_i g reachable from the blocks through generator moves that
/// keep a translate inside the exploration depth.  Translates are exact finite
/// sets; the construction fails if two translates overlap without being equal.
class TranslateCongruence {
 public:
  TranslateCongruence(const GeneratedSubgroup& g, const BlockSystem& b, std::int64_t explore_depth);

  bool consistent() const noexcept { return consistent_; }
  const std::string& conflict() const noexcept { return conflict_; }
  /// Per ray, the first position not covered by a known translate.
  const std::vector<std::int64_t>& coverage() const noexcept { return coverage_; }
  std::int64_t covered_depth() const;
  const std::vector<std::vector<RayPoint>>& translates() const noexcept { return translates_; }
  /// Index of the translate containing p, if known.
  std::optional<int> translate_of(const RayPoint& p) const;
  /// The block a translate descends from.
  int origin(int translate) const { return origin_.at(static_cast<std::size_t>(translate)); }
  /// Translates that meet more than one ray.
  int multi_ray_count() const;

 private:
  std::vector<std::vector<RayPoint>> translates_;
  std::vector<int> origin_;
  std::unordered_map<RayPoint, int, RayPointHash> owner_;
  std::vector<std::int64_t> coverage_;
  bool consistent_ = true;
  std::string conflict_;
};

/// e = [Z0 : L], the bound on block sizes for a full Hirsch length subgroup.
std::int64_t block_size_bound(const Lattice& l);

struct BlockVerification {
  bool disjoint = true;
  bool orbit_incidence = true;  // each window orbit class meets exactly one block
  bool equivariant = true;      // Bg meets B only when Bg = B, words of length <= 3
  bool translates_consistent = true;
  bool proper = true;           // no block contains a whole window orbit class
  std::size_t words_checked = 0;
  std::string witness;
  bool valid() const noexcept { return disjoint && orbit_incidence && equivariant && translates_consistent; }
};

BlockVerification verify_block_system(const GeneratedSubgroup& g, const BlockSystem& b, std::int64_t w);

struct BlockSearchResult {
  std::vector<BlockSystem> systems;
  /// An empty result is never a proof that no block system exists.
  bool window_caveat = true;
  std::size_t seeds_tried = 0;
};

BlockSearchResult find_block_systems(const GeneratedSubgroup& g, std::int64_t w, std::int64_t e);

/// Builds a Houghton element from partial knowledge of its images: image(p) is
/// known for p = (i, r) with r < extent[i-1].  The upper half of each ray must act
/// by a constant shift, which becomes the translation vector; the element is then
/// validated.  Throws Inconclusive when the window does not determine it.
Element infer_element(int n, const std::vector<std::int64_t>& extent,
                      const std::function<std::optional<RayPoint>(const RayPoint&)>& image);

/// The congruence classes on a window, their lex order by least element, the
/// rank maps to a ray system, and the induced action.
class QuotientStructure {
 public:
  QuotientStructure(const GeneratedSubgroup& g, const BlockSystem& b, std::int64_t w);

  int n() const noexcept { return n_; }
  std::int64_t depth() const noexcept { return depth_; }
  /// Classes with a known rank, in lex order of their least element.
  const std::vector<std::vector<RayPoint>>& classes() const noexcept { return classes_; }
  /// Quotient point of class k.
  const RayPoint& quotient_point(int k) const { return qpoint_[k]; }
  /// Class of a point, if its rank is known.
  std::optional<int> class_index(const RayPoint& p) const;
  std::optional<int> class_at(const RayPoint& quotient_point) const;
  /// Index of the block that class k is a translate of.
  int block_of_class(int k) const;
  /// Per quotient ray, the number of classes with known rank.
  const std::vector<std::int64_t>& extent() const noexcept { return extent_; }
  /// Induced element on the quotient ray system; throws Inconclusive when the
  /// window is too small and InvalidInput when g does not respect the classes.
  Element induce(const Element& g) const;
  const std::vector<Element>& induced_generators() const noexcept { return induced_; }
  int multi_ray_translates() const noexcept { return multi_ray_; }
  /// Bounded words acting trivially on the known classes are all finitary.
  bool kernel_finitary() const noexcept { return kernel_finitary_; }
  std::size_t kernel_words() const noexcept { return kernel_words_; }

 private:
  int n_;
  std::int64_t depth_;
  TranslateCongruence cong_;
  std::vector<std::vector<RayPoint>> classes_;
  std::vector<RayPoint> qpoint_;
  std::vector<int> translate_to_class_;
  std::vector<int> class_block_;
  std::vector<std::vector<int>> by_ray_;  // quotient ray -> classes by rank
  std::vector<std::int64_t> extent_;
  std::vector<Element> induced_;
  int multi_ray_ = 0;
  bool kernel_finitary_ = true;
  std::size_t kernel_words_ = 0;
};

}  // namespace houghton
