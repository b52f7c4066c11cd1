#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace houghton {

/// A point (ray, pos) of the ray system: rays are 1-based, positions 0-based.
struct RayPoint {
  int ray = 1;
  std::int64_t pos = 0;

  /// Lexicographic order: ray index first, then position.
  friend constexpr auto operator<=>(const RayPoint&, const RayPoint&) = default;
};

std::string to_string(const RayPoint& p);

/// The ray system with n rays, well-ordered lexicographically (order type omega * n).
class RaySystem {
 public:
  explicit RaySystem(int n);

  int n() const noexcept { return n_; }
  bool contains(const RayPoint& p) const noexcept {
    return p.ray >= 1 && p.ray <= n_ && p.pos >= 0;
  }
  /// Throws InvalidInput for a point outside the system.
  void check(const RayPoint& p) const;

  std::strong_ordering lex_compare(const RayPoint& p, const RayPoint& q) const;

 private:
  int n_;
};

/// All points with pos < depth on every ray (uniform depth).
class Window {
 public:
  Window(int n, std::int64_t depth);

  int n() const noexcept { return n_; }
  std::int64_t depth() const noexcept { return depth_; }
  std::int64_t size() const noexcept { return n_ * depth_; }
  bool contains(const RayPoint& p) const noexcept {
    return p.ray >= 1 && p.ray <= n_ && p.pos >= 0 && p.pos < depth_;
  }
  /// Dense index in lex order; the inverse is `point`.
  std::int64_t index(const RayPoint& p) const noexcept {
    return static_cast<std::int64_t>(p.ray - 1) * depth_ + p.pos;
  }
  RayPoint point(std::int64_t index) const noexcept {
    return {static_cast<int>(index / depth_) + 1, index % depth_};
  }
  std::vector<RayPoint> points() const;

 private:
  int n_;
  std::int64_t depth_;
};

/// The order isomorphism R_n \ F -> R_n obtained by closing up the gaps left by a
/// finite deleted set F on each ray.
class DeletionIso {
 public:
  DeletionIso(int n, std::span<const RayPoint> deleted);

  int n() const noexcept { return n_; }
  bool deleted(const RayPoint& p) const;
  /// Defined on R_n \ F; throws InvalidInput on a deleted point.
  RayPoint forward(const RayPoint& p) const;
  RayPoint inverse(const RayPoint& q) const;

 private:
  int n_;
  std::vector<std::vector<std::int64_t>> per_ray_;  // sorted deleted positions
};

}  // namespace houghton
