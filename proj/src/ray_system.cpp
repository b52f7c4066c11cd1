#include "houghton/ray_system.hpp"

#include <algorithm>

#include "houghton/errors.hpp"

namespace houghton {

std::string to_string(const RayPoint& p) {
  return "(" + std::to_string(p.ray) + "," + std::to_string(p.pos) + ")";
}

RaySystem::RaySystem(int n) : n_(n) {
  if (n < 1) throw InvalidInput("ray system needs n >= 1");
}

void RaySystem::check(const RayPoint& p) const {
  if (!contains(p))
    throw InvalidInput("point " + to_string(p) + " is not in R_" + std::to_string(n_));
}

std::strong_ordering RaySystem::lex_compare(const RayPoint& p, const RayPoint& q) const {
  check(p);
  check(q);
  return p <=> q;
}

Window::Window(int n, std::int64_t depth) : n_(n), depth_(depth) {
  if (n < 1 || depth < 0) throw InvalidInput("bad window");
}

std::vector<RayPoint> Window::points() const {
  std::vector<RayPoint> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (int r = 1; r <= n_; ++r)
    for (std::int64_t m = 0; m < depth_; ++m) out.push_back({r, m});
  return out;
}

DeletionIso::DeletionIso(int n, std::span<const RayPoint> deleted)
    : n_(n), per_ray_(static_cast<std::size_t>(n)) {
  RaySystem sys(n);
  for (const auto& p : deleted) {
    sys.check(p);
    per_ray_[p.ray - 1].push_back(p.pos);
  }
  for (auto& v : per_ray_) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
}

bool DeletionIso::deleted(const RayPoint& p) const {
  const auto& v = per_ray_[p.ray - 1];
  return std::binary_search(v.begin(), v.end(), p.pos);
}

RayPoint DeletionIso::forward(const RayPoint& p) const {
  RaySystem(n_).check(p);
  if (deleted(p)) throw InvalidInput("point " + to_string(p) + " was deleted");
  const auto& v = per_ray_[p.ray - 1];
  auto below = std::lower_bound(v.begin(), v.end(), p.pos) - v.begin();
  return {p.ray, p.pos - below};
}

RayPoint DeletionIso::inverse(const RayPoint& q) const {
  RaySystem(n_).check(q);
  std::int64_t pos = q.pos;
  for (auto d : per_ray_[q.ray - 1]) {
    if (d <= pos)
      ++pos;
    else
      break;
  }
  return {q.ray, pos};
}

}  // namespace houghton
