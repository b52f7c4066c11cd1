#include "houghton/element.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "houghton/errors.hpp"
#include "houghton/random.hpp"

namespace houghton {

namespace {

bool by_first(const Element::HeadEntry& a, const Element::HeadEntry& b) { return a.first < b.first; }

std::int64_t abs64(std::int64_t x) { return x < 0 ? -x : x; }

struct DisjointSets {
  std::vector<std::int64_t> parent;
  explicit DisjointSets(std::int64_t size) : parent(static_cast<std::size_t>(size)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::int64_t find(std::int64_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::int64_t a, std::int64_t b) { parent[find(a)] = find(b); }
};

}  // namespace

template <class Map>
Element Element::canonical_from_region(int n, TranslationVector t,
                                       const std::vector<std::int64_t>& depth, Map&& map) {
  Element g(n, std::move(t));
  for (int j = 1; j <= n; ++j) {
    for (std::int64_t m = 0; m < depth[j - 1]; ++m) {
      RayPoint p{j, m};
      RayPoint q = map(p);
      if (q.ray != j || q.pos != m + g.t_[j - 1]) g.head_.emplace_back(p, q);
    }
  }
  std::sort(g.head_.begin(), g.head_.end(), by_first);
  for (const auto& [p, q] : g.head_) g.threshold_ = std::max(g.threshold_, p.pos + 1);
  g.inv_head_.reserve(g.head_.size());
  for (const auto& [p, q] : g.head_) g.inv_head_.emplace_back(q, p);
  std::sort(g.inv_head_.begin(), g.inv_head_.end(), by_first);
  return g;
}

Element Element::identity(int n) {
  RaySystem sys(n);
  return Element(n, TranslationVector(static_cast<std::size_t>(n), 0));
}

Element Element::from_table(int n, TranslationVector t, std::int64_t threshold,
                            std::vector<HeadEntry> head) {
  RaySystem sys(n);
  if (static_cast<int>(t.size()) != n)
    throw InvalidInput("invariant violated: translation vector must have length n");
  if (std::accumulate(t.begin(), t.end(), std::int64_t{0}) != 0)
    throw InvalidInput("invariant violated: translation vector must sum to zero");
  if (threshold < 0) throw InvalidInput("invariant violated: threshold must be >= 0");
  for (int j = 1; j <= n; ++j)
    if (threshold + t[j - 1] < 0)
      throw InvalidInput("invariant violated: translation beyond threshold leaves ray " +
                         std::to_string(j));
  std::sort(head.begin(), head.end(), by_first);
  for (std::size_t i = 0; i < head.size(); ++i) {
    const auto& [p, q] = head[i];
    if (!sys.contains(p) || !sys.contains(q))
      throw InvalidInput("invariant violated: head entry " + to_string(p) + " -> " +
                         to_string(q) + " leaves the ray system");
    if (i > 0 && head[i - 1].first == p)
      throw InvalidInput("invariant violated: head lists " + to_string(p) + " twice");
    if (p.pos >= threshold && !(q.ray == p.ray && q.pos == p.pos + t[p.ray - 1]))
      throw InvalidInput("invariant violated: head entry " + to_string(p) +
                         " lies beyond the threshold but is not a translation");
  }
  auto lookup = [&](const RayPoint& p) {
    auto it = std::lower_bound(head.begin(), head.end(), HeadEntry{p, p}, by_first);
    if (it != head.end() && it->first == p) return it->second;
    return RayPoint{p.ray, p.pos + t[p.ray - 1]};
  };
  // Bijectivity: the region below the threshold must map injectively onto the
  // complement of the translated tail.
  std::set<RayPoint> seen;
  for (int j = 1; j <= n; ++j) {
    for (std::int64_t m = 0; m < threshold; ++m) {
      RayPoint q = lookup({j, m});
      if (!sys.contains(q))
        throw InvalidInput("invariant violated: " + to_string({j, m}) + " maps outside R_n");
      if (q.pos >= threshold + t[q.ray - 1])
        throw InvalidInput("invariant violated: not a bijection (image " + to_string(q) +
                           " is also hit by the translated tail)");
      if (!seen.insert(q).second)
        throw InvalidInput("invariant violated: not a bijection (" + to_string(q) +
                           " has two preimages)");
    }
  }
  std::vector<std::int64_t> depth(static_cast<std::size_t>(n), threshold);
  return canonical_from_region(n, t, depth, lookup);
}

Element Element::finitary(int n, std::span<const HeadEntry> mapping) {
  RaySystem sys(n);
  std::map<RayPoint, RayPoint> table;
  std::set<RayPoint> images;
  for (const auto& [p, q] : mapping) {
    sys.check(p);
    sys.check(q);
    if (!table.emplace(p, q).second) throw InvalidInput("point mapped twice: " + to_string(p));
    if (!images.insert(q).second) throw InvalidInput("point hit twice: " + to_string(q));
  }
  std::set<RayPoint> domain;
  for (const auto& [p, q] : table) domain.insert(p);
  if (domain != images) throw InvalidInput("finitary table is not a permutation of its domain");
  std::int64_t depth = 0;
  for (const auto& p : domain) depth = std::max(depth, p.pos + 1);
  std::vector<HeadEntry> head;
  for (const auto& [p, q] : table)
    if (p != q) head.emplace_back(p, q);
  return from_table(n, TranslationVector(static_cast<std::size_t>(n), 0), depth, std::move(head));
}

Element Element::cycle(int n, std::span<const RayPoint> points) {
  std::vector<HeadEntry> table;
  for (std::size_t i = 0; i < points.size(); ++i)
    table.emplace_back(points[i], points[(i + 1) % points.size()]);
  return finitary(n, table);
}

Element Element::transposition(int n, RayPoint a, RayPoint b) {
  const RayPoint pts[] = {a, b};
  return cycle(n, pts);
}

Element Element::generator(int n, int j) {
  if (n < 2 || j < 2 || j > n)
    throw InvalidInput("generator g_j needs n >= 2 and 2 <= j <= n (got n=" + std::to_string(n) +
                       ", j=" + std::to_string(j) + ")");
  TranslationVector t(static_cast<std::size_t>(n), 0);
  t[0] = 1;
  t[j - 1] = -1;
  return from_table(n, std::move(t), 1, {{{j, 0}, {1, 0}}});
}

std::int64_t Element::max_abs_translation() const noexcept {
  std::int64_t m = 0;
  for (auto x : t_) m = std::max(m, abs64(x));
  return m;
}

std::int64_t Element::oracle_depth() const noexcept {
  return threshold_ + 3 * std::max<std::int64_t>(1, max_abs_translation());
}

RayPoint Element::apply(const RayPoint& p) const {
  if (p.pos < threshold_) {
    auto it = std::lower_bound(head_.begin(), head_.end(), HeadEntry{p, p}, by_first);
    if (it != head_.end() && it->first == p) return it->second;
  }
  return {p.ray, p.pos + t_[p.ray - 1]};
}

RayPoint Element::apply_inverse(const RayPoint& q) const {
  auto it = std::lower_bound(inv_head_.begin(), inv_head_.end(), HeadEntry{q, q}, by_first);
  if (it != inv_head_.end() && it->first == q) return it->second;
  return {q.ray, q.pos - t_[q.ray - 1]};
}

Element Element::operator*(const Element& h) const {
  if (n_ != h.n_) throw InvalidInput("cannot compose elements of different H_n");
  TranslationVector t(t_);
  for (int j = 0; j < n_; ++j) t[j] += h.t_[j];
  std::vector<std::int64_t> depth(static_cast<std::size_t>(n_));
  for (int j = 0; j < n_; ++j)
    depth[j] = std::max<std::int64_t>({0, threshold_, h.threshold_ - t_[j]});
  return canonical_from_region(n_, std::move(t), depth,
                               [&](const RayPoint& p) { return h.apply(apply(p)); });
}

Element Element::inverse() const {
  Element g(n_, t_);
  for (auto& x : g.t_) x = -x;
  g.head_ = inv_head_;
  g.inv_head_ = head_;
  for (const auto& [p, q] : g.head_) g.threshold_ = std::max(g.threshold_, p.pos + 1);
  return g;
}

Element Element::pow(std::int64_t k) const {
  Element base = k < 0 ? inverse() : *this;
  std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
  Element acc = identity(n_);
  while (e) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

bool Element::is_finitary() const noexcept {
  return std::all_of(t_.begin(), t_.end(), [](auto x) { return x == 0; });
}

SupportDescription Element::support() const {
  SupportDescription s;
  for (int j = 1; j <= n_; ++j) {
    if (t_[j - 1] != 0) s.translated_rays.push_back(j);
    for (std::int64_t m = 0; m < threshold_; ++m)
      if (apply({j, m}) != RayPoint{j, m}) s.moved_below_threshold.push_back({j, m});
  }
  return s;
}

std::vector<RayPoint> Element::finitary_support() const {
  if (!is_finitary()) throw InvalidInput("element is not finitary");
  std::vector<RayPoint> out;
  for (const auto& [p, q] : head_)
    if (p != q) out.push_back(p);
  return out;
}

CycleStructure Element::cycle_structure() const {
  CycleStructure cs;
  std::set<RayPoint> visited;
  auto escapes = [&](const RayPoint& q) { return q.pos >= threshold_ && t_[q.ray - 1] != 0; };
  for (int j = 1; j <= n_; ++j) {
    for (std::int64_t m = 0; m < threshold_; ++m) {
      RayPoint start{j, m};
      if (visited.count(start)) continue;
      std::vector<RayPoint> path{start};
      RayPoint cur = apply(start);
      bool closed = false;
      while (true) {
        if (cur == start) {
          closed = true;
          break;
        }
        if (escapes(cur) || visited.count(cur)) break;
        path.push_back(cur);
        cur = apply(cur);
      }
      if (closed) {
        visited.insert(path.begin(), path.end());
        if (path.size() > 1) cs.finite_cycles.push_back(std::move(path));
      }
      // Points on infinite cycles are left unvisited; they are revisited cheaply
      // and never close.
    }
  }
  std::int64_t l1 = 0;
  for (auto x : t_) l1 += abs64(x);
  cs.infinite_cycle_count = l1 / 2;
  auto [fin, inf] = window_cycle_counts(*this, oracle_depth());
  cs.window_cross_check = fin == static_cast<std::int64_t>(cs.finite_cycles.size()) &&
                          inf == cs.infinite_cycle_count;
  return cs;
}

std::pair<std::int64_t, std::int64_t> window_cycle_counts(const Element& g, std::int64_t depth) {
  Window w(g.n(), depth);
  DisjointSets sets(w.size());
  std::vector<std::int64_t> edges(static_cast<std::size_t>(w.size()), 0);
  for (std::int64_t i = 0; i < w.size(); ++i) {
    RayPoint q = g.apply(w.point(i));
    if (w.contains(q)) {
      sets.unite(i, w.index(q));
      ++edges[i];
    }
  }
  std::map<std::int64_t, std::pair<std::int64_t, std::int64_t>> comp;  // root -> (size, edges)
  for (std::int64_t i = 0; i < w.size(); ++i) {
    auto& c = comp[sets.find(i)];
    ++c.first;
    c.second += edges[i];
  }
  std::int64_t finite = 0, infinite = 0;
  for (const auto& [root, c] : comp) {
    if (c.second < c.first)
      ++infinite;
    else if (c.first > 1)
      ++finite;
  }
  return {finite, infinite};
}

std::vector<RayPoint> Element::aop_exceptional_set() const {
  // Only points below the threshold can take part in an order violation.  A point
  // that changes ray conflicts with infinitely many far points, so it is forced.
  // The remaining points stay on their rays, where violations are exactly the
  // inversions of the image sequence; the least cover is the complement of a
  // longest increasing subsequence.
  std::vector<RayPoint> out;
  for (int j = 1; j <= n_; ++j) {
    std::vector<RayPoint> stay;
    std::vector<std::int64_t> img;
    for (std::int64_t m = 0; m < threshold_; ++m) {
      RayPoint q = apply({j, m});
      if (q.ray != j)
        out.push_back({j, m});
      else {
        stay.push_back({j, m});
        img.push_back(q.pos);
      }
    }
    // Patience sorting with predecessor links.
    std::vector<std::size_t> tails, prev(img.size(), SIZE_MAX);
    for (std::size_t i = 0; i < img.size(); ++i) {
      auto it = std::lower_bound(tails.begin(), tails.end(), img[i],
                                 [&](std::size_t k, std::int64_t v) { return img[k] < v; });
      if (it != tails.begin()) prev[i] = *(it - 1);
      if (it == tails.end())
        tails.push_back(i);
      else
        *it = i;
    }
    std::vector<bool> keep(img.size(), false);
    for (std::size_t k = tails.empty() ? SIZE_MAX : tails.back(); k != SIZE_MAX; k = prev[k])
      keep[k] = true;
    for (std::size_t i = 0; i < stay.size(); ++i)
      if (!keep[i]) out.push_back(stay[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t Element::hash() const noexcept {
  std::size_t h = std::hash<int>{}(n_);
  auto mix = [&h](std::uint64_t v) { h ^= std::hash<std::uint64_t>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  for (auto x : t_) mix(static_cast<std::uint64_t>(x));
  for (const auto& [p, q] : head_) {
    mix(static_cast<std::uint64_t>(p.ray) << 40 ^ static_cast<std::uint64_t>(p.pos));
    mix(static_cast<std::uint64_t>(q.ray) << 40 ^ static_cast<std::uint64_t>(q.pos));
  }
  return h;
}

Element commutator(const Element& a, const Element& b) {
  return a * b * a.inverse() * b.inverse();
}

Element random_element(int n, int head_budget, std::int64_t t_bound, std::uint64_t seed) {
  if (n < 1 || head_budget < 0 || t_bound < 0) throw InvalidInput("bad random_element parameters");
  Rng rng(seed);
  TranslationVector t(static_cast<std::size_t>(n), 0);
  if (n >= 2 && t_bound > 0) {
    while (true) {
      std::int64_t sum = 0;
      for (int j = 1; j < n; ++j) sum += t[j] = rng.uniform(-t_bound, t_bound);
      t[0] = -sum;
      if (abs64(t[0]) <= t_bound) break;
    }
  }
  // Finitary scramble on a random subset of a small box.
  const std::int64_t box = 2 * head_budget + 2;
  std::vector<RayPoint> pts;
  for (int j = 1; j <= n; ++j)
    for (std::int64_t m = 0; m < box; ++m) pts.push_back({j, m});
  rng.shuffle(pts);
  auto k = static_cast<std::size_t>(rng.uniform(0, head_budget));
  pts.resize(std::min(k, pts.size()));
  std::vector<RayPoint> images = pts;
  rng.shuffle(images);
  std::vector<Element::HeadEntry> table;
  for (std::size_t i = 0; i < pts.size(); ++i) table.emplace_back(pts[i], images[i]);
  Element g = Element::finitary(n, table);
  // Pure translation part: prod_j g_j^{-t_j} has vector t.
  for (int j = 2; j <= n; ++j)
    if (t[j - 1] != 0) g = g * Element::generator(n, j).pow(-t[j - 1]);
  return g;
}

}  // namespace houghton
