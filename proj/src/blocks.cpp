#include "houghton/blocks.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "houghton/errors.hpp"

namespace houghton {

namespace {

std::vector<std::pair<Element, Element>> letters(const GeneratedSubgroup& g) {
  // (x, x^-1) for every generator and inverse.
  std::vector<std::pair<Element, Element>> out;
  for (const auto& x : g.generators) {
    out.emplace_back(x, x.inverse());
    out.emplace_back(x.inverse(), x);
  }
  return out;
}

std::vector<RayPoint> image_of(const std::vector<RayPoint>& s, const Element& x) {
  std::vector<RayPoint> out;
  out.reserve(s.size());
  for (const auto& p : s) out.push_back(x.apply(p));
  std::sort(out.begin(), out.end());
  return out;
}

std::string set_string(const std::vector<RayPoint>& s) {
  std::string out = "{";
  for (std::size_t k = 0; k < s.size(); ++k) out += (k ? "," : "") + to_string(s[k]);
  return out + "}";
}

struct Dsu {
  std::vector<std::int64_t> parent, size;
  explicit Dsu(std::int64_t n) : parent(static_cast<std::size_t>(n)), size(static_cast<std::size_t>(n), 1) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::int64_t find(std::int64_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  // Returns the merged size, or 0 if already joined.
  std::int64_t unite(std::int64_t a, std::int64_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return 0;
    if (a > b) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
    return size[a];
  }
};

}  // namespace

TranslateCongruence::TranslateCongruence(const GeneratedSubgroup& g, const BlockSystem& b,
                                         std::int64_t explore_depth)
    : coverage_(static_cast<std::size_t>(g.n), 0) {
  auto moves = letters(g);
  std::deque<int> queue;
  auto add = [&](std::vector<RayPoint> t, int origin) {
    auto it = owner_.find(t.front());
    if (it != owner_.end()) {
      if (translates_[it->second] != t && consistent_) {
        consistent_ = false;
        conflict_ = "translates " + set_string(translates_[it->second]) + " and " + set_string(t) +
                    " overlap but differ";
      }
      return;
    }
    for (const auto& p : t)
      if (owner_.count(p)) {
        if (consistent_) {
          consistent_ = false;
          conflict_ = "translate " + set_string(t) + " overlaps " + set_string(translates_[owner_.at(p)]);
        }
        return;
      }
    const int id = static_cast<int>(translates_.size());
    for (const auto& p : t) owner_.emplace(p, id);
    translates_.push_back(std::move(t));
    origin_.push_back(origin);
    queue.push_back(id);
  };
  for (std::size_t k = 0; k < b.blocks.size(); ++k) {
    if (b.blocks[k].empty()) throw InvalidInput("empty block");
    std::vector<RayPoint> s = b.blocks[k];
    std::sort(s.begin(), s.end());
    add(std::move(s), static_cast<int>(k));
  }
  while (!queue.empty() && consistent_) {
    const int id = queue.front();
    queue.pop_front();
    for (const auto& [x, xi] : moves) {
      auto t = image_of(translates_[id], x);
      bool near = std::any_of(t.begin(), t.end(), [&](const RayPoint& p) { return p.pos < explore_depth; });
      if (near) add(std::move(t), origin_[id]);
      if (!consistent_) break;
    }
  }
  for (int r = 1; r <= g.n; ++r) {
    std::int64_t c = 0;
    while (owner_.count({r, c})) ++c;
    coverage_[r - 1] = c;
  }
}

std::int64_t TranslateCongruence::covered_depth() const {
  return *std::min_element(coverage_.begin(), coverage_.end());
}

std::optional<int> TranslateCongruence::translate_of(const RayPoint& p) const {
  auto it = owner_.find(p);
  if (it == owner_.end()) return std::nullopt;
  return it->second;
}

int TranslateCongruence::multi_ray_count() const {
  int count = 0;
  for (const auto& t : translates_) count += t.front().ray != t.back().ray;
  return count;
}

std::int64_t block_size_bound(const Lattice& l) {
  auto idx = l.index_in_zero_sum();
  if (!idx) throw InvalidInput("block size bound needs a lattice of full Hirsch length");
  return *idx;
}

BlockVerification verify_block_system(const GeneratedSubgroup& g, const BlockSystem& b, std::int64_t w) {
  BlockVerification v;
  RaySystem sys(g.n);
  std::set<RayPoint> used;
  for (const auto& blk : b.blocks) {
    if (blk.empty()) throw InvalidInput("empty block");
    for (const auto& p : blk) {
      sys.check(p);
      if (p.pos >= w) throw InvalidInput("block point " + to_string(p) + " lies outside the verification window");
      if (!used.insert(p).second && v.disjoint) {
        v.disjoint = false;
        v.witness = "point " + to_string(p) + " lies in two blocks";
      }
    }
  }
  auto orbits = orbit_windows(g, w);
  for (std::size_t c = 0; c < orbits.classes.size(); ++c) {
    int meets = 0;
    for (const auto& blk : b.blocks) {
      bool hit = std::any_of(blk.begin(), blk.end(), [&](const RayPoint& p) { return orbits.class_of(p) == static_cast<int>(c); });
      meets += hit;
      if (hit && blk.size() >= orbits.classes[c].points.size()) {
        std::set<RayPoint> s(blk.begin(), blk.end());
        if (std::all_of(orbits.classes[c].points.begin(), orbits.classes[c].points.end(),
                        [&](const RayPoint& p) { return s.count(p) > 0; }))
          v.proper = false;
      }
    }
    if (meets != 1 && v.orbit_incidence) {
      v.orbit_incidence = false;
      if (v.witness.empty())
        v.witness = "orbit class of " + to_string(orbits.classes[c].points.front()) + " meets " +
                    std::to_string(meets) + " blocks";
    }
  }
  std::vector<std::vector<RayPoint>> sorted;
  for (auto blk : b.blocks) {
    std::sort(blk.begin(), blk.end());
    sorted.push_back(std::move(blk));
  }
  visit_ball(g, 3, 100000, [&](const WordElement& we) {
    ++v.words_checked;
    for (const auto& blk : sorted) {
      auto img = image_of(blk, we.element);
      bool meets = false;
      for (const auto& p : img) meets = meets || std::binary_search(blk.begin(), blk.end(), p);
      if (meets && img != blk) {
        v.equivariant = false;
        if (v.witness.empty())
          v.witness = "block " + set_string(blk) + " under " + word_string(g, we.word) + " gives " + set_string(img);
        return false;
      }
    }
    return true;
  });
  if (v.disjoint) {
    TranslateCongruence cong(g, b, 2 * w);
    v.translates_consistent = cong.consistent();
    if (!cong.consistent() && v.witness.empty()) v.witness = cong.conflict();
  }
  return v;
}

BlockSearchResult find_block_systems(const GeneratedSubgroup& g, std::int64_t w, std::int64_t e) {
  if (e < 1) throw InvalidInput("block size bound must be positive");
  BlockSearchResult res;
  auto orbits = orbit_windows(g, w);
  Window win(g.n, 2 * w);
  auto moves = letters(g);
  auto seeds = Window(g.n, w).points();
  seeds.resize(std::min<std::size_t>(seeds.size(), static_cast<std::size_t>(4 * e)));

  for (const auto& oc : orbits.classes) {
    const RayPoint p = oc.points.front();
    for (const auto& q : seeds) {
      if (q == p) continue;
      ++res.seeds_tried;
      Dsu dsu(win.size());
      std::vector<std::pair<std::int64_t, std::int64_t>> queue;
      bool too_big = false;
      auto join = [&](std::int64_t a, std::int64_t b) {
        std::int64_t s = dsu.unite(a, b);
        if (s == 0) return;
        if (s > e) too_big = true;
        queue.emplace_back(a, b);
      };
      join(win.index(p), win.index(q));
      for (std::size_t k = 0; k < queue.size() && !too_big; ++k) {
        const RayPoint a = win.point(queue[k].first), b = win.point(queue[k].second);
        for (const auto& [x, xi] : moves) {
          RayPoint xa = x.apply(a), xb = x.apply(b);
          if (win.contains(xa) && win.contains(xb)) join(win.index(xa), win.index(xb));
          if (too_big) break;
        }
      }
      if (too_big) continue;
      auto class_of = [&](const RayPoint& x) {
        std::vector<RayPoint> c;
        const auto root = dsu.find(win.index(x));
        for (std::int64_t i = 0; i < win.size(); ++i)
          if (dsu.find(i) == root) c.push_back(win.point(i));
        return c;
      };
      BlockSystem sys;
      std::set<int> met;
      bool rejected = false;
      for (std::size_t c = 0; c < orbits.classes.size() && !rejected; ++c) {
        if (met.count(static_cast<int>(c))) continue;
        auto blk = class_of(orbits.classes[c].points.front());
        for (const auto& x : blk) {
          if (x.pos >= w) {
            rejected = true;
            break;
          }
          met.insert(orbits.class_of(x));
        }
        sys.blocks.push_back(std::move(blk));
      }
      if (rejected) continue;
      bool nontrivial = std::any_of(sys.blocks.begin(), sys.blocks.end(), [](const auto& blk) { return blk.size() > 1; });
      if (!nontrivial) continue;
      auto v = verify_block_system(g, sys, w);
      if (!v.valid() || !v.proper) continue;
      std::sort(sys.blocks.begin(), sys.blocks.end());
      if (std::find(res.systems.begin(), res.systems.end(), sys) == res.systems.end())
        res.systems.push_back(std::move(sys));
    }
  }
  std::sort(res.systems.begin(), res.systems.end(),
            [](const BlockSystem& a, const BlockSystem& b) { return a.blocks < b.blocks; });
  return res;
}

Element infer_element(int n, const std::vector<std::int64_t>& extent,
                      const std::function<std::optional<RayPoint>(const RayPoint&)>& image) {
  const std::int64_t hint = 2 * *std::max_element(extent.begin(), extent.end()) + 8;
  TranslationVector t(static_cast<std::size_t>(n), 0);
  std::vector<std::int64_t> half(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    const std::int64_t ext = extent[i - 1];
    if (ext < 4) throw Inconclusive("ray " + std::to_string(i) + " has too few known points", hint);
    half[i - 1] = ext / 2;
    // Images near the end of the window may fall outside it; only a suffix of the
    // upper half may be unknown, and the known part must be a constant shift.
    std::optional<std::int64_t> d;
    std::int64_t known = 0;
    bool gap = false;
    for (std::int64_t r = half[i - 1]; r < ext; ++r) {
      auto q = image({i, r});
      if (!q) {
        gap = true;
        continue;
      }
      if (gap || q->ray != i || (d && *d != q->pos - r))
        throw Inconclusive("ray " + std::to_string(i) + " does not settle into a translation on the window", hint);
      d = q->pos - r;
      ++known;
    }
    if (!d || 2 * known < ext - half[i - 1])
      throw Inconclusive("ray " + std::to_string(i) + " has too few known images", hint);
    t[i - 1] = *d;
  }
  if (std::accumulate(t.begin(), t.end(), std::int64_t{0}) != 0)
    throw Inconclusive("inferred translation vector is not zero-sum", hint);
  const std::int64_t threshold = *std::max_element(half.begin(), half.end());
  std::vector<Element::HeadEntry> head;
  for (int i = 1; i <= n; ++i)
    for (std::int64_t r = 0; r < threshold; ++r) {
      RayPoint q{i, r + t[i - 1]};
      if (r < half[i - 1]) {
        auto known = image({i, r});
        if (!known) throw Inconclusive("image of " + to_string(RayPoint{i, r}) + " is not determined by the window", hint);
        q = *known;
      }
      head.emplace_back(RayPoint{i, r}, q);
    }
  try {
    return Element::from_table(n, t, threshold, std::move(head));
  } catch (const InvalidInput& err) {
    throw Inconclusive(std::string("window data does not define an element: ") + err.what(), hint);
  }
}

QuotientStructure::QuotientStructure(const GeneratedSubgroup& g, const BlockSystem& b, std::int64_t w)
    : n_(g.n), depth_(w), cong_(g, b, 2 * w) {
  if (!cong_.consistent()) throw InvalidInput("blocks do not generate a congruence: " + cong_.conflict());
  const auto& cov = cong_.coverage();
  // S_i: translates whose least point lies on ray i, ranked along the ray.
  std::vector<std::pair<RayPoint, int>> mins;
  for (std::size_t id = 0; id < cong_.translates().size(); ++id) {
    const RayPoint m = cong_.translates()[id].front();
    if (m.pos < cov[m.ray - 1] && m.pos < 2 * w) mins.emplace_back(m, static_cast<int>(id));
  }
  std::sort(mins.begin(), mins.end());
  translate_to_class_.assign(cong_.translates().size(), -1);
  by_ray_.assign(static_cast<std::size_t>(n_), {});
  extent_.assign(static_cast<std::size_t>(n_), 0);
  for (const auto& [m, id] : mins) {
    const int k = static_cast<int>(classes_.size());
    translate_to_class_[id] = k;
    classes_.push_back(cong_.translates()[id]);
    class_block_.push_back(cong_.origin(id));
    qpoint_.push_back({m.ray, extent_[m.ray - 1]++});
    by_ray_[m.ray - 1].push_back(k);
  }
  multi_ray_ = cong_.multi_ray_count();
  for (const auto& x : g.generators) induced_.push_back(induce(x));

  visit_ball(g, 3, 20000, [&](const WordElement& we) {
    bool trivial = true;
    for (std::size_t k = 0; k < classes_.size() && trivial; ++k) {
      if (qpoint_[k].pos * 2 >= extent_[qpoint_[k].ray - 1]) continue;
      auto c = class_index(we.element.apply(classes_[k].front()));
      trivial = c && *c == static_cast<int>(k);
    }
    if (trivial) {
      ++kernel_words_;
      kernel_finitary_ = kernel_finitary_ && we.element.is_finitary();
    }
    return true;
  });
}

std::optional<int> QuotientStructure::class_index(const RayPoint& p) const {
  auto id = cong_.translate_of(p);
  if (!id || translate_to_class_[*id] < 0) return std::nullopt;
  return translate_to_class_[*id];
}

std::optional<int> QuotientStructure::class_at(const RayPoint& q) const {
  if (q.ray < 1 || q.ray > n_ || q.pos < 0 || q.pos >= static_cast<std::int64_t>(by_ray_[q.ray - 1].size()))
    return std::nullopt;
  return by_ray_[q.ray - 1][q.pos];
}

int QuotientStructure::block_of_class(int k) const { return class_block_.at(static_cast<std::size_t>(k)); }

Element QuotientStructure::induce(const Element& g) const {
  if (g.n() != n_) throw InvalidInput("element lives in a different H_n");
  auto image = [&](const RayPoint& q) -> std::optional<RayPoint> {
    auto k = class_at(q);
    if (!k) return std::nullopt;
    const auto& cls = classes_[*k];
    std::optional<int> target;
    for (const auto& p : cls) {
      auto id = cong_.translate_of(g.apply(p));
      if (!id) return std::nullopt;
      if (target && *target != *id)
        throw InvalidInput("element does not respect the congruence at class " + to_string(cls.front()));
      target = *id;
    }
    const int c = translate_to_class_[*target];
    if (c < 0) return std::nullopt;
    return qpoint_[c];
  };
  return infer_element(n_, extent_, image);
}

}  // namespace houghton
