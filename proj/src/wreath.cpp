#include "houghton/wreath.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_set>

#include "houghton/errors.hpp"
#include "houghton/random.hpp"

namespace houghton {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::set<RayPoint> keys(const MultiWreathElement& x) {
  std::set<RayPoint> out;
  for (const auto& [k, v] : x.base) out.insert(k);
  return out;
}

void check_context(const BlockContext& ctx, const MultiWreathElement& x) {
  if (x.context != ctx.fingerprint()) throw InvalidInput("wreath element belongs to a different block context");
}

}  // namespace

BlockContext::BlockContext(const GeneratedSubgroup& g, BlockSystem b, std::int64_t w)
    : group_(g), blocks_(std::move(b)), depth_(w), quotient_(g, blocks_, w) {
  for (auto& blk : blocks_.blocks) std::sort(blk.begin(), blk.end());
  auto v = verify_block_system(g, blocks_, w);
  if (!v.valid()) throw InvalidInput("block system failed verification: " + v.witness);
  refresh_fingerprint();
}

void BlockContext::refresh_fingerprint() {
  std::uint64_t h = static_cast<std::uint64_t>(depth_);
  for (const auto& blk : blocks_.blocks)
    for (const auto& p : blk) h = mix(h, static_cast<std::uint64_t>(p.ray) * 1000003 + static_cast<std::uint64_t>(p.pos));
  for (const auto& x : group_.generators) h = mix(h, x.hash());
  for (const auto& [k, s] : overrides_) {
    h = mix(h, static_cast<std::uint64_t>(k.ray) * 1000003 + static_cast<std::uint64_t>(k.pos));
    for (int x : s) h = mix(h, static_cast<std::uint64_t>(x));
  }
  fingerprint_ = h;
}

int BlockContext::class_of_key(const RayPoint& key) const {
  auto k = quotient_.class_index(key);
  if (!k || quotient_.classes()[*k].front() != key)
    throw InvalidInput(to_string(key) + " is not the key of a class known on the window");
  return *k;
}

RayPoint BlockContext::key_to_qpoint(const RayPoint& key) const { return quotient_.quotient_point(class_of_key(key)); }

RayPoint BlockContext::qpoint_to_key(const RayPoint& q) const {
  auto k = quotient_.class_at(q);
  if (!k) throw Inconclusive("quotient point " + to_string(q) + " lies beyond the window", 2 * depth_);
  return quotient_.classes()[*k].front();
}

std::optional<RayPoint> BlockContext::key_of(const RayPoint& p) const {
  auto k = quotient_.class_index(p);
  if (!k) return std::nullopt;
  return quotient_.classes()[*k].front();
}

const std::vector<RayPoint>& BlockContext::class_points(const RayPoint& key) const {
  return quotient_.classes()[class_of_key(key)];
}

int BlockContext::block_of(const RayPoint& key) const { return quotient_.block_of_class(class_of_key(key)); }

RayPoint BlockContext::act(const RayPoint& key, const Element& head) const {
  return qpoint_to_key(head.apply(key_to_qpoint(key)));
}

void BlockContext::override_transversal(const RayPoint& key, Perm sigma) {
  if (sigma.size() != class_points(key).size() || !is_perm(sigma)) throw InvalidInput("transversal override has the wrong size");
  if (is_identity(sigma))
    overrides_.erase(key);
  else
    overrides_[key] = std::move(sigma);
  refresh_fingerprint();
}

MultiWreathElement wreath_identity(const BlockContext& ctx) {
  return {{}, Element::identity(ctx.quotient().n()), ctx.fingerprint()};
}

MultiWreathElement multiply(const BlockContext& ctx, const MultiWreathElement& x, const MultiWreathElement& y) {
  check_context(ctx, x);
  check_context(ctx, y);
  MultiWreathElement out{{}, x.head * y.head, ctx.fingerprint()};
  std::map<RayPoint, Perm> shifted;  // w -> phi2(w a1)
  for (const auto& [k, v] : y.base) shifted.emplace(ctx.qpoint_to_key(x.head.apply_inverse(ctx.key_to_qpoint(k))), v);
  std::set<RayPoint> support = keys(x);
  for (const auto& [k, v] : shifted) support.insert(k);
  for (const auto& k : support) {
    auto a = x.base.find(k);
    auto b = shifted.find(k);
    Perm value;
    if (a == x.base.end())
      value = b->second;
    else if (b == shifted.end())
      value = a->second;
    else {
      if (a->second.size() != b->second.size()) throw InvalidInput("base values of different block types at " + to_string(k));
      value = compose(a->second, b->second);
    }
    if (!is_identity(value)) out.base.emplace(k, std::move(value));
  }
  return out;
}

MultiWreathElement inverse(const BlockContext& ctx, const MultiWreathElement& x) {
  check_context(ctx, x);
  // (phi, a)^-1 = (w -> phi(w a^-1)^-1, a^-1).
  MultiWreathElement out{{}, x.head.inverse(), ctx.fingerprint()};
  for (const auto& [k, v] : x.base) out.base.emplace(ctx.act(k, x.head), houghton::inverse(v));
  return out;
}

std::vector<RayPoint> non_order_preserving_classes(const Element& g, const BlockContext& ctx) {
  std::set<RayPoint> out;
  for (int r = 1; r <= g.n(); ++r)
    for (std::int64_t m = 0; m < g.threshold(); ++m) {
      auto key = ctx.key_of({r, m});
      if (!key) throw Inconclusive("class of " + to_string(RayPoint{r, m}) + " is not known on the window", 2 * ctx.depth());
      const auto& pts = ctx.class_points(*key);
      for (std::size_t k = 1; k < pts.size(); ++k)
        if (!(g.apply(pts[k - 1]) < g.apply(pts[k]))) {
          out.insert(*key);
          break;
        }
    }
  return {out.begin(), out.end()};
}

MultiWreathElement kk_embed(const Element& g, const BlockContext& ctx) {
  MultiWreathElement out{{}, ctx.quotient().induce(g), ctx.fingerprint()};
  // Beyond the threshold g is order preserving on every class, so only classes
  // meeting the threshold region (and classes touching a non-identity
  // transversal) can carry a non-identity value.
  std::set<RayPoint> candidates;
  auto need_key = [&](const RayPoint& p) {
    auto key = ctx.key_of(p);
    if (!key) throw Inconclusive("class of " + to_string(p) + " is not known on the window", 2 * ctx.depth());
    return *key;
  };
  for (int r = 1; r <= g.n(); ++r)
    for (std::int64_t m = 0; m < g.threshold(); ++m) candidates.insert(need_key({r, m}));
  for (const auto& [k, s] : ctx.transversal_overrides()) {
    candidates.insert(k);
    candidates.insert(need_key(g.apply_inverse(k)));
  }
  auto sigma = [&](const RayPoint& key, std::size_t size) {
    auto it = ctx.transversal_overrides().find(key);
    return it == ctx.transversal_overrides().end() ? identity_perm(static_cast<int>(size)) : it->second;
  };
  for (const auto& key : candidates) {
    const auto& pts = ctx.class_points(key);
    const Perm s_from = sigma(key, pts.size());
    RayPoint target_key = need_key(g.apply(pts.front()));
    const auto& target = ctx.class_points(target_key);
    if (target.size() != pts.size()) throw InvalidInput("element does not respect the congruence");
    const Perm s_to_inv = houghton::inverse(sigma(target_key, target.size()));
    Perm value(pts.size());
    for (std::size_t a = 0; a < pts.size(); ++a) {
      RayPoint q = g.apply(pts[s_from[a]]);
      auto it = std::lower_bound(target.begin(), target.end(), q);
      if (it == target.end() || *it != q) throw InvalidInput("element does not respect the congruence at " + to_string(key));
      value[a] = s_to_inv[it - target.begin()];
    }
    if (!is_identity(value)) out.base.emplace(key, std::move(value));
  }
  return out;
}

KkReport verify_kk(const BlockContext& ctx, std::size_t samples, std::uint64_t seed, int max_word_length) {
  KkReport rep;
  const auto& g = ctx.group();
  Rng rng(seed);
  auto random_word = [&] {
    Element e = Element::identity(g.n);
    const auto len = rng.uniform(0, max_word_length);
    for (std::int64_t k = 0; k < len && !g.generators.empty(); ++k) {
      const auto& x = g.generators[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(g.generators.size()) - 1))];
      e = e * (rng.uniform(0, 1) ? x : x.inverse());
    }
    return e;
  };
  auto note = [&](const std::string& s) {
    if (rep.first_failure.empty()) rep.first_failure = s;
  };
  for (std::size_t k = 0; k < samples; ++k) {
    Element a = random_word(), b = random_word();
    ++rep.pairs;
    try {
      auto ka = kk_embed(a, ctx), kb = kk_embed(b, ctx), kab = kk_embed(a * b, ctx);
      if (!(multiply(ctx, ka, kb) == kab)) {
        ++rep.homomorphism_failures;
        note("kappa(gh) != kappa(g) kappa(h) on sample " + std::to_string(k));
      }
      if (!(a == b) && ka == kb) {
        ++rep.injectivity_failures;
        note("distinct elements with equal images on sample " + std::to_string(k));
      }
      for (const auto* x : {&a, &b}) {
        auto expect = non_order_preserving_classes(*x, ctx);
        auto got = keys(x == &a ? ka : kb);
        if (std::vector<RayPoint>(got.begin(), got.end()) != expect) {
          ++rep.support_mismatches;
          note("base support differs from the non-order-preserving classes on sample " + std::to_string(k));
        }
      }
    } catch (const Inconclusive&) {
      ++rep.inconclusive;
    }
  }
  return rep;
}

namespace {

bool same_group(const FinitePermGroup& a, const FinitePermGroup& b) {
  for (const auto& x : a.generators())
    if (!b.contains(x)) return false;
  for (const auto& x : b.generators())
    if (!a.contains(x)) return false;
  return true;
}

// Whether x fixes every class in the lower half of the known window.
bool acts_trivially(const Element& x, const QuotientStructure& q) {
  for (std::size_t k = 0; k < q.classes().size(); ++k) {
    const auto& qp = q.quotient_point(static_cast<int>(k));
    if (2 * qp.pos >= q.extent()[qp.ray - 1]) continue;
    auto c = q.class_index(x.apply(q.classes()[k].front()));
    if (!c || *c != static_cast<int>(k)) return false;
  }
  return true;
}

}  // namespace

std::vector<WGroups> w_groups(const BlockContext& ctx, int radius, std::size_t cap) {
  const auto& g = ctx.group();
  auto words = ball(g, radius, cap);
  std::vector<WGroups> out;
  for (std::size_t r = 0; r < ctx.blocks().blocks.size(); ++r) {
    const auto& blk = ctx.blocks().blocks[r];
    const int d = static_cast<int>(blk.size());
    std::vector<Perm> all, fin, ker;
    std::vector<Element> ker_elems;
    std::set<Perm> ker_seen;
    for (const auto& we : words) {
      Perm p(blk.size());
      bool stable = true;
      for (std::size_t a = 0; a < blk.size() && stable; ++a) {
        auto it = std::lower_bound(blk.begin(), blk.end(), we.element.apply(blk[a]));
        stable = it != blk.end() && *it == we.element.apply(blk[a]);
        if (stable) p[a] = static_cast<int>(it - blk.begin());
      }
      if (!stable) continue;
      all.push_back(p);
      if (!we.element.is_finitary()) continue;
      fin.push_back(p);
      if (acts_trivially(we.element, ctx.quotient())) {
        ker.push_back(p);
        if (!is_identity(p) && ker_seen.insert(p).second) ker_elems.push_back(we.element);
      }
    }
    WGroups wg{static_cast<int>(r), FinitePermGroup(d, all), FinitePermGroup(d, fin), FinitePermGroup(d, ker), false, false,
               std::move(ker_elems)};
    wg.group_equals_finitary = same_group(wg.of_group, wg.of_finitary);
    wg.finitary_equals_kernel = same_group(wg.of_finitary, wg.of_kernel);
    out.push_back(std::move(wg));
  }
  return out;
}

std::optional<Element> lift_head(const BlockContext& ctx, const Element& h, int radius, std::size_t cap) {
  const auto& g = ctx.group();
  const auto& q = ctx.quotient();
  struct Node {
    Element element, head;
    int length;
  };
  std::vector<std::pair<Element, Element>> letters;
  for (std::size_t k = 0; k < g.generators.size(); ++k) {
    const Element& rho = q.induced_generators()[k];
    letters.emplace_back(g.generators[k], rho);
    letters.emplace_back(g.generators[k].inverse(), rho.inverse());
  }
  std::unordered_set<Element, ElementHash> seen;
  std::deque<Node> queue;
  queue.push_back({Element::identity(g.n), Element::identity(q.n()), 0});
  seen.insert(queue.front().head);
  std::size_t count = 0;
  while (!queue.empty() && count++ < cap) {
    Node cur = std::move(queue.front());
    queue.pop_front();
    if (cur.head == h) return cur.element;
    if (cur.length >= radius) continue;
    for (const auto& [x, rho] : letters) {
      Element head = cur.head * rho;
      if (!seen.insert(head).second) continue;
      queue.push_back({cur.element * x, std::move(head), cur.length + 1});
    }
  }
  return std::nullopt;
}

DescentResult phi_s_descent(const MultiWreathElement& alpha, const BlockContext& ctx, const std::vector<Element>& f,
                            const DescentOptions& opts) {
  check_context(ctx, alpha);
  DescentResult res;
  std::set<RayPoint> s_set;
  for (const auto& x : f) {
    if (!x.is_finitary()) throw InvalidInput("descent elements must be finitary kernel elements");
    for (const auto& [k, v] : kk_embed(x, ctx).base) s_set.insert(k);
  }
  auto off_support = [&](const MultiWreathElement& a) {
    std::vector<RayPoint> out;
    for (const auto& [k, v] : a.base)
      if (!s_set.count(k)) out.push_back(k);
    return out;
  };

  auto g1 = lift_head(ctx, alpha.head, opts.head_radius, opts.node_cap);
  if (!g1) {
    res.note = "inconclusive: head not realised within the word budget";
    return res;
  }
  MultiWreathElement cur = multiply(ctx, alpha, inverse(ctx, kk_embed(*g1, ctx)));
  Element acc = *g1;
  res.measures.push_back(off_support(cur).size());

  std::vector<WordElement> movers = ball(ctx.group(), opts.mover_radius, opts.node_cap);
  while (true) {
    auto off = off_support(cur);
    if (off.empty()) break;
    const RayPoint omega = off.front();
    const Perm& want = cur.base.at(omega);
    const auto& omega_pts = ctx.class_points(omega);
    bool stepped = false;
    for (const auto& we : movers) {
      const Element& x = we.element;
      for (const auto& fe : f) {
        // supp(x^-1 f x) = supp(f) x must meet the class.
        bool meets = false;
        for (const auto& p : omega_pts) meets = meets || fe.apply(x.apply_inverse(p)) != x.apply_inverse(p);
        if (!meets) continue;
        Element c = x.inverse() * fe * x;
        MultiWreathElement kc;
        try {
          kc = kk_embed(c, ctx);
        } catch (const Inconclusive&) {
          continue;
        }
        if (!kc.head.is_identity()) continue;
        auto it = kc.base.find(omega);
        if (it == kc.base.end() || it->second != want) continue;
        bool inside = std::all_of(kc.base.begin(), kc.base.end(),
                                  [&](const auto& kv) { return kv.first == omega || s_set.count(kv.first) > 0; });
        if (!inside) continue;
        cur = multiply(ctx, cur, inverse(ctx, kc));
        acc = c * acc;
        stepped = true;
        break;
      }
      if (stepped) break;
    }
    if (!stepped) {
      res.note = "inconclusive: no conjugate of F clears " + to_string(omega) + " within the word budget";
      res.s = cur;
      res.g = acc;
      return res;
    }
    const std::size_t m = off_support(cur).size();
    if (m >= res.measures.back()) throw std::logic_error("descent step did not reduce the support outside S");
    res.measures.push_back(m);
  }
  res.success = true;
  res.s = cur;
  res.g = acc;
  return res;
}

}  // namespace houghton
