#include "houghton/finperm.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "houghton/errors.hpp"

namespace houghton {

Perm identity_perm(int degree) {
  Perm p(static_cast<std::size_t>(degree));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

bool is_perm(const Perm& p) {
  std::vector<bool> hit(p.size(), false);
  for (int x : p) {
    if (x < 0 || x >= static_cast<int>(p.size()) || hit[x]) return false;
    hit[x] = true;
  }
  return true;
}

bool is_identity(const Perm& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != static_cast<int>(i)) return false;
  return true;
}

Perm compose(const Perm& a, const Perm& b) {
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = b[a[i]];
  return r;
}

Perm inverse(const Perm& p) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<int>(i);
  return r;
}

Perm parse_cycles(const std::string& text, int degree) {
  Perm p = identity_perm(degree);
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] != '(') throw InvalidInput("bad cycle notation: " + text);
    auto close = text.find(')', i);
    if (close == std::string::npos) throw InvalidInput("unclosed cycle: " + text);
    std::istringstream in(text.substr(i + 1, close - i - 1));
    std::vector<int> cyc;
    std::string tok;
    while (in >> tok) {
      for (auto& ch : tok)
        if (ch == ',') ch = ' ';
      std::istringstream t(tok);
      int x;
      while (t >> x) cyc.push_back(x);
    }
    for (int x : cyc)
      if (x < 0 || x >= degree) throw InvalidInput("cycle point out of range: " + std::to_string(x));
    Perm c = identity_perm(degree);
    for (std::size_t k = 0; k < cyc.size(); ++k) c[cyc[k]] = cyc[(k + 1) % cyc.size()];
    if (!is_perm(c)) throw InvalidInput("repeated point in cycle: " + text);
    p = compose(p, c);
    i = close + 1;
  }
  return p;
}

std::string cycle_string(const Perm& p) {
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t s = 0; s < p.size(); ++s) {
    if (seen[s] || p[s] == static_cast<int>(s)) continue;
    out += "(";
    for (int x = static_cast<int>(s); !seen[x]; x = p[x]) {
      seen[x] = true;
      out += (out.back() == '(' ? "" : " ") + std::to_string(x);
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

FinitePermGroup::FinitePermGroup(int degree, std::vector<Perm> generators, std::vector<int> base_prefix)
    : degree_(degree) {
  if (degree < 1 || degree > kMaxDegree)
    throw InvalidInput("finite permutation groups are limited to degree 1.." + std::to_string(kMaxDegree));
  for (const auto& g : generators) {
    if (static_cast<int>(g.size()) != degree || !is_perm(g))
      throw InvalidInput("generator is not a permutation of the domain");
    if (!is_identity(g)) gens_.push_back(g);
  }
  std::vector<bool> used(static_cast<std::size_t>(degree), false);
  for (int b : base_prefix) {
    if (b < 0 || b >= degree || used[b]) throw InvalidInput("bad base prefix");
    used[b] = true;
    base_.push_back(b);
  }
  for (int x = 0; x < degree; ++x)
    if (!used[x]) base_.push_back(x);
  level_gens_.assign(base_.size(), {});
  reps_.assign(base_.size(), std::vector<Perm>(static_cast<std::size_t>(degree)));
  for (std::size_t k = 0; k < base_.size(); ++k) reps_[k][base_[k]] = identity_perm(degree);
  for (const auto& g : gens_) add_gen(0, g);
}

// Knuth's formulation of the Sims table: level k holds coset representatives of
// the stabilizer of base_[0..k] in the stabilizer of base_[0..k-1].
bool FinitePermGroup::sift_from(std::size_t level, Perm p) const {
  for (std::size_t k = level; k < base_.size(); ++k) {
    int j = p[base_[k]];
    const Perm& r = reps_[k][j];
    if (r.empty()) return false;
    p = compose(p, inverse(r));
  }
  return true;
}

void FinitePermGroup::add_gen(std::size_t level, const Perm& p) {
  if (level >= base_.size() || sift_from(level, p)) return;
  level_gens_[level].push_back(p);
  std::vector<Perm> current;
  for (const auto& r : reps_[level])
    if (!r.empty()) current.push_back(r);
  for (const auto& r : current) ensure_coset(level, compose(r, p));
}

void FinitePermGroup::ensure_coset(std::size_t level, const Perm& p) {
  int j = p[base_[level]];
  if (reps_[level][j].empty()) {
    reps_[level][j] = p;
    std::vector<Perm> gens = level_gens_[level];
    for (const auto& t : gens) ensure_coset(level, compose(p, t));
  } else {
    add_gen(level + 1, compose(p, inverse(reps_[level][j])));
  }
}

std::vector<int> FinitePermGroup::orbit(int point) const {
  std::vector<int> out{point};
  std::vector<bool> seen(static_cast<std::size_t>(degree_), false);
  seen[point] = true;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& g : gens_)
      if (!seen[g[out[i]]]) {
        seen[g[out[i]]] = true;
        out.push_back(g[out[i]]);
      }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> FinitePermGroup::orbits() const {
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(static_cast<std::size_t>(degree_), false);
  for (int x = 0; x < degree_; ++x) {
    if (seen[x]) continue;
    auto o = orbit(x);
    for (int y : o) seen[y] = true;
    out.push_back(std::move(o));
  }
  return out;
}

bool FinitePermGroup::contains(const Perm& p) const {
  if (static_cast<int>(p.size()) != degree_ || !is_perm(p)) return false;
  return sift_from(0, p);
}

BigInt FinitePermGroup::order() const {
  BigInt o = 1;
  for (const auto& level : reps_) {
    int count = 0;
    for (const auto& r : level) count += r.empty() ? 0 : 1;
    o *= count;
  }
  return o;
}

FinitePermGroup FinitePermGroup::pointwise_stabilizer(std::span<const int> points) const {
  // Rebuild with the points as base prefix; the generators of levels >= |points|
  // then generate the stabilizer.
  std::vector<int> prefix(points.begin(), points.end());
  FinitePermGroup chain(degree_, gens_, prefix);
  std::vector<Perm> stab;
  for (std::size_t k = prefix.size(); k < chain.level_gens_.size(); ++k)
    for (const auto& g : chain.level_gens_[k]) stab.push_back(g);
  return FinitePermGroup(degree_, stab);
}

FinitePermGroup FinitePermGroup::restricted(std::span<const int> subset) const {
  std::map<int, int> index;
  for (std::size_t i = 0; i < subset.size(); ++i) index[subset[i]] = static_cast<int>(i);
  std::vector<Perm> gens;
  for (const auto& g : gens_) {
    Perm r(subset.size());
    for (std::size_t i = 0; i < subset.size(); ++i) {
      auto it = index.find(g[subset[i]]);
      if (it == index.end()) throw InvalidInput("subset is not invariant under the group");
      r[i] = it->second;
    }
    gens.push_back(r);
  }
  return FinitePermGroup(static_cast<int>(subset.size()), gens);
}

std::vector<Perm> FinitePermGroup::elements() const {
  std::vector<Perm> out{identity_perm(degree_)};
  for (std::size_t k = base_.size(); k-- > 0;) {
    std::vector<Perm> next;
    for (const auto& r : reps_[k])
      if (!r.empty())
        for (const auto& e : out) next.push_back(compose(e, r));
    out.swap(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

std::vector<std::vector<int>> classes(UnionFind& uf, int degree) {
  std::map<int, std::vector<int>> by_root;
  for (int x = 0; x < degree; ++x) by_root[uf.find(x)].push_back(x);
  std::vector<std::vector<int>> out;
  for (auto& [r, c] : by_root) out.push_back(std::move(c));
  return out;
}

// Pads a set of blocks with the least point of every orbit not yet met.
std::vector<std::vector<int>> complete_block_system(const FinitePermGroup& g,
                                                    std::vector<std::vector<int>> blocks) {
  for (const auto& o : g.orbits()) {
    bool met = false;
    for (const auto& b : blocks)
      for (int x : b) met = met || std::binary_search(o.begin(), o.end(), x);
    if (!met) blocks.push_back({o.front()});
  }
  std::sort(blocks.begin(), blocks.end());
  return blocks;
}

bool same_subgroup(const FinitePermGroup& a, const FinitePermGroup& b) {
  for (const auto& x : a.generators())
    if (!b.contains(x)) return false;
  for (const auto& x : b.generators())
    if (!a.contains(x)) return false;
  return true;
}

}  // namespace

std::vector<std::vector<int>> minimal_partition(const FinitePermGroup& g, int p, int q) {
  const int d = g.degree();
  if (p < 0 || q < 0 || p >= d || q >= d) throw InvalidInput("minimal_block: point out of range");
  UnionFind uf(d);
  std::vector<std::pair<int, int>> queue;
  if (uf.unite(p, q)) queue.emplace_back(p, q);
  for (std::size_t i = 0; i < queue.size(); ++i) {
    auto [a, b] = queue[i];
    for (const auto& s : g.generators())
      if (uf.unite(s[a], s[b])) queue.emplace_back(s[a], s[b]);
  }
  return classes(uf, d);
}

std::vector<int> minimal_block(const FinitePermGroup& g, int p, int q) {
  for (auto& c : minimal_partition(g, p, q))
    if (std::binary_search(c.begin(), c.end(), p)) return c;
  return {p};
}

SopVerdict is_strongly_orbit_primitive(const FinitePermGroup& g) {
  SopVerdict v;
  auto orbs = g.orbits();
  for (const auto& o : orbs) {
    if (o.size() < 2) continue;
    for (std::size_t k = 1; k < o.size(); ++k) {
      auto block = minimal_block(g, o.front(), o[k]);
      if (block.size() < o.size()) {
        v.witness = complete_block_system(g, {block});
        v.reason = "orbit restriction is imprimitive";
        return v;
      }
    }
  }
  for (std::size_t a = 0; a < orbs.size(); ++a) {
    const int p = orbs[a].front();
    const int pp[] = {p};
    auto stab_p = g.pointwise_stabilizer(pp);
    for (std::size_t b = a + 1; b < orbs.size(); ++b) {
      for (int q : orbs[b]) {
        const int qq[] = {q};
        if (same_subgroup(stab_p, g.pointwise_stabilizer(qq))) {
          v.witness = complete_block_system(g, {minimal_block(g, p, q)});
          v.reason = "points " + std::to_string(p) + " and " + std::to_string(q) +
                     " in distinct orbits have the same stabiliser";
          return v;
        }
      }
    }
  }
  v.strongly_orbit_primitive = true;
  v.reason = "every orbit restriction is primitive and stabilisers differ across orbits";
  return v;
}

SopVerdict brute_force_partition_check(const FinitePermGroup& g) {
  const int d = g.degree();
  if (d > 10) throw InvalidInput("brute_force_partition_check is limited to degree 10");
  auto orbs = g.orbits();
  std::vector<int> orbit_of(static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < orbs.size(); ++i)
    for (int x : orbs[i]) orbit_of[x] = static_cast<int>(i);

  SopVerdict v;
  // Restricted growth strings enumerate set partitions.
  std::vector<int> label(static_cast<std::size_t>(d), 0);
  std::function<bool(int, int)> rec = [&](int pos, int max_label) -> bool {
    if (pos == d) {
      std::vector<std::vector<int>> parts(static_cast<std::size_t>(max_label + 1));
      for (int x = 0; x < d; ++x) parts[label[x]].push_back(x);
      // G-invariance: each generator maps every part onto a part.
      for (const auto& s : g.generators())
        for (const auto& part : parts) {
          int target = label[s[part.front()]];
          for (int x : part)
            if (label[s[x]] != target) return false;
        }
      for (const auto& part : parts) {
        if (part.size() < 2) continue;
        bool ok = false;
        for (const auto& o : orbs)
          if (o.size() >= 2 && std::includes(part.begin(), part.end(), o.begin(), o.end())) ok = true;
        if (!ok) {
          v.witness = parts;
          v.reason = "invariant partition with a part that is neither a singleton nor contains an orbit";
          return true;
        }
      }
      return false;
    }
    for (int l = 0; l <= max_label + 1; ++l) {
      label[pos] = l;
      if (rec(pos + 1, std::max(max_label, l))) return true;
    }
    return false;
  };
  label[0] = 0;
  bool violated = d > 1 && rec(1, 0);
  v.strongly_orbit_primitive = !violated;
  if (!violated) v.reason = "no invariant partition violates the definition";
  return v;
}

bool contains_full_alternating(const FinitePermGroup& g, std::span<const int> orbit) {
  auto r = g.restricted(orbit);
  const int m = r.degree();
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c) {
        if (a == b || b == c || a == c) continue;
        Perm p = identity_perm(m);
        p[a] = b;
        p[b] = c;
        p[c] = a;
        if (!r.contains(p)) return false;
      }
  return true;
}

}  // namespace houghton
