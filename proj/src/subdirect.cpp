#include "houghton/subdirect.hpp"

#include <algorithm>

#include "houghton/blocks.hpp"
#include "houghton/errors.hpp"

namespace houghton {

SubdirectDecomposition::SubdirectDecomposition(const GeneratedSubgroup& g, OrbitWindowReport orbits)
    : n_(g.n), orbits_(std::move(orbits)) {
  for (const auto& c : orbits_.classes) {
    std::vector<std::vector<std::int64_t>> per_ray(static_cast<std::size_t>(n_));
    for (const auto& p : c.points) per_ray[p.ray - 1].push_back(p.pos);
    positions_.push_back(std::move(per_ray));
  }
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    std::vector<Element> gens;
    for (const auto& x : g.generators) gens.push_back(project(x, i));
    factors_.emplace_back(n_, std::move(gens), g.labels);
    lattices_.push_back(translation_lattice(factors_.back()));
  }
}

std::optional<bool> SubdirectDecomposition::factor_level(std::size_t i) const {
  if (n_ < 3) return std::nullopt;
  return is_level(lattices_.at(i)).level;
}

RayPoint SubdirectDecomposition::to_factor(std::size_t i, const RayPoint& p) const {
  const auto& v = positions_.at(i).at(static_cast<std::size_t>(p.ray - 1));
  auto it = std::lower_bound(v.begin(), v.end(), p.pos);
  if (it == v.end() || *it != p.pos) throw InvalidInput(to_string(p) + " is not a window point of orbit " + std::to_string(i));
  return {p.ray, it - v.begin()};
}

std::optional<RayPoint> SubdirectDecomposition::from_factor(std::size_t i, const RayPoint& q) const {
  const auto& v = positions_.at(i).at(static_cast<std::size_t>(q.ray - 1));
  if (q.pos < 0 || q.pos >= static_cast<std::int64_t>(v.size())) return std::nullopt;
  return RayPoint{q.ray, v[q.pos]};
}

Element SubdirectDecomposition::project(const Element& g, std::size_t i) const {
  if (g.n() != n_) throw InvalidInput("element lives in a different H_n");
  std::vector<std::int64_t> extent;
  for (const auto& v : positions_.at(i)) extent.push_back(static_cast<std::int64_t>(v.size()));
  auto image = [&](const RayPoint& q) -> std::optional<RayPoint> {
    auto p = from_factor(i, q);
    if (!p) return std::nullopt;
    RayPoint r = g.apply(*p);
    if (r.pos >= orbits_.depth) return std::nullopt;
    if (orbits_.class_of(r) != static_cast<int>(i))
      throw InvalidInput("element does not preserve orbit " + std::to_string(i));
    return to_factor(i, r);
  };
  return infer_element(n_, extent, image);
}

SubdirectDecomposition decompose(const GeneratedSubgroup& g, const OrbitWindowReport& orbits) {
  if (!orbits.stabilized) throw Inconclusive("orbit report has not stabilized", 2 * orbits.depth);
  return SubdirectDecomposition(g, orbits);
}

ProbeResult kernel_intersection_probe(const GeneratedSubgroup& g, const SubdirectDecomposition& d, std::size_t i,
                                      int word_budget, std::size_t cap) {
  ProbeResult res;
  if (i >= d.factor_count()) throw InvalidInput("no such factor");
  const auto& orbits = d.orbits();
  if (d.factor_count() == 1) {
    for (std::size_t k = 0; k < g.generators.size(); ++k)
      if (!g.generators[k].is_identity()) {
        res.found = WordElement{g.generators[k], {static_cast<int>(k) + 1}};
        res.note = "transitive group: G meets the only factor in G";
        return res;
      }
    res.note = "trivial group";
    return res;
  }
  visit_ball(g, word_budget, cap, [&](const WordElement& we) {
    ++res.words_examined;
    if (!we.element.is_finitary() || we.element.is_identity()) return true;
    for (const auto& p : we.element.finitary_support())
      if (p.pos >= orbits.depth || orbits.class_of(p) != static_cast<int>(i)) return true;
    res.found = we;
    return false;
  });
  if (!res.found) res.note = "inconclusive: no element found within the word budget";
  return res;
}

std::optional<Perm> kernel_intersection_probe(const FinitePermGroup& g, std::size_t i) {
  auto orbs = g.orbits();
  if (i >= orbs.size()) throw InvalidInput("no such orbit");
  std::vector<int> others;
  for (std::size_t k = 0; k < orbs.size(); ++k)
    if (k != i) others.insert(others.end(), orbs[k].begin(), orbs[k].end());
  auto stab = g.pointwise_stabilizer(others);
  for (const auto& x : stab.generators())
    if (!is_identity(x)) return x;
  return std::nullopt;
}

}  // namespace houghton
