#pragma once

#include <optional>
#include <string>
#include <vector>

#include "houghton/finperm.hpp"
#include "houghton/subgroup.hpp"

namespace houghton {

/// One factor per window orbit class: the orbit is identified with R_n through
/// per-ray rank maps, and generators act on it as Houghton elements.
class SubdirectDecomposition {
 public:
  SubdirectDecomposition(const GeneratedSubgroup& g, OrbitWindowReport orbits);

  std::size_t factor_count() const noexcept { return factors_.size(); }
  const OrbitWindowReport& orbits() const noexcept { return orbits_; }
  const GeneratedSubgroup& factor(std::size_t i) const { return factors_.at(i); }
  const Lattice& factor_lattice(std::size_t i) const { return lattices_.at(i); }
  bool factor_full_hirsch(std::size_t i) const { return lattices_.at(i).rank() == n_ - 1; }
  /// Level flag of factor i; empty for n < 3.
  std::optional<bool> factor_level(std::size_t i) const;

  /// The factor point of p (p must lie in orbit i inside the window).
  RayPoint to_factor(std::size_t i, const RayPoint& p) const;
  /// The orbit point with the given factor coordinates, if inside the window.
  std::optional<RayPoint> from_factor(std::size_t i, const RayPoint& q) const;
  /// pi_i(g): the action of g on orbit i in factor coordinates.
  Element project(const Element& g, std::size_t i) const;

 private:
  int n_;
  OrbitWindowReport orbits_;
  std::vector<std::vector<std::vector<std::int64_t>>> positions_;  // factor -> ray -> sorted positions
  std::vector<GeneratedSubgroup> factors_;
  std::vector<Lattice> lattices_;
};

/// Requires a stabilized report; throws Inconclusive otherwise.
SubdirectDecomposition decompose(const GeneratedSubgroup& g, const OrbitWindowReport& orbits);

struct ProbeResult {
  std::optional<WordElement> found;
  std::size_t words_examined = 0;
  std::string note;
};

/// Bounded search for a nontrivial finitary element of G moving only points of
/// orbit i.
ProbeResult kernel_intersection_probe(const GeneratedSubgroup& g, const SubdirectDecomposition& d, std::size_t i,
                                      int word_budget, std::size_t cap = 50000);

/// Finite analogue: the pointwise stabilizer of every other orbit, restricted to
/// orbit i.  Returns a nontrivial element of it, if any.
std::optional<Perm> kernel_intersection_probe(const FinitePermGroup& g, std::size_t i);

}  // namespace houghton
