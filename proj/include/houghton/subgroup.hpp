#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "houghton/element.hpp"
#include "houghton/lattice.hpp"

namespace houghton {

/// G = <S> <= H_n.
struct GeneratedSubgroup {
  int n = 1;
  std::vector<Element> generators;
  std::vector<std::string> labels;  // same length as generators

  GeneratedSubgroup() = default;
  GeneratedSubgroup(int n, std::vector<Element> gens, std::vector<std::string> labels = {});
  /// Label -> generator, plus the standard names g2..gn.
  std::map<std::string, Element> names() const;
};

/// A word over the generators: letter k+1 is generator k, -(k+1) its inverse.
using Word = std::vector<int>;

struct WordElement {
  Element element;
  Word word;
};

Element evaluate(const GeneratedSubgroup& g, const Word& w);
std::string word_string(const GeneratedSubgroup& g, const Word& w);

/// Breadth-first walk over distinct elements of the ball of the given radius
/// (shortest word first, ties by letter order); stops after `cap` elements or
/// when `visit` returns false.
void visit_ball(const GeneratedSubgroup& g, int radius, std::size_t cap,
                const std::function<bool(const WordElement&)>& visit);

/// Distinct elements of the ball of the given radius, in breadth-first order
/// (shortest word first, ties by letter order).  Stops after `cap` elements.
std::vector<WordElement> ball(const GeneratedSubgroup& g, int radius, std::size_t cap = 200000);

/// Parses a word such as "g2^2 * (1:0 1:1) * a^-1".  Atoms are names from
/// `names`, cycles "(r:p r:p ...)", and parenthesised words; factors may carry
/// an integer exponent.  "e" is the identity.
Element parse_word(const std::string& text, int n, const std::map<std::string, Element>& names);

Lattice translation_lattice(const GeneratedSubgroup& g);

struct HirschReport {
  int hirsch_length = 0;
  bool full_hirsch = false;
};
HirschReport hirsch_length(const GeneratedSubgroup& g);

struct LevelVerdict {
  bool level = true;
  int i = 0, j = 0;  // 1-based ray pair of the failure
  IntVec witness;    // a lattice vector whose j-component is not matched with v_i = 0
};
/// Lattice form of the level condition; n >= 3, otherwise Unsupported.
LevelVerdict is_level(const Lattice& l);

struct CongruenceVerdict {
  bool congruence_lifting = false;
  std::int64_t m = 0;
};
CongruenceVerdict is_congruence_lifting(const Lattice& l);

/// A finite-index level sublattice m * Z0 of a full-rank lattice, with m the
/// least common multiple of the least d_i such that d_i (e_i - e_n) lies in L.
struct LevelReduction {
  std::int64_t m = 0;
  Lattice reduced;
};
LevelReduction level_reduction(const Lattice& l);

struct OrbitClass {
  std::vector<RayPoint> points;  // sorted; points of the window of depth W
  std::vector<int> rays;         // rays met
};

struct OrbitWindowReport {
  std::int64_t depth = 0;
  std::vector<OrbitClass> classes;  // ordered by least point
  bool stabilized = false;
  /// Index of the class containing p (p must lie in the window).
  int class_of(const RayPoint& p) const;

  std::vector<int> class_index;  // window index -> class
};
OrbitWindowReport orbit_windows(const GeneratedSubgroup& g, std::int64_t w);

struct LevelN2Report {
  bool inconclusive = true;
  /// Per orbit class: gcd of t_1 over the bounded words fixing the least point.
  std::vector<std::int64_t> stabilizer_translation_gcd;
  std::int64_t lattice_gcd = 0;
  std::string note;
};
/// Window heuristic for the n = 2 level condition.  Never decides.
LevelN2Report level_n2(const GeneratedSubgroup& g, std::int64_t w, int radius = 6);

struct CommutatorOptions {
  int word_radius = 8;
  std::size_t node_cap = 200000;
};
/// [h2, h3] with t(h2) = (-a, a, 0, ...) and t(h3) = (-b, 0, b, 0, ...), each raised
/// to a power with no finite cycles.  Requires n >= 3 and full Hirsch length.
Element finitary_commutator(const GeneratedSubgroup& g, const CommutatorOptions& opts = {});

/// The residue-preserving shift: ray 1 up by k, ray j down by k, with
/// (j, m) -> (1, m) for m < k.  Equals g_j for k = 1.
Element residue_shift(int n, int j, std::int64_t k);
/// Generators of a subgroup of Delta_k: the shifts for j = 2..n and the
/// transpositions ((1, i-1) (1, i-1+k)) for i = 1..k.
GeneratedSubgroup delta_k(int n, std::int64_t k);
/// The standard generators g2..gn of H_n.
GeneratedSubgroup houghton_group(int n);

}  // namespace houghton
