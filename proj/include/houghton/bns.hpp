#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>
#include <vector>

#include "houghton/lattice.hpp"

namespace houghton {

using Rational = boost::rational<std::int64_t>;

Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

/// A character sum a_i t_i of H_n, modulo adding a constant to every a_i
/// (t_1 + ... + t_n vanishes on H_n).
struct Character {
  int n = 0;
  std::vector<Rational> a;

  /// Rays with a nonzero canonical coefficient.
  std::vector<int> support() const;  // 1-based
  friend bool operator==(const Character& x, const Character& y) { return x.n == y.n && x.a == y.a; }
};

/// Parses a linear form such as "t1 - 2/3 t2 + t4" (the '*' is optional).
std::vector<Rational> parse_linear_form(const std::string& text, int n);
Character parse_character(const std::string& text, int n);
std::string to_string(const Character& chi);

/// Subtract the minimum coefficient.  InvalidInput for the zero character.
Character canonicalize(const Character& chi);

/// chi lies in Sigma^m(H_n) iff its canonical support has more than m rays
/// (closed faces of the (m-1)-skeleton are excluded).  Needs 1 <= m <= n-1.
bool in_sigma(const Character& chi, int m);

struct FinitenessVerdict {
  int max_m = 0;                      // type F_max_m certified, and not F_{max_m + 1} below the cap
  bool capped = false;                // H has finite index; the ambient bound n-1 applies
  std::vector<Character> extreme;     // canonical extreme characters vanishing on H
  std::string verdict;                // "F_1, not F_2", "not F_1", "F_3 (finite index)"
  std::vector<std::string> trace;
};

/// Finiteness type of the subgroup between [H_n, H_n] and H_n whose
/// translation image is l (a sublattice of the zero-sum lattice).
FinitenessVerdict subgroup_type(const Lattice& l);
/// The subgroup cut out of the zero-sum lattice by the given linear forms.
Lattice kernel_lattice(int n, const std::vector<std::vector<Rational>>& forms);

/// True iff the per-factor canonical supports of a character of H_n^k add up
/// to at most n - 1, i.e. the character lies in the (n-2)-skeleton of the join
/// and may lie outside Sigma^{n-1}.  Zero factors contribute nothing; the
/// grid as a whole must be nonzero.
bool meinert_complement_bound(int n, const std::vector<std::vector<Rational>>& grid);

struct CertificateWitness {
  int zero_ray = 0;      // i0, 1-based
  int positive_ray = 0;  // i1
  IntVec vector;         // d (e_{i1} - e_{i0}) in the lattice
};

struct FCertificate {
  bool certified = false;
  std::vector<CertificateWitness> witnesses;
  int offending_zero_ray = 0;  // when not certified
  int offending_column = 0;
  IntVec offending_vector;
  std::string note;
};

/// The level criterion as a type F_{n-1} certificate.  L must have full rank
/// in the zero-sum lattice (InvalidInput otherwise).
FCertificate f_certificate(const Lattice& l);

}  // namespace houghton
