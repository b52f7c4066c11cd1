#include "houghton/bns.hpp"

#include <algorithm>
#include <cctype>

#include "houghton/errors.hpp"
#include "houghton/subgroup.hpp"

namespace houghton {

namespace {

// Comparisons always pair two Rationals: with C++20 rewritten operators,
// boost's mixed rational/int == recurses without end.

std::int64_t parse_int(const std::string& s, const std::string& whole) {
  if (s.empty()) throw InvalidInput("bad rational '" + whole + "'");
  std::size_t pos = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw InvalidInput("bad rational '" + whole + "'");
  }
  if (pos != s.size()) throw InvalidInput("bad rational '" + whole + "'");
  return v;
}

// Integer basis of {x in Q^|cols| : sum_c x_c * rows[k][cols[c]] = 0 for all k}.
IntMatrix restricted_kernel(const IntMatrix& rows, const std::vector<int>& cols) {
  IntMatrix out;
  if (rows.empty()) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      IntVec e(cols.size(), 0);
      e[c] = 1;
      out.push_back(e);
    }
    return out;
  }
  IntMatrix transposed;
  for (int c : cols) {
    IntVec r;
    for (const auto& row : rows) r.push_back(row[static_cast<std::size_t>(c)]);
    transposed.push_back(r);
  }
  return row_reduce(transposed, static_cast<int>(rows.size())).kernel;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_int(s, text));
  const std::int64_t den = parse_int(s.substr(slash + 1), text);
  if (den == 0) throw InvalidInput("zero denominator in '" + text + "'");
  return Rational(parse_int(s.substr(0, slash), text), den);
}

std::string to_string(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

std::vector<int> Character::support() const {
  std::vector<int> out;
  if (a.empty()) return out;
  const Rational lo = *std::min_element(a.begin(), a.end());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != lo) out.push_back(static_cast<int>(i) + 1);
  return out;
}

std::vector<Rational> parse_linear_form(const std::string& text, int n) {
  if (n < 2) throw InvalidInput("need n >= 2");
  std::vector<Rational> a(static_cast<std::size_t>(n), Rational(0));
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw InvalidInput("empty linear form");
  std::size_t pos = 0;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (pos != 0) {
      throw InvalidInput("expected '+' or '-' in '" + text + "'");
    }
    const std::size_t t = s.find('t', pos);
    if (t == std::string::npos) throw InvalidInput("missing t_i in '" + text + "'");
    std::string coef = s.substr(pos, t - pos);
    if (!coef.empty() && coef.back() == '*') coef.pop_back();
    Rational c = coef.empty() ? Rational(1) : parse_rational(coef);
    std::size_t end = t + 1;
    while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) ++end;
    if (end == t + 1) throw InvalidInput("missing ray index in '" + text + "'");
    const int i = std::stoi(s.substr(t + 1, end - t - 1));
    if (i < 1 || i > n) throw InvalidInput("ray index t" + std::to_string(i) + " outside 1.." + std::to_string(n));
    a[static_cast<std::size_t>(i - 1)] += c * sign;
    pos = end;
  }
  return a;
}

Character parse_character(const std::string& text, int n) { return {n, parse_linear_form(text, n)}; }

std::string to_string(const Character& chi) {
  std::string s;
  for (std::size_t i = 0; i < chi.a.size(); ++i) {
    const Rational& c = chi.a[i];
    const Rational zero(0);
    if (c == zero) continue;
    const bool neg = c < zero;
    const Rational m = neg ? -c : c;
    s += s.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    if (m != Rational(1)) s += to_string(m) + " ";
    s += "t" + std::to_string(i + 1);
  }
  return s.empty() ? "0" : s;
}

Character canonicalize(const Character& chi) {
  if (chi.n < 2 || chi.a.size() != static_cast<std::size_t>(chi.n)) throw InvalidInput("character has the wrong length");
  const Rational lo = *std::min_element(chi.a.begin(), chi.a.end());
  Character out = chi;
  for (auto& c : out.a) c -= lo;
  if (std::all_of(out.a.begin(), out.a.end(), [](const Rational& c) { return c == Rational(0); }))
    throw InvalidInput("zero character (all coefficients equal)");
  return out;
}

bool in_sigma(const Character& chi, int m) {
  const Character c = canonicalize(chi);
  if (m < 1 || m > c.n - 1) throw InvalidInput("need 1 <= m <= n-1");
  return static_cast<int>(c.support().size()) > m;
}

Lattice kernel_lattice(int n, const std::vector<std::vector<Rational>>& forms) {
  // Rows of the input are the rays; column 0 is the zero-sum functional.
  IntMatrix cols(static_cast<std::size_t>(n), IntVec{1});
  for (const auto& f : forms) {
    if (f.size() != static_cast<std::size_t>(n)) throw InvalidInput("linear form has the wrong length");
    std::int64_t den = 1;
    for (const auto& c : f) den = lcm64(den, c.denominator());
    for (int i = 0; i < n; ++i) cols[static_cast<std::size_t>(i)].push_back(checked_mul(f[i].numerator(), den / f[i].denominator()));
  }
  return Lattice(n, row_reduce(cols, static_cast<int>(forms.size()) + 1).kernel);
}

FinitenessVerdict subgroup_type(const Lattice& l) {
  const int n = l.n();
  if (n < 2) throw InvalidInput("need n >= 2");
  if (!l.is_zero_sum()) throw InvalidInput("the lattice must lie in the zero-sum lattice");
  FinitenessVerdict v;
  const int rank = l.rank();
  v.trace.push_back("S(G,H) has dimension " + std::to_string(n - 1 - rank) + " as a space of characters");
  if (rank == n - 1) {
    v.capped = true;
    v.max_m = n - 1;
    v.verdict = "F_" + std::to_string(n - 1) + ", not F_" + std::to_string(n) + " (finite index)";
    v.trace.push_back("no character vanishes on H; the ambient type of H_n applies");
    return v;
  }
  // An extreme canonical character is, up to scale, the unique vector of the
  // annihilator vanishing off U; it exists iff that space is a line spanned by
  // a vector with all entries of one sign.  The least support among them is
  // the least support over all of S(G,H).
  int best = n;
  for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
    std::vector<int> cols;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) cols.push_back(i);
    const IntMatrix ker = restricted_kernel(l.basis(), cols);
    if (ker.size() != 1) continue;
    const IntVec& x = ker[0];
    const bool pos = std::all_of(x.begin(), x.end(), [](auto c) { return c > 0; });
    const bool neg = std::all_of(x.begin(), x.end(), [](auto c) { return c < 0; });
    if (!pos && !neg) continue;
    Character chi{n, std::vector<Rational>(static_cast<std::size_t>(n), Rational(0))};
    for (std::size_t c = 0; c < cols.size(); ++c) chi.a[static_cast<std::size_t>(cols[c])] = Rational(pos ? x[c] : -x[c]);
    v.extreme.push_back(chi);
    best = std::min(best, static_cast<int>(cols.size()));
    std::string sup;
    for (int i : cols) sup += (sup.empty() ? "" : ",") + std::to_string(i + 1);
    v.trace.push_back("extreme character " + to_string(chi) + " with support {" + sup + "}");
  }
  if (v.extreme.empty()) throw std::logic_error("no extreme character in a nonzero S(G,H)");
  v.max_m = best - 1;
  v.verdict = v.max_m == 0 ? "not F_1" : "F_" + std::to_string(v.max_m) + ", not F_" + std::to_string(v.max_m + 1);
  v.trace.push_back("least support " + std::to_string(best) + ": a character in the " + std::to_string(best - 1) +
                    "-skeleton lies outside Sigma^" + std::to_string(best));
  return v;
}

bool meinert_complement_bound(int n, const std::vector<std::vector<Rational>>& grid) {
  if (n < 2 || grid.empty()) throw InvalidInput("need n >= 2 and at least one factor");
  int total = 0;
  bool nonzero = false;
  for (const auto& row : grid) {
    if (row.size() != static_cast<std::size_t>(n)) throw InvalidInput("grid row has the wrong length");
    Character chi{n, row};
    if (chi.support().empty()) continue;
    nonzero = true;
    total += static_cast<int>(chi.support().size());
  }
  if (!nonzero) throw InvalidInput("zero character");
  return total <= n - 1;
}

FCertificate f_certificate(const Lattice& l) {
  const int n = l.n();
  if (n < 2 || !l.is_zero_sum() || !l.full_rank_in_zero_sum())
    throw InvalidInput("f_certificate needs a full-rank sublattice of the zero-sum lattice");
  FCertificate cert;
  if (n == 2) {
    cert.certified = true;
    cert.note = "n = 2: type F_1 is finite generation";
  } else {
    const LevelVerdict lv = is_level(l);
    if (!lv.level) {
      cert.offending_zero_ray = lv.i;
      cert.offending_column = lv.j;
      cert.offending_vector = lv.witness;
      cert.note = "not level: ray " + std::to_string(lv.i) + " zero does not reach the full gcd on ray " + std::to_string(lv.j);
      return cert;
    }
    cert.certified = true;
    cert.note = "level";
  }
  for (int i0 = 0; i0 < n; ++i0)
    for (int i1 = 0; i1 < n; ++i1) {
      if (i0 == i1) continue;
      IntVec w(static_cast<std::size_t>(n), 0);
      w[i1] = 1;
      w[i0] = -1;
      const std::int64_t d = l.line_multiple(w);
      for (auto& c : w) c = checked_mul(c, d);
      cert.witnesses.push_back({i0 + 1, i1 + 1, w});
    }
  return cert;
}

}  // namespace houghton
