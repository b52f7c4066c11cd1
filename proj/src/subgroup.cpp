#include "houghton/subgroup.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "houghton/errors.hpp"

namespace houghton {

GeneratedSubgroup::GeneratedSubgroup(int n_, std::vector<Element> gens, std::vector<std::string> labels_)
    : n(n_), generators(std::move(gens)), labels(std::move(labels_)) {
  RaySystem sys(n);
  for (const auto& g : generators)
    if (g.n() != n) throw InvalidInput("generator lives in H_" + std::to_string(g.n()) + ", expected H_" + std::to_string(n));
  if (labels.empty())
    for (std::size_t k = 0; k < generators.size(); ++k) labels.push_back("x" + std::to_string(k + 1));
  if (labels.size() != generators.size()) throw InvalidInput("labels and generators differ in number");
}

std::map<std::string, Element> GeneratedSubgroup::names() const {
  std::map<std::string, Element> out;
  for (int j = 2; j <= n; ++j) out.emplace("g" + std::to_string(j), Element::generator(n, j));
  for (std::size_t k = 0; k < generators.size(); ++k) out.insert_or_assign(labels[k], generators[k]);
  return out;
}

Element evaluate(const GeneratedSubgroup& g, const Word& w) {
  Element e = Element::identity(g.n);
  for (int letter : w) {
    const Element& x = g.generators.at(static_cast<std::size_t>(std::abs(letter) - 1));
    e = e * (letter > 0 ? x : x.inverse());
  }
  return e;
}

std::string word_string(const GeneratedSubgroup& g, const Word& w) {
  if (w.empty()) return "e";
  std::string s;
  for (int letter : w) {
    if (!s.empty()) s += " * ";
    s += g.labels.at(static_cast<std::size_t>(std::abs(letter) - 1));
    if (letter < 0) s += "^-1";
  }
  return s;
}

void visit_ball(const GeneratedSubgroup& g, int radius, std::size_t cap,
                const std::function<bool(const WordElement&)>& visit) {
  std::vector<std::pair<int, Element>> letters;
  for (std::size_t k = 0; k < g.generators.size(); ++k) {
    const Element& x = g.generators[k];
    if (x.is_identity()) continue;
    letters.emplace_back(static_cast<int>(k) + 1, x);
    Element xi = x.inverse();
    if (xi != x) letters.emplace_back(-static_cast<int>(k) - 1, xi);
  }
  std::unordered_set<Element, ElementHash> seen;
  std::deque<WordElement> queue;
  queue.push_back({Element::identity(g.n), {}});
  seen.insert(queue.front().element);
  std::size_t count = 0;
  while (!queue.empty()) {
    WordElement cur = std::move(queue.front());
    queue.pop_front();
    if (!visit(cur) || ++count >= cap) return;
    if (static_cast<int>(cur.word.size()) >= radius) continue;
    for (const auto& [letter, x] : letters) {
      if (!cur.word.empty() && cur.word.back() == -letter) continue;
      Element next = cur.element * x;
      if (!seen.insert(next).second) continue;
      Word w = cur.word;
      w.push_back(letter);
      queue.push_back({std::move(next), std::move(w)});
    }
  }
}

std::vector<WordElement> ball(const GeneratedSubgroup& g, int radius, std::size_t cap) {
  std::vector<WordElement> out;
  visit_ball(g, radius, cap, [&](const WordElement& we) {
    out.push_back(we);
    return true;
  });
  return out;
}

namespace {

class WordParser {
 public:
  WordParser(const std::string& text, int n, const std::map<std::string, Element>& names)
      : s_(text), n_(n), names_(names) {}

  Element parse() {
    Element e = word();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw InvalidInput("cannot parse word \"" + s_ + "\" at offset " + std::to_string(i_) + ": " + msg);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool peek(char c) {
    skip();
    return i_ < s_.size() && s_[i_] == c;
  }
  std::int64_t integer() {
    skip();
    std::size_t start = i_;
    if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) ++i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_ || !std::isdigit(static_cast<unsigned char>(s_[i_ - 1]))) fail("expected an integer");
    return std::stoll(s_.substr(start, i_ - start));
  }
  Element word() {
    Element e = Element::identity(n_);
    bool any = false;
    while (true) {
      skip();
      if (i_ == s_.size() || s_[i_] == ')') break;
      if (any && s_[i_] == '*') {
        ++i_;
        skip();
      }
      e = e * factor();
      any = true;
    }
    if (!any) fail("empty word");
    return e;
  }
  Element factor() {
    Element a = atom();
    if (peek('^')) {
      ++i_;
      a = a.pow(integer());
    }
    return a;
  }
  bool cycle_ahead() {
    // "(" already consumed; a cycle starts with "<int>:".
    std::size_t k = i_;
    while (k < s_.size() && std::isspace(static_cast<unsigned char>(s_[k]))) ++k;
    if (k < s_.size() && s_[k] == ')') return true;
    std::size_t d = k;
    while (d < s_.size() && std::isdigit(static_cast<unsigned char>(s_[d]))) ++d;
    if (d == k) return false;
    while (d < s_.size() && std::isspace(static_cast<unsigned char>(s_[d]))) ++d;
    return d < s_.size() && s_[d] == ':';
  }
  Element atom() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end");
    if (s_[i_] == '(') {
      ++i_;
      Element e = Element::identity(n_);
      if (cycle_ahead()) {
        std::vector<RayPoint> pts;
        while (!peek(')')) {
          std::int64_t r = integer();
          if (!peek(':')) fail("expected ':' in cycle point");
          ++i_;
          std::int64_t p = integer();
          pts.push_back({static_cast<int>(r), p});
          if (peek(',')) ++i_;
        }
        if (pts.size() > 1) e = Element::cycle(n_, pts);
      } else {
        e = word();
      }
      if (!peek(')')) fail("expected ')'");
      ++i_;
      return e;
    }
    std::size_t start = i_;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
    if (start == i_) fail("expected a generator name or '('");
    std::string name = s_.substr(start, i_ - start);
    if (name == "e") return Element::identity(n_);
    auto it = names_.find(name);
    if (it == names_.end()) fail("unknown generator '" + name + "'");
    return it->second;
  }

  const std::string& s_;
  int n_;
  const std::map<std::string, Element>& names_;
  std::size_t i_ = 0;
};

}  // namespace

Element parse_word(const std::string& text, int n, const std::map<std::string, Element>& names) {
  RaySystem sys(n);
  return WordParser(text, n, names).parse();
}

Lattice translation_lattice(const GeneratedSubgroup& g) {
  IntMatrix rows;
  for (const auto& x : g.generators) rows.push_back(x.t());
  return Lattice(g.n, rows);
}

HirschReport hirsch_length(const GeneratedSubgroup& g) {
  Lattice l = translation_lattice(g);
  return {l.rank(), l.rank() == g.n - 1};
}

LevelVerdict is_level(const Lattice& l) {
  const int n = l.n();
  if (n < 3) throw Unsupported("the lattice level test needs n >= 3; use level_n2 for n = 2");
  LevelVerdict v;
  for (int j = 0; j < n; ++j) {
    const std::int64_t full = l.column_gcd(j);
    for (int i = 0; i < n; ++i) {
      if (i == j) continue;
      const std::int64_t sliced = l.coordinate_slice(i).column_gcd(j);
      if (sliced == full) continue;
      v.level = false;
      v.i = i + 1;
      v.j = j + 1;
      for (const auto& row : l.basis())
        if (sliced == 0 ? row[j] != 0 : row[j] % sliced != 0) {
          v.witness = row;
          break;
        }
      return v;
    }
  }
  return v;
}

CongruenceVerdict is_congruence_lifting(const Lattice& l) {
  if (!l.full_rank_in_zero_sum() || !l.is_zero_sum()) return {};
  std::int64_t m = 0;
  for (const auto& row : l.basis())
    for (auto x : row) m = gcd64(m, x);
  if (m == 0 || !(l == Lattice::zero_sum(l.n(), m))) return {};
  return {true, m};
}

LevelReduction level_reduction(const Lattice& l) {
  const int n = l.n();
  if (!l.full_rank_in_zero_sum()) throw InvalidInput("level reduction needs a full-rank lattice");
  std::int64_t m = 1;
  for (int i = 0; i + 1 < n; ++i) {
    IntVec w(static_cast<std::size_t>(n), 0);
    w[i] = 1;
    w[n - 1] = -1;
    m = lcm64(m, l.line_multiple(w));
  }
  return {m, Lattice::zero_sum(n, m)};
}

int OrbitWindowReport::class_of(const RayPoint& p) const {
  if (p.pos < 0 || p.pos >= depth) throw InvalidInput("point " + to_string(p) + " is outside the window");
  return class_index.at(static_cast<std::size_t>((p.ray - 1) * depth + p.pos));
}

namespace {

struct Dsu {
  std::vector<std::int64_t> parent;
  explicit Dsu(std::int64_t n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  std::int64_t find(std::int64_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::int64_t a, std::int64_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Class labels (first-occurrence numbering) of the depth-w window under the
// generator graph closed on depth `closure`.
std::vector<int> window_labels(const GeneratedSubgroup& g, std::int64_t w, std::int64_t closure) {
  Window big(g.n, closure);
  Dsu dsu(big.size());
  for (std::int64_t i = 0; i < big.size(); ++i) {
    RayPoint p = big.point(i);
    for (const auto& x : g.generators) {
      RayPoint q = x.apply(p);
      if (big.contains(q)) dsu.unite(i, big.index(q));
    }
  }
  Window small(g.n, w);
  std::vector<int> labels(static_cast<std::size_t>(small.size()));
  std::unordered_map<std::int64_t, int> seen;
  for (std::int64_t i = 0; i < small.size(); ++i) {
    std::int64_t root = dsu.find(big.index(small.point(i)));
    labels[i] = seen.emplace(root, static_cast<int>(seen.size())).first->second;
  }
  return labels;
}

}  // namespace

OrbitWindowReport orbit_windows(const GeneratedSubgroup& g, std::int64_t w) {
  if (w < 1) throw InvalidInput("window depth must be positive");
  OrbitWindowReport rep;
  rep.depth = w;
  auto labels = window_labels(g, w, 2 * w);
  rep.stabilized = labels == window_labels(g, w, 4 * w);
  Window win(g.n, w);
  int count = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  rep.classes.resize(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < win.size(); ++i) rep.classes[labels[i]].points.push_back(win.point(i));
  for (auto& c : rep.classes) {
    for (const auto& p : c.points)
      if (c.rays.empty() || c.rays.back() != p.ray) c.rays.push_back(p.ray);
  }
  // Window order puts rays first, so class labels already follow least points.
  rep.class_index = std::move(labels);
  return rep;
}

LevelN2Report level_n2(const GeneratedSubgroup& g, std::int64_t w, int radius) {
  LevelN2Report rep;
  Lattice l = translation_lattice(g);
  rep.lattice_gcd = l.column_gcd(0);
  auto orbits = orbit_windows(g, w);
  auto words = ball(g, radius, 20000);
  for (const auto& c : orbits.classes) {
    if (rep.stabilizer_translation_gcd.size() >= 16) break;
    const RayPoint p = c.points.front();
    std::int64_t d = 0;
    for (const auto& we : words)
      if (we.element.apply(p) == p) d = gcd64(d, we.element.t()[0]);
    rep.stabilizer_translation_gcd.push_back(d);
  }
  rep.note =
      "bounded-word heuristic only: a point stabiliser translation gcd equal to the lattice gcd is "
      "consistent with G_p G_fin = G, and 0 with G_p G_fin = G_fin; neither is decided";
  return rep;
}

Element finitary_commutator(const GeneratedSubgroup& g, const CommutatorOptions& opts) {
  const int n = g.n;
  if (n < 3) throw Unsupported("finitary_commutator needs n >= 3");
  Lattice l = translation_lattice(g);
  if (l.rank() != n - 1) throw InvalidInput("finitary_commutator needs full Hirsch length");

  auto pattern = [n](const TranslationVector& t, int ray) {
    if (!(t[0] < 0 && t[ray] > 0)) return false;
    for (int k = 1; k < n; ++k)
      if (k != ray && t[k] != 0) return false;
    return true;
  };
  std::optional<Element> h2, h3;
  visit_ball(g, opts.word_radius, opts.node_cap, [&](const WordElement& we) {
    if (!h2 && pattern(we.element.t(), 1)) h2 = we.element;
    if (!h3 && pattern(we.element.t(), 2)) h3 = we.element;
    return !(h2 && h3);
  });
  IntMatrix rows;
  for (const auto& x : g.generators) rows.push_back(x.t());
  auto lattice_guided = [&](int ray) {
    IntVec w(static_cast<std::size_t>(n), 0);
    w[0] = -1;
    w[ray] = 1;
    std::int64_t d = l.line_multiple(w);
    if (d == 0) throw Inconclusive("no lattice vector on the required line");
    for (auto& x : w) x *= d;
    auto coeffs = express(rows, n, w);
    if (!coeffs) throw Inconclusive("lattice vector not expressible in the generators");
    Element e = Element::identity(n);
    for (std::size_t k = 0; k < coeffs->size(); ++k)
      if ((*coeffs)[k] != 0) e = e * g.generators[k].pow((*coeffs)[k]);
    return e;
  };
  if (!h2) h2 = lattice_guided(1);
  if (!h3) h3 = lattice_guided(2);

  // A power killing every finite cycle leaves only infinite cycles in the support.
  auto clear_finite_cycles = [](const Element& h) {
    std::int64_t m = 1;
    for (const auto& c : h.cycle_structure().finite_cycles) m = lcm64(m, static_cast<std::int64_t>(c.size()));
    return h.pow(m);
  };
  Element a = clear_finite_cycles(*h2);
  Element b = clear_finite_cycles(*h3);
  Element sigma = commutator(a, b);
  if (!sigma.is_finitary() || sigma.is_identity())
    throw Inconclusive("commutator construction produced a trivial element");
  return sigma;
}

Element residue_shift(int n, int j, std::int64_t k) {
  if (n < 2 || j < 2 || j > n || k < 1) throw InvalidInput("residue_shift needs n >= 2, 2 <= j <= n, k >= 1");
  TranslationVector t(static_cast<std::size_t>(n), 0);
  t[0] = k;
  t[j - 1] = -k;
  std::vector<Element::HeadEntry> head;
  for (std::int64_t m = 0; m < k; ++m) head.push_back({{j, m}, {1, m}});
  return Element::from_table(n, std::move(t), k, std::move(head));
}

GeneratedSubgroup delta_k(int n, std::int64_t k) {
  if (n < 2 || k < 1) throw InvalidInput("delta_k needs n >= 2 and k >= 1");
  std::vector<Element> gens;
  std::vector<std::string> labels;
  for (int j = 2; j <= n; ++j) {
    gens.push_back(residue_shift(n, j, k));
    labels.push_back("s" + std::to_string(j));
  }
  for (std::int64_t i = 1; i <= k; ++i) {
    gens.push_back(Element::transposition(n, {1, i - 1}, {1, i - 1 + k}));
    labels.push_back("tau" + std::to_string(i));
  }
  return GeneratedSubgroup(n, std::move(gens), std::move(labels));
}

GeneratedSubgroup houghton_group(int n) {
  if (n < 2) throw InvalidInput("H_n generators need n >= 2");
  std::vector<Element> gens;
  std::vector<std::string> labels;
  for (int j = 2; j <= n; ++j) {
    gens.push_back(Element::generator(n, j));
    labels.push_back("g" + std::to_string(j));
  }
  return GeneratedSubgroup(n, std::move(gens), std::move(labels));
}

}  // namespace houghton
