#include "houghton/classify.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "houghton/errors.hpp"
#include "houghton/finperm.hpp"
#include "houghton/subdirect.hpp"

namespace houghton {

namespace {

std::string num(std::int64_t x) { return std::to_string(x); }

// The group generated by finitary elements, as a permutation group on the
// union of their supports.  nullopt beyond the finite-group degree cap.
std::optional<BigInt> finitary_order(const GeneratedSubgroup& g) {
  std::map<RayPoint, int> index;
  for (const auto& x : g.generators)
    for (const auto& p : x.finitary_support()) index.emplace(p, 0);
  if (index.size() > 30) return std::nullopt;
  int k = 0;
  for (auto& [p, i] : index) i = k++;
  std::vector<Perm> perms;
  for (const auto& x : g.generators) {
    Perm p = identity_perm(k);
    for (const auto& [q, i] : index) p[static_cast<std::size_t>(i)] = index.at(x.apply(q));
    perms.push_back(p);
  }
  if (k == 0) return BigInt(1);
  return FinitePermGroup(k, perms).order();
}

OrbitSummary summarize(const OrbitWindowReport& rep) {
  OrbitSummary s;
  s.depth = rep.depth;
  s.stabilized = rep.stabilized;
  for (const auto& c : rep.classes) s.classes.push_back({c.points.front(), c.rays, c.points.size()});
  return s;
}

void block_evidence(const GeneratedSubgroup& g, const ClassifyOptions& opts, std::int64_t e,
                    const OrbitWindowReport& orbits, ClassificationReport& r) {
  r.block_bound = e;
  if (e > opts.max_block_bound) {
    r.notes.push_back("block search skipped: bound " + num(e) + " exceeds " + num(opts.max_block_bound));
    return;
  }
  const auto found = find_block_systems(g, opts.window, e);
  for (const auto& b : found.systems) {
    BlockFinding f;
    f.system = b;
    for (const auto& blk : b.blocks) f.max_block = std::max(f.max_block, blk.size());
    r.blocks.push_back(std::move(f));
  }
  if (r.blocks.empty()) {
    // Fall back to the singleton system: the wreath then has trivial base groups
    // and the embedding reduces to the quotient action on orbit classes.
    BlockFinding f;
    f.from_search = false;
    f.max_block = 1;
    for (const auto& c : orbits.classes) f.system.blocks.push_back({c.points.front()});
    f.note = "no nontrivial block system within bound " + num(e) + "; singleton context";
    r.blocks.push_back(std::move(f));
  }
  for (auto& f : r.blocks) {
    try {
      BlockContext ctx(g, f.system, opts.window);
      f.kk = verify_kk(ctx, opts.kk_samples, opts.seed);
    } catch (const Inconclusive& ex) {
      f.note += (f.note.empty() ? "" : "; ") + std::string("embedding check inconclusive: ") + ex.what();
    } catch (const InvalidInput& ex) {
      f.note += (f.note.empty() ? "" : "; ") + std::string("context rejected: ") + ex.what();
    }
  }
}

void probe_evidence(const GeneratedSubgroup& g, const ClassifyOptions& opts, const OrbitWindowReport& orbits,
                    ClassificationReport& r) {
  if (orbits.classes.size() > opts.max_probe_factors) {
    r.notes.push_back("subdirect probes skipped: " + num(static_cast<std::int64_t>(orbits.classes.size())) + " window classes");
    return;
  }
  const SubdirectDecomposition d = decompose(g, orbits);
  for (std::size_t i = 0; i < d.factor_count(); ++i) {
    const ProbeResult p = kernel_intersection_probe(g, d, i, opts.probe_budget);
    ProbeSummary s;
    s.factor = i;
    s.found = p.found.has_value();
    if (p.found) s.word = word_string(g, p.found->word);
    s.words_examined = p.words_examined;
    s.note = p.note;
    r.probes.push_back(std::move(s));
  }
}

void commutator_evidence(const GeneratedSubgroup& g, const OrbitWindowReport& orbits, ClassificationReport& r) {
  const Element c = finitary_commutator(g);
  CommutatorEvidence ev;
  const auto support = c.finitary_support();
  ev.support_size = support.size();
  std::set<int> met;
  for (const auto& p : support)
    if (p.pos < orbits.depth) met.insert(orbits.class_of(p));
  ev.classes_met.assign(met.begin(), met.end());
  ev.meets_every_class = met.size() == orbits.classes.size();
  r.commutator = std::move(ev);
}

}  // namespace

std::string verdict_full(int n) {
  if (n == 2) return "finitely generated, max-n; not FP_2 unless finite-by-Z";
  return "type F_" + num(n - 1) + ", not FP_" + num(n) + ", max-n";
}

ClassificationReport classify(const GeneratedSubgroup& g, const ClassifyOptions& opts) {
  if (g.n < 2) throw InvalidInput("classification needs n >= 2");
  if (opts.window < 4) throw InvalidInput("window must be at least 4");
  ClassificationReport r;
  r.n = g.n;
  const Lattice l = translation_lattice(g);
  r.lattice_basis = l.basis();
  r.index = l.index_in_zero_sum();
  r.hirsch_length = l.rank();
  r.full_hirsch = l.full_rank_in_zero_sum();

  if (g.n >= 3) {
    const LevelVerdict lv = is_level(l);
    r.level_status = lv.level ? "level" : "not level";
    r.level_fail_i = lv.i;
    r.level_fail_j = lv.j;
    r.level_witness = lv.witness;
    if (const auto cv = is_congruence_lifting(l); cv.congruence_lifting) r.congruence_m = cv.m;
    if (!lv.level && r.full_hirsch) r.level_reduction_m = level_reduction(l).m;
  } else {
    r.level_status = "inconclusive";
    r.notes.push_back("the level condition for two rays is not decided from generators");
  }

  // Verdict: from the lattice rank and n alone.
  if (r.full_hirsch) {
    r.verdict = verdict_full(g.n);
    r.reasons.push_back("translation lattice has rank " + num(g.n - 1) + " = n - 1: full Hirsch length");
    if (g.n >= 3) {
      r.g_fin = "infinite";
      r.reasons.push_back("full Hirsch length with n >= 3 gives type F_" + num(g.n - 1) + " and max-n, and rules out FP_" + num(g.n));
      r.reasons.push_back("G_fin is infinite, since type FP_n would force G_fin finite");
    } else {
      r.conditional = true;
      r.g_fin = "undetermined";
      r.reasons.push_back("full Hirsch length in H_2: finitely generated with max-n");
      r.reasons.push_back("not FP_2, or finite-by-Z (then FP_infinity); which one depends on G_fin");
    }
  } else {
    r.conditional = true;
    r.verdict = "type FP_" + num(g.n) + " iff G_fin is finite (conditional)";
    r.g_fin = "undetermined";
    r.reasons.push_back("Hirsch length " + num(r.hirsch_length) + " < " + num(g.n - 1) + ": not full");
    r.reasons.push_back("FP_" + num(g.n) + ", FP_infinity and finiteness of G_fin are equivalent");
    if (r.hirsch_length == 0) {
      // Every generator is finitary, so G = G_fin is a finitely generated
      // subgroup of FSym, hence finite.
      r.g_fin = "finite";
      std::string order;
      if (const auto o = finitary_order(g)) order = " of order " + o->str();
      r.reasons.push_back("Hirsch length 0: G = G_fin is generated by finitary permutations, a finite group" + order +
                          "; the condition holds and G has type FP_infinity");
    }
  }

  // Evidence.  Failures here degrade the evidence, not the verdict.
  OrbitWindowReport orbits;
  std::int64_t w = opts.window;
  for (int attempt = 0; attempt < 2; ++attempt, w *= 2) {
    orbits = orbit_windows(g, w);
    if (orbits.stabilized) break;
  }
  r.orbits = summarize(orbits);
  if (!orbits.stabilized) {
    r.notes.push_back("orbit classes did not stabilize up to depth " + num(orbits.depth));
    return r;
  }
  ClassifyOptions eff = opts;
  eff.window = orbits.depth;
  if (r.full_hirsch) {
    try {
      r.certificate = f_certificate(l);
    } catch (const InvalidInput& ex) {
      r.notes.push_back(std::string("certificate: ") + ex.what());
    }
    try {
      block_evidence(g, eff, *r.index, orbits, r);
    } catch (const Inconclusive& ex) {
      r.notes.push_back(std::string("block evidence inconclusive: ") + ex.what());
    }
    if (g.n >= 3) {
      try {
        commutator_evidence(g, orbits, r);
      } catch (const Inconclusive& ex) {
        r.notes.push_back(std::string("finitary commutator not found: ") + ex.what());
      }
    }
  }
  try {
    probe_evidence(g, eff, orbits, r);
  } catch (const Inconclusive& ex) {
    r.notes.push_back(std::string("subdirect probes inconclusive: ") + ex.what());
  } catch (const InvalidInput& ex) {
    r.notes.push_back(std::string("subdirect probes: ") + ex.what());
  }
  return r;
}

}  // namespace houghton
