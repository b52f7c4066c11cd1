// houghton: command-line front end.  Exit codes: 0 success, 2 invalid input,
// 3 inconclusive (a bounded search or window could not decide).

#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "houghton/errors.hpp"
#include "houghton/io.hpp"

using namespace houghton;

namespace {

struct Globals {
  bool json = false;
  std::uint64_t seed = 1;
};

std::string describe(const Element& g) {
  std::ostringstream os;
  os << "n: " << g.n() << "\nt: " << to_string(IntVec(g.t().begin(), g.t().end())) << "\nthreshold: " << g.threshold()
     << "\nhead:";
  if (g.head().empty()) os << " (none)";
  for (const auto& [p, q] : g.head()) os << " " << to_string(p) << "->" << to_string(q);
  os << "\n";
  return os.str();
}

void emit(const Globals& gl, const std::string& json_text, const std::string& text) {
  std::cout << (gl.json ? json_text : text);
}

// One element from a file or a word (words need --n).
struct ElementSource {
  std::vector<std::string> files;
  std::vector<std::string> words;
  int n = 0;
  void add(CLI::App* app) {
    app->add_option("--file", files, "element JSON file (repeatable)");
    app->add_option("--word", words, "word in g2..gn and cycles (repeatable)");
    app->add_option("--n", n, "number of rays for --word");
  }
  std::vector<Element> load() const {
    std::vector<Element> out;
    for (const auto& f : files) out.push_back(io::parse_element(io::read_file(f)));
    if (!words.empty() && n < 1) throw InvalidInput("--word needs --n");
    std::map<std::string, Element> names;
    for (int k = 2; k <= n; ++k) names.emplace("g" + std::to_string(k), Element::generator(n, k));
    for (const auto& w : words) out.push_back(parse_word(w, n, names));
    if (out.empty()) throw InvalidInput("give --file or --word");
    return out;
  }
  Element one() const {
    auto v = load();
    if (v.size() != 1) throw InvalidInput("expected exactly one element");
    return v.front();
  }
};

void add_element(CLI::App& app, Globals& gl) {
  auto* cmd = app.add_subcommand("element", "element arithmetic")->require_subcommand(1);

  auto* parse = cmd->add_subcommand("parse", "canonical form of an element");
  static ElementSource src_parse_store;
  auto* src_parse = &src_parse_store;
  src_parse->add(parse);
  parse->callback([&gl, src_parse] {
    const Element g = src_parse->one();
    emit(gl, io::to_json(g), describe(g));
  });

  auto* compose = cmd->add_subcommand("compose", "product, left to right (right action)");
  static ElementSource src_compose_store;
  auto* src_compose = &src_compose_store;
  src_compose->add(compose);
  compose->callback([&gl, src_compose] {
    auto v = src_compose->load();
    Element g = v.front();
    for (std::size_t k = 1; k < v.size(); ++k) g = g * v[k];
    emit(gl, io::to_json(g), describe(g));
  });

  auto* inv = cmd->add_subcommand("inverse", "inverse element");
  static ElementSource src_inv_store;
  auto* src_inv = &src_inv_store;
  src_inv->add(inv);
  inv->callback([&gl, src_inv] {
    const Element g = src_inv->one().inverse();
    emit(gl, io::to_json(g), describe(g));
  });

  auto* cycles = cmd->add_subcommand("cycles", "cycle structure");
  static ElementSource src_cycles_store;
  auto* src_cycles = &src_cycles_store;
  src_cycles->add(cycles);
  cycles->callback([&gl, src_cycles] {
    const CycleStructure c = src_cycles->one().cycle_structure();
    std::ostringstream os;
    os << "infinite cycles: " << c.infinite_cycle_count << "\nfinite cycles: " << c.finite_cycles.size() << "\n";
    for (const auto& cyc : c.finite_cycles) {
      os << "  (";
      for (std::size_t k = 0; k < cyc.size(); ++k) os << (k ? " " : "") << to_string(cyc[k]);
      os << ")\n";
    }
    os << "window cross-check: " << (c.window_cross_check ? "agrees" : "DISAGREES") << "\n";
    emit(gl, io::to_json(c), os.str());
  });

  auto* gen = cmd->add_subcommand("generator", "standard generator g_j of H_n");
  static int gn = 0, gj = 0;
  gen->add_option("--n", gn, "number of rays")->required();
  gen->add_option("--j", gj, "ray index, 2..n")->required();
  gen->callback([&gl] {
    if (gj < 2 || gj > gn) throw InvalidInput("need 2 <= j <= n");
    const Element g = Element::generator(gn, gj);
    emit(gl, io::to_json(g), describe(g));
  });

  auto* rnd = cmd->add_subcommand("random", "seeded random element");
  static int rn = 3, budget = 4;
  static std::int64_t tbound = 2;
  rnd->add_option("--n", rn, "number of rays")->required();
  rnd->add_option("--head-budget", budget, "points in the finitary scramble");
  rnd->add_option("--t-bound", tbound, "bound on |t_i|");
  rnd->callback([&gl] {
    if (rn < 1 || budget < 0 || tbound < 0) throw InvalidInput("bad random element parameters");
    const Element g = random_element(rn, budget, tbound, gl.seed);
    emit(gl, io::to_json(g), describe(g));
  });
}

std::string subgroup_file;
std::int64_t window = 40;

GeneratedSubgroup load_subgroup() { return io::parse_subgroup(io::read_file(subgroup_file)); }

void add_subgroup(CLI::App& app, Globals& gl) {
  auto* cmd = app.add_subcommand("subgroup", "subgroup structure")->require_subcommand(1);
  auto with_file = [&](const char* name, const char* desc) {
    auto* c = cmd->add_subcommand(name, desc);
    c->add_option("--subgroup", subgroup_file, "subgroup JSON file")->required();
    return c;
  };
  with_file("lattice", "translation lattice")->callback([&gl] {
    const Lattice l = translation_lattice(load_subgroup());
    std::ostringstream os;
    os << "rank: " << l.rank() << "\nbasis:";
    for (const auto& r : l.basis()) os << " " << to_string(r);
    os << "\nindex in zero-sum lattice: ";
    if (auto i = l.index_in_zero_sum()) os << *i;
    else os << "infinite";
    os << "\n";
    emit(gl, io::to_json(l), os.str());
  });
  with_file("hirsch", "Hirsch length")->callback([&gl] {
    const auto g = load_subgroup();
    const HirschReport h = hirsch_length(g);
    emit(gl,
         io::object({{"hirsch_length", std::int64_t{h.hirsch_length}}, {"full_hirsch", h.full_hirsch}, {"n", std::int64_t{g.n}}}),
         "Hirsch length: " + std::to_string(h.hirsch_length) + (h.full_hirsch ? " (full)\n" : " (not full)\n"));
  });
  with_file("level", "level and congruence-lifting tests")->callback([&gl] {
    const auto g = load_subgroup();
    const Lattice l = translation_lattice(g);
    if (g.n == 2) {
      const LevelN2Report r = level_n2(g, window);
      std::cout << (gl.json ? io::object({{"status", std::string("inconclusive")}, {"note", r.note}})
                            : "level: inconclusive (" + r.note + ")\n");
      throw Inconclusive("the level condition for two rays is not decided");
    }
    const LevelVerdict v = is_level(l);
    const CongruenceVerdict c = is_congruence_lifting(l);
    std::string text = v.level ? "level: yes\n"
                               : "level: no (ray " + std::to_string(v.i) + " zero, ray " + std::to_string(v.j) +
                                     "; witness " + to_string(v.witness) + ")\n";
    text += c.congruence_lifting ? "congruence lifting: yes, m = " + std::to_string(c.m) + "\n" : "congruence lifting: no\n";
    std::vector<std::pair<std::string, io::Scalar>> f = {
        {"level", v.level}, {"congruence_lifting", c.congruence_lifting}, {"m", c.m}};
    if (!v.level) {
      f.emplace_back("failure", IntVec{v.i, v.j});
      f.emplace_back("witness", v.witness);
      if (l.full_rank_in_zero_sum()) {
        const auto red = level_reduction(l);
        f.emplace_back("level_reduction_m", red.m);
        text += "level finite-index sublattice: " + std::to_string(red.m) + " * Z0\n";
      }
    }
    emit(gl, io::object(f), text);
  });
  auto* orbits = with_file("orbits", "orbit classes on a window");
  orbits->add_option("--window", window, "window depth");
  orbits->callback([&gl] {
    const auto r = orbit_windows(load_subgroup(), window);
    std::ostringstream os;
    os << "window depth: " << r.depth << (r.stabilized ? " (stabilized)" : " (not stabilized)") << "\nclasses: " << r.classes.size()
       << "\n";
    for (const auto& c : r.classes) {
      os << "  from " << to_string(c.points.front()) << ", " << c.points.size() << " window points, rays";
      for (int ray : c.rays) os << " " << ray;
      os << "\n";
    }
    emit(gl, io::to_json(r), os.str());
    if (!r.stabilized) throw Inconclusive("orbit classes not stabilized", 2 * window);
  });
  auto* delta = cmd->add_subcommand("delta", "generators of the residue subgroup Delta_k");
  static int dn = 3;
  static std::int64_t dk = 2;
  delta->add_option("--n", dn, "number of rays")->required();
  delta->add_option("--k", dk, "modulus")->required();
  delta->callback([] {
    if (dn < 2 || dk < 1) throw InvalidInput("need n >= 2 and k >= 1");
    std::cout << io::to_json(delta_k(dn, dk));
  });
}

std::string blocks_file;

void add_blocks(CLI::App& app, Globals& gl) {
  auto* cmd = app.add_subcommand("blocks", "block systems")->require_subcommand(1);
  auto* find = cmd->add_subcommand("find", "search for block systems");
  static std::int64_t bound = 0;
  find->add_option("--subgroup", subgroup_file)->required();
  find->add_option("--window", window, "window depth");
  find->add_option("--bound", bound, "block size bound (default: lattice index)");
  find->callback([&gl] {
    const auto g = load_subgroup();
    const std::int64_t e = bound > 0 ? bound : block_size_bound(translation_lattice(g));
    const auto r = find_block_systems(g, window, e);
    std::ostringstream os;
    os << "block size bound: " << e << "\nsystems found: " << r.systems.size() << "\n";
    for (const auto& b : r.systems) {
      os << " ";
      for (const auto& blk : b.blocks) {
        os << " {";
        for (std::size_t k = 0; k < blk.size(); ++k) os << (k ? " " : "") << to_string(blk[k]);
        os << "}";
      }
      os << "\n";
    }
    if (r.window_caveat) os << "(window-scale result at depth " << window << ")\n";
    emit(gl, io::to_json(r), os.str());
  });
  auto* verify = cmd->add_subcommand("verify", "check a block system");
  verify->add_option("--subgroup", subgroup_file)->required();
  verify->add_option("--blocks", blocks_file)->required();
  verify->add_option("--window", window, "window depth");
  verify->callback([&gl] {
    const auto v = verify_block_system(load_subgroup(), io::parse_blocks(io::read_file(blocks_file)), window);
    std::string text = std::string("valid: ") + (v.valid() ? "yes" : "no") + "\nproper: " + (v.proper ? "yes" : "no") + "\n";
    if (!v.witness.empty()) text += "witness: " + v.witness + "\n";
    emit(gl, io::to_json(v), text);
  });
  auto* quotient = cmd->add_subcommand("quotient", "induced action on the quotient ray system");
  quotient->add_option("--subgroup", subgroup_file)->required();
  quotient->add_option("--blocks", blocks_file)->required();
  quotient->add_option("--window", window, "window depth");
  quotient->callback([&gl] {
    const auto g = load_subgroup();
    const QuotientStructure q(g, io::parse_blocks(io::read_file(blocks_file)), window);
    std::ostringstream os;
    os << "quotient classes: " << q.classes().size() << "\n";
    for (std::size_t k = 0; k < q.induced_generators().size(); ++k)
      os << g.labels[k] << " induces t = " << to_string(IntVec(q.induced_generators()[k].t().begin(), q.induced_generators()[k].t().end()))
         << "\n";
    os << "kernel finitary on " << q.kernel_words() << " words: " << (q.kernel_finitary() ? "yes" : "no") << "\n";
    emit(gl, io::to_json(q), os.str());
  });
}

void add_wreath(CLI::App& app, Globals& gl) {
  auto* cmd = app.add_subcommand("wreath", "multi-wreath embedding")->require_subcommand(1);
  auto* embed = cmd->add_subcommand("embed", "image of an element");
  static std::string element_word, element_file;
  embed->add_option("--subgroup", subgroup_file)->required();
  embed->add_option("--blocks", blocks_file)->required();
  embed->add_option("--window", window, "window depth");
  embed->add_option("--word", element_word, "word in the subgroup's labels");
  embed->add_option("--element", element_file, "element JSON file");
  embed->callback([&gl] {
    const auto g = load_subgroup();
    BlockContext ctx(g, io::parse_blocks(io::read_file(blocks_file)), window);
    Element x = !element_file.empty() ? io::parse_element(io::read_file(element_file))
                                      : parse_word(element_word.empty() ? "e" : element_word, g.n, g.names());
    const auto k = kk_embed(x, ctx);
    std::ostringstream os;
    os << "base support: " << k.base.size() << " classes\n";
    for (const auto& [key, perm] : k.base) os << "  class of " << to_string(key) << ": " << cycle_string(perm) << "\n";
    os << "head:\n" << describe(k.head);
    emit(gl, io::to_json(k), os.str());
  });
  auto* verify = cmd->add_subcommand("verify", "sampled homomorphism and injectivity checks");
  static std::size_t samples = 100;
  verify->add_option("--subgroup", subgroup_file)->required();
  verify->add_option("--blocks", blocks_file)->required();
  verify->add_option("--window", window, "window depth");
  verify->add_option("--samples", samples, "pairs of words");
  verify->callback([&gl] {
    BlockContext ctx(load_subgroup(), io::parse_blocks(io::read_file(blocks_file)), window);
    const auto r = verify_kk(ctx, samples, gl.seed);
    std::string text = "pairs: " + std::to_string(r.pairs) + "\nhomomorphism failures: " + std::to_string(r.homomorphism_failures) +
                       "\ninjectivity failures: " + std::to_string(r.injectivity_failures) +
                       "\nsupport mismatches: " + std::to_string(r.support_mismatches) +
                       "\ninconclusive: " + std::to_string(r.inconclusive) + "\n" + (r.passed() ? "passed\n" : "FAILED: " + r.first_failure + "\n");
    emit(gl, io::to_json(r), text);
  });
}

void add_bns(CLI::App& app, Globals& gl) {
  auto* cmd = app.add_subcommand("bns", "character sphere computations")->require_subcommand(1);
  static int n = 0, m = 1;
  static std::string chi_text;
  auto* sigma = cmd->add_subcommand("sigma", "membership in Sigma^m(H_n)");
  sigma->add_option("--n", n, "number of rays")->required();
  sigma->add_option("--chi", chi_text, "character, e.g. \"t1 - 2/3 t2\"")->required();
  sigma->add_option("--m", m, "1 <= m <= n-1")->required();
  sigma->callback([&gl] {
    const Character c = canonicalize(parse_character(chi_text, n));
    const bool in = in_sigma(c, m);
    std::vector<std::pair<std::string, io::Scalar>> f = {
        {"in_sigma", in}, {"m", std::int64_t{m}}, {"canonical", to_string(c)}, {"support_size", static_cast<std::int64_t>(c.support().size())}};
    emit(gl, io::object(f), std::string(in ? "in" : "not in") + " Sigma^" + std::to_string(m) + "\n");
  });
  static std::vector<std::string> kernels;
  auto* type = cmd->add_subcommand("type", "finiteness type of a subgroup above the commutator subgroup");
  type->add_option("--n", n, "number of rays")->required();
  type->add_option("--kernel", kernels, "linear form vanishing on the subgroup (repeatable)");
  type->callback([&gl] {
    std::vector<std::vector<Rational>> forms;
    for (const auto& k : kernels) forms.push_back(parse_linear_form(k, n));
    const auto v = subgroup_type(kernel_lattice(n, forms));
    std::string text = v.verdict + "\n";
    for (const auto& t : v.trace) text += "  " + t + "\n";
    emit(gl, io::to_json(v), text);
  });
  auto* cert = cmd->add_subcommand("certificate", "level certificate for type F_{n-1}");
  cert->add_option("--subgroup", subgroup_file)->required();
  cert->callback([&gl] {
    const auto c = f_certificate(translation_lattice(load_subgroup()));
    std::string text = c.certified ? "certified F_{n-1} (" + c.note + ")\n" : "no certificate: " + c.note + "\n";
    for (const auto& w : c.witnesses)
      text += "  ray " + std::to_string(w.zero_ray) + " < 0, ray " + std::to_string(w.positive_ray) + " > 0: " + to_string(w.vector) + "\n";
    emit(gl, io::to_json(c), text);
  });
}

void print_report(const ClassificationReport& r) {
  std::cout << "n: " << r.n << "\nHirsch length: " << r.hirsch_length << (r.full_hirsch ? " (full)" : " (not full)")
            << "\nlevel: " << r.level_status;
  if (r.level_status == "not level") std::cout << " (ray " << r.level_fail_i << " zero, ray " << r.level_fail_j << ")";
  if (r.level_reduction_m) std::cout << "; level finite-index sublattice " << *r.level_reduction_m << " * Z0";
  std::cout << "\norbit classes: " << r.orbits.classes.size() << " at depth " << r.orbits.depth
            << (r.orbits.stabilized ? "" : " (not stabilized)") << "\n";
  for (const auto& f : r.blocks) {
    std::cout << (f.from_search ? "block system" : "singleton context") << ", max block " << f.max_block;
    if (f.kk) std::cout << ", embedding checks " << (f.kk->passed() ? "passed" : "FAILED") << " on " << f.kk->pairs << " pairs";
    if (!f.note.empty()) std::cout << " (" << f.note << ")";
    std::cout << "\n";
  }
  if (r.certificate) std::cout << "certificate: " << (r.certificate->certified ? "certified" : "none") << " (" << r.certificate->note << ")\n";
  for (const auto& p : r.probes)
    std::cout << "orbit factor " << p.factor << ": " << (p.found ? "element of G supported on it: " + p.word : "no element of G supported on it found (" + p.note + ")") << "\n";
  if (r.commutator)
    std::cout << "finitary commutator meets " << r.commutator->classes_met.size() << " of " << r.orbits.classes.size() << " classes\n";
  std::cout << "G_fin: " << r.g_fin << "\nverdict: " << r.verdict << "\n";
  for (const auto& s : r.reasons) std::cout << "  - " << s << "\n";
  for (const auto& s : r.notes) std::cout << "  note: " << s << "\n";
}

void add_classify(CLI::App& app, Globals& gl) {
  auto* cmd = app.add_subcommand("classify", "full classification report");
  cmd->add_option("--subgroup", subgroup_file)->required();
  cmd->add_option("--window", window, "window depth for the evidence");
  cmd->callback([&gl] {
    ClassifyOptions o;
    o.window = window;
    o.seed = gl.seed;
    const auto r = classify(load_subgroup(), o);
    if (gl.json) std::cout << io::to_json(r);
    else print_report(r);
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Houghton group toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  Globals gl;
  app.add_flag("--json", gl.json, "machine-readable output");
  app.add_option("--seed", gl.seed, "random seed");
  add_element(app, gl);
  add_subgroup(app, gl);
  add_blocks(app, gl);
  add_wreath(app, gl);
  add_bns(app, gl);
  add_classify(app, gl);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Unsupported& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return 2;
  } catch (const Inconclusive& e) {
    std::cerr << "inconclusive: " << e.what();
    if (e.required_depth() > 0) std::cerr << " (try depth " << e.required_depth() << ")";
    std::cerr << "\n";
    return 3;
  } catch (const std::overflow_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
