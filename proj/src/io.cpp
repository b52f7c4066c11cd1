#include "houghton/io.hpp"

#include <fstream>
#include <sstream>

#include "houghton/errors.hpp"
#include "json.hpp"

namespace houghton::io {

using json = nlohmann::ordered_json;

namespace {

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Typed field access with InvalidInput instead of json exceptions.
template <class T>
T get(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw InvalidInput(std::string("field '") + key + "' has the wrong type");
  }
}

template <class T>
T as(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw InvalidInput(std::string(what) + " has the wrong type");
  }
}

json point(const RayPoint& p) { return json::array({p.ray, p.pos}); }

RayPoint point(const json& j) {
  if (!j.is_array() || j.size() != 2) throw InvalidInput("a point is [ray, position]");
  return {as<int>(j[0], "ray"), as<std::int64_t>(j[1], "position")};
}

json element_json(const Element& g) {
  json head = json::array();
  for (const auto& [p, q] : g.head()) head.push_back(json::array({point(p), point(q)}));
  return {{"n", g.n()}, {"t", g.t()}, {"threshold", g.threshold()}, {"head", head}};
}

Element element_from(const json& j) {
  const int n = get<int>(j, "n");
  auto t = get<std::vector<std::int64_t>>(j, "t");
  const auto threshold = get<std::int64_t>(j, "threshold");
  std::vector<Element::HeadEntry> head;
  for (const auto& e : get<json>(j, "head")) {
    if (!e.is_array() || e.size() != 2) throw InvalidInput("a head entry is [point, image]");
    head.emplace_back(point(e[0]), point(e[1]));
  }
  return Element::from_table(n, std::move(t), threshold, std::move(head));
}

json points_json(const std::vector<RayPoint>& ps) {
  json a = json::array();
  for (const auto& p : ps) a.push_back(point(p));
  return a;
}

json blocks_json(const BlockSystem& b) {
  json a = json::array();
  for (const auto& blk : b.blocks) a.push_back(points_json(blk));
  return a;
}

BlockSystem blocks_from(const json& j) {
  if (!j.is_array()) throw InvalidInput("a block system is a list of point lists");
  BlockSystem b;
  for (const auto& blk : j) {
    if (!blk.is_array()) throw InvalidInput("a block is a list of points");
    std::vector<RayPoint> ps;
    for (const auto& p : blk) ps.push_back(point(p));
    b.blocks.push_back(std::move(ps));
  }
  return b;
}

json kk_json(const KkReport& r) {
  return {{"pairs", r.pairs},
          {"homomorphism_failures", r.homomorphism_failures},
          {"injectivity_failures", r.injectivity_failures},
          {"support_mismatches", r.support_mismatches},
          {"inconclusive", r.inconclusive},
          {"first_failure", r.first_failure},
          {"passed", r.passed()}};
}

KkReport kk_from(const json& j) {
  KkReport r;
  r.pairs = get<std::size_t>(j, "pairs");
  r.homomorphism_failures = get<std::size_t>(j, "homomorphism_failures");
  r.injectivity_failures = get<std::size_t>(j, "injectivity_failures");
  r.support_mismatches = get<std::size_t>(j, "support_mismatches");
  r.inconclusive = get<std::size_t>(j, "inconclusive");
  r.first_failure = get<std::string>(j, "first_failure");
  return r;
}

json certificate_json(const FCertificate& c) {
  json w = json::array();
  for (const auto& x : c.witnesses)
    w.push_back({{"zero_ray", x.zero_ray}, {"positive_ray", x.positive_ray}, {"vector", x.vector}});
  json j = {{"certified", c.certified}, {"note", c.note}, {"witnesses", w}};
  if (!c.certified)
    j["offending"] = {{"zero_ray", c.offending_zero_ray}, {"column", c.offending_column}, {"vector", c.offending_vector}};
  return j;
}

FCertificate certificate_from(const json& j) {
  FCertificate c;
  c.certified = get<bool>(j, "certified");
  c.note = get<std::string>(j, "note");
  for (const auto& x : get<json>(j, "witnesses"))
    c.witnesses.push_back({get<int>(x, "zero_ray"), get<int>(x, "positive_ray"), get<IntVec>(x, "vector")});
  if (!c.certified) {
    const json o = get<json>(j, "offending");
    c.offending_zero_ray = get<int>(o, "zero_ray");
    c.offending_column = get<int>(o, "column");
    c.offending_vector = get<IntVec>(o, "vector");
  }
  return c;
}

template <class T>
json opt(const std::optional<T>& x) {
  return x ? json(*x) : json(nullptr);
}

template <class T>
std::optional<T> opt_from(const json& j, const char* key) {
  const json v = get<json>(j, key);
  if (v.is_null()) return std::nullopt;
  return as<T>(v, key);
}

std::vector<Rational> rationals_from(const json& j) {
  std::vector<Rational> out;
  if (!j.is_array()) throw InvalidInput("coefficients are a list of rational strings");
  for (const auto& c : j) {
    if (c.is_number_integer()) out.emplace_back(c.get<std::int64_t>());
    else out.push_back(parse_rational(as<std::string>(c, "coefficient")));
  }
  return out;
}

json rationals_json(const std::vector<Rational>& a) {
  json out = json::array();
  for (const auto& c : a) out.push_back(to_string(c));
  return out;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Element parse_element(const std::string& text) { return element_from(parse(text)); }
std::string to_json(const Element& g) { return dump(element_json(g)); }

GeneratedSubgroup parse_subgroup(const std::string& text) {
  const json j = parse(text);
  const int n = get<int>(j, "n");
  if (n < 1) throw InvalidInput("n must be positive");
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = get<std::vector<std::string>>(j, "labels");
  const json gens = get<json>(j, "generators");
  if (!gens.is_array()) throw InvalidInput("generators must be a list");
  if (!labels.empty() && labels.size() != gens.size()) throw InvalidInput("labels and generators differ in number");
  std::map<std::string, Element> names;
  if (n >= 2)
    for (int k = 2; k <= n; ++k) names.emplace("g" + std::to_string(k), Element::generator(n, k));
  std::vector<Element> elements;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    Element e = gens[k].is_string() ? parse_word(gens[k].get<std::string>(), n, names) : element_from(gens[k]);
    if (e.n() != n) throw InvalidInput("generator " + std::to_string(k + 1) + " is not in H_" + std::to_string(n));
    if (!labels.empty()) names.insert_or_assign(labels[k], e);
    elements.push_back(std::move(e));
  }
  return GeneratedSubgroup(n, std::move(elements), std::move(labels));
}

std::string to_json(const GeneratedSubgroup& g) {
  json gens = json::array();
  for (const auto& x : g.generators) gens.push_back(element_json(x));
  return dump({{"n", g.n}, {"generators", gens}, {"labels", g.labels}});
}

BlockSystem parse_blocks(const std::string& text) { return blocks_from(parse(text)); }
std::string to_json(const BlockSystem& b) { return dump(blocks_json(b)); }

Character parse_character_json(const std::string& text) {
  const json j = parse(text);
  Character chi{get<int>(j, "n"), rationals_from(get<json>(j, "coefficients"))};
  if (chi.a.size() != static_cast<std::size_t>(chi.n)) throw InvalidInput("expected n coefficients");
  return chi;
}

std::string to_json(const Character& chi) {
  json j = {{"n", chi.n}, {"coefficients", rationals_json(chi.a)}};
  const auto s = chi.support();
  j["support"] = s;
  return dump(j);
}

std::string to_json(const MultiWreathElement& x) {
  json base = json::array();
  for (const auto& [key, perm] : x.base) base.push_back(json::array({point(key), perm}));
  return dump({{"base", base}, {"head", element_json(x.head)}});
}

std::string to_json(const KkReport& r) { return dump(kk_json(r)); }

std::string to_json(const Lattice& l) {
  return dump({{"n", l.n()}, {"basis", l.basis()}, {"rank", l.rank()}, {"index", opt(l.index_in_zero_sum())}});
}

std::string to_json(const OrbitWindowReport& r) {
  json classes = json::array();
  for (const auto& c : r.classes)
    classes.push_back({{"least", point(c.points.front())}, {"rays", c.rays}, {"window_points", c.points.size()}});
  return dump({{"depth", r.depth}, {"stabilized", r.stabilized}, {"classes", classes}});
}

std::string to_json(const FinitenessVerdict& v) {
  json extreme = json::array();
  for (const auto& c : v.extreme) extreme.push_back({{"coefficients", rationals_json(c.a)}, {"support", c.support()}});
  return dump({{"verdict", v.verdict}, {"max_m", v.max_m}, {"capped", v.capped}, {"extreme", extreme}, {"trace", v.trace}});
}

std::string to_json(const FCertificate& c) { return dump(certificate_json(c)); }

std::string to_json(const QuotientStructure& q) {
  json gens = json::array();
  for (const auto& x : q.induced_generators()) gens.push_back(element_json(x));
  return dump({{"n", q.n()},
               {"depth", q.depth()},
               {"classes", q.classes().size()},
               {"extent", q.extent()},
               {"induced_generators", gens},
               {"kernel_finitary", q.kernel_finitary()},
               {"kernel_words", q.kernel_words()}});
}

std::string to_json(const CycleStructure& c) {
  json cycles = json::array();
  for (const auto& cyc : c.finite_cycles) cycles.push_back(points_json(cyc));
  return dump({{"infinite_cycles", c.infinite_cycle_count}, {"finite_cycles", cycles}, {"window_cross_check", c.window_cross_check}});
}

std::string to_json(const BlockVerification& v) {
  return dump({{"valid", v.valid()},
               {"proper", v.proper},
               {"disjoint", v.disjoint},
               {"orbit_incidence", v.orbit_incidence},
               {"equivariant", v.equivariant},
               {"translates_consistent", v.translates_consistent},
               {"words_checked", v.words_checked},
               {"witness", v.witness}});
}

std::string to_json(const BlockSearchResult& r) {
  json systems = json::array();
  for (const auto& b : r.systems) systems.push_back(blocks_json(b));
  return dump({{"systems", systems}, {"seeds_tried", r.seeds_tried}, {"window_caveat", r.window_caveat}});
}

std::string object(const std::vector<std::pair<std::string, Scalar>>& fields) {
  json j = json::object();
  for (const auto& [k, v] : fields) std::visit([&](const auto& x) { j[k] = x; }, v);
  return dump(j);
}

std::string to_json(const ClassificationReport& r) {
  json classes = json::array();
  for (const auto& c : r.orbits.classes)
    classes.push_back({{"least", point(c.least)}, {"rays", c.rays}, {"window_points", c.window_points}});
  json blocks = json::array();
  for (const auto& f : r.blocks)
    blocks.push_back({{"system", blocks_json(f.system)},
                      {"max_block", f.max_block},
                      {"from_search", f.from_search},
                      {"kk", f.kk ? kk_json(*f.kk) : json(nullptr)},
                      {"note", f.note}});
  json probes = json::array();
  for (const auto& p : r.probes)
    probes.push_back({{"factor", p.factor}, {"found", p.found}, {"word", p.word}, {"words_examined", p.words_examined}, {"note", p.note}});
  json comm = nullptr;
  if (r.commutator)
    comm = {{"support_size", r.commutator->support_size},
            {"classes_met", r.commutator->classes_met},
            {"meets_every_class", r.commutator->meets_every_class}};
  json j = {{"schema", kSchema},
            {"n", r.n},
            {"hirsch_length", r.hirsch_length},
            {"full_hirsch", r.full_hirsch},
            {"lattice", {{"basis", r.lattice_basis}, {"index", opt(r.index)}}},
            {"level",
             {{"status", r.level_status},
              {"failure", json::array({r.level_fail_i, r.level_fail_j})},
              {"witness", r.level_witness},
              {"congruence_m", opt(r.congruence_m)},
              {"level_reduction_m", opt(r.level_reduction_m)}}},
            {"orbits", {{"depth", r.orbits.depth}, {"stabilized", r.orbits.stabilized}, {"classes", classes}}},
            {"blocks", {{"bound", opt(r.block_bound)}, {"findings", blocks}}},
            {"certificate", r.certificate ? certificate_json(*r.certificate) : json(nullptr)},
            {"probes", probes},
            {"commutator", comm},
            {"verdict", r.verdict},
            {"conditional", r.conditional},
            {"g_fin", r.g_fin},
            {"reasons", r.reasons},
            {"notes", r.notes}};
  return dump(j);
}

ClassificationReport parse_report(const std::string& text) {
  const json j = parse(text);
  if (get<std::string>(j, "schema") != kSchema) throw InvalidInput("unknown report schema");
  ClassificationReport r;
  r.n = get<int>(j, "n");
  r.hirsch_length = get<int>(j, "hirsch_length");
  r.full_hirsch = get<bool>(j, "full_hirsch");
  const json lat = get<json>(j, "lattice");
  r.lattice_basis = get<IntMatrix>(lat, "basis");
  r.index = opt_from<std::int64_t>(lat, "index");
  const json lv = get<json>(j, "level");
  r.level_status = get<std::string>(lv, "status");
  const auto failure = get<std::vector<int>>(lv, "failure");
  if (failure.size() != 2) throw InvalidInput("level failure is a pair");
  r.level_fail_i = failure[0];
  r.level_fail_j = failure[1];
  r.level_witness = get<IntVec>(lv, "witness");
  r.congruence_m = opt_from<std::int64_t>(lv, "congruence_m");
  r.level_reduction_m = opt_from<std::int64_t>(lv, "level_reduction_m");
  const json orb = get<json>(j, "orbits");
  r.orbits.depth = get<std::int64_t>(orb, "depth");
  r.orbits.stabilized = get<bool>(orb, "stabilized");
  for (const auto& c : get<json>(orb, "classes"))
    r.orbits.classes.push_back({point(get<json>(c, "least")), get<std::vector<int>>(c, "rays"), get<std::size_t>(c, "window_points")});
  const json bl = get<json>(j, "blocks");
  r.block_bound = opt_from<std::int64_t>(bl, "bound");
  for (const auto& f : get<json>(bl, "findings")) {
    BlockFinding b;
    b.system = blocks_from(get<json>(f, "system"));
    b.max_block = get<std::size_t>(f, "max_block");
    b.from_search = get<bool>(f, "from_search");
    if (!get<json>(f, "kk").is_null()) b.kk = kk_from(f.at("kk"));
    b.note = get<std::string>(f, "note");
    r.blocks.push_back(std::move(b));
  }
  if (!get<json>(j, "certificate").is_null()) r.certificate = certificate_from(j.at("certificate"));
  for (const auto& p : get<json>(j, "probes"))
    r.probes.push_back({get<std::size_t>(p, "factor"), get<bool>(p, "found"), get<std::string>(p, "word"),
                        get<std::size_t>(p, "words_examined"), get<std::string>(p, "note")});
  const json comm = get<json>(j, "commutator");
  if (!comm.is_null())
    r.commutator = CommutatorEvidence{get<std::size_t>(comm, "support_size"), get<std::vector<int>>(comm, "classes_met"),
                                      get<bool>(comm, "meets_every_class")};
  r.verdict = get<std::string>(j, "verdict");
  r.conditional = get<bool>(j, "conditional");
  r.g_fin = get<std::string>(j, "g_fin");
  r.reasons = get<std::vector<std::string>>(j, "reasons");
  r.notes = get<std::vector<std::string>>(j, "notes");
  return r;
}

}  // namespace houghton::io
