#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "houghton/bns.hpp"
#include "houghton/classify.hpp"
#include "houghton/subdirect.hpp"
#include "houghton/wreath.hpp"

/// JSON file formats.  All parse functions throw InvalidInput on malformed
/// input; all writers produce pretty-printed JSON with a trailing newline.
namespace houghton::io {

inline constexpr const char* kSchema = "houghton-kit/1";

std::string read_file(const std::string& path);

/// {"n": 3, "t": [...], "threshold": N, "head": [[[r, p], [r, p]], ...]}
Element parse_element(const std::string& text);
std::string to_json(const Element& g);

/// {"n": 3, "generators": [element | "word", ...], "labels": [...]}
/// Word strings may use g2..gn and the labels of earlier generators.
GeneratedSubgroup parse_subgroup(const std::string& text);
std::string to_json(const GeneratedSubgroup& g);

/// [[[r, p], ...], ...]: one list of points per block.
BlockSystem parse_blocks(const std::string& text);
std::string to_json(const BlockSystem& b);

/// {"n": 3, "coefficients": ["1", "-2/3", ...]} or, for products, "grid": [[...], ...].
Character parse_character_json(const std::string& text);
std::string to_json(const Character& chi);

std::string to_json(const MultiWreathElement& x);
std::string to_json(const KkReport& r);
std::string to_json(const Lattice& l);
std::string to_json(const OrbitWindowReport& r);
std::string to_json(const FinitenessVerdict& v);
std::string to_json(const FCertificate& c);
std::string to_json(const QuotientStructure& q);

std::string to_json(const CycleStructure& c);
std::string to_json(const BlockVerification& v);
std::string to_json(const BlockSearchResult& r);

/// A flat JSON object for small command outputs.
using Scalar = std::variant<bool, std::int64_t, std::string, IntVec>;
std::string object(const std::vector<std::pair<std::string, Scalar>>& fields);

std::string to_json(const ClassificationReport& r);
ClassificationReport parse_report(const std::string& text);

}  // namespace houghton::io
