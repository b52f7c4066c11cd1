#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "houghton/bns.hpp"
#include "houghton/blocks.hpp"
#include "houghton/subgroup.hpp"
#include "houghton/wreath.hpp"

namespace houghton {

struct ClassifyOptions {
  std::int64_t window = 40;
  std::uint64_t seed = 1;
  std::size_t kk_samples = 60;
  std::int64_t max_block_bound = 8;  // skip the block search beyond this bound
  std::size_t max_probe_factors = 8;
  int probe_budget = 4;
};

struct OrbitSummary {
  struct Class {
    RayPoint least;
    std::vector<int> rays;
    std::size_t window_points = 0;
  };
  std::int64_t depth = 0;
  bool stabilized = false;
  std::vector<Class> classes;
};

struct BlockFinding {
  BlockSystem system;
  std::size_t max_block = 0;
  bool from_search = true;  // false for the singleton context used when the search finds nothing
  std::optional<KkReport> kk;
  std::string note;
};

struct ProbeSummary {
  std::size_t factor = 0;
  bool found = false;
  std::string word;
  std::size_t words_examined = 0;
  std::string note;
};

/// Window-scale support of the finitary commutator: which orbit classes it meets.
struct CommutatorEvidence {
  std::size_t support_size = 0;
  std::vector<int> classes_met;
  bool meets_every_class = false;
};

struct ClassificationReport {
  int n = 0;
  int hirsch_length = 0;
  bool full_hirsch = false;
  IntMatrix lattice_basis;
  std::optional<std::int64_t> index;

  std::string level_status;  // "level", "not level", "inconclusive"
  int level_fail_i = 0, level_fail_j = 0;
  IntVec level_witness;
  std::optional<std::int64_t> congruence_m;
  std::optional<std::int64_t> level_reduction_m;  // m with m * Z0 a level finite-index sublattice

  OrbitSummary orbits;
  std::optional<std::int64_t> block_bound;
  std::vector<BlockFinding> blocks;
  std::optional<FCertificate> certificate;
  std::vector<ProbeSummary> probes;
  std::optional<CommutatorEvidence> commutator;

  std::string verdict;
  bool conditional = false;
  std::string g_fin;  // "finite", "infinite", "undetermined"
  std::vector<std::string> reasons;  // why the verdict holds
  std::vector<std::string> notes;    // evidence caveats; never affect the verdict
};

/// Runs the analysis pipeline.  The verdict rests on the machine-checked
/// hypotheses (lattice rank, n); window evidence is reported separately.
ClassificationReport classify(const GeneratedSubgroup& g, const ClassifyOptions& opts = {});

std::string verdict_full(int n);

}  // namespace houghton
