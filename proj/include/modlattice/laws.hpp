#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "modlattice/finmod.hpp"

namespace modlattice {

// Closed law registry. Each id runs one executable law over generated
// instances; finite-corpus laws sweep a deterministic module family over the
// fixed ring corpus, sampled laws draw seeded instances over Z, GF(p)[x],
// or the localization.
enum class LawId {
  L2_3eq,
  L2_4eq,
  L2_5,
  L2_6,
  L2_7,
  L2_8fwd,
  L2_10,
  L2_11,
  L2_12,
  L2_13,
  L2_14,
  L2_16,
  L2_17_1,
  L2_17_2,
  L2_17_3,
  L2_18,
  L3_2,
  L3_6,
  L3_7min,
};

const std::vector<LawId>& lawRegistry();
std::string lawName(LawId id);
LawId lawFromName(const std::string& name);  // throws UnknownLaw
std::string lawDescription(LawId id);

struct LawConfig {
  Bounds bounds;
  std::int64_t maxModuleSize = 256;
  std::int64_t sampleCount = 0;  // 0 = per-law default
  std::optional<std::string> ringFilter;
};

struct LawReport {
  LawId law = LawId::L2_18;
  std::int64_t instancesGenerated = 0;
  std::int64_t passed = 0;
  std::optional<std::string> counterexample;  // serialized shrunk instance
  std::optional<std::string> error;
  std::uint64_t seed = 0;
  double elapsedSeconds = 0;  // reported on stderr, never in canonical JSON

  bool ok() const { return !error.has_value() && passed == instancesGenerated; }
};

LawReport runLaw(LawId id, const LawConfig& config, std::uint64_t seed);

// Runs every registered law with per-law seeds derived from the root seed.
// Per-law errors land in the reports; the batch never aborts.
std::vector<LawReport> runAll(const LawConfig& config, std::uint64_t rootSeed);

// Canonical, timing-free serialization (fixed seed => byte-identical).
nlohmann::json lawReportJson(const LawReport& report);

// The fixed finite ring corpus: field / local-nilpotent / product /
// squarefree cases.
std::vector<RingPtr> corpusRings();

// Deterministic module family over one ring: free modules, ideal quotients,
// pairwise sums of cyclic quotients, and a few seeded presentations, all
// within the size bound.
std::vector<ModulePtr> corpusModules(const RingPtr& ring, const LawConfig& config,
                                     std::uint64_t seed);

// Serializable finite instance for counterexample reporting and shrinking.
struct FiniteInstance {
  std::string ringSpec;
  int rank = 1;
  std::vector<std::vector<std::int64_t>> relations;  // ring element codes
  std::vector<std::vector<std::int64_t>> subGens;    // rep vectors, optional
  std::string detail;

  nlohmann::json toJson() const;
};

// Greedy shrink: drop relation rows and generators, shrink cyclic moduli to
// proper divisors, drop product components; keeps the last failing instance.
FiniteInstance shrinkFiniteInstance(
    const FiniteInstance& start,
    const std::function<bool(const FiniteInstance&)>& passes);

// Submodule counterexample mining for the open submodule-heredity question:
// scans corpus modules for a submodule that fails to be classical Hilbert
// as a standalone module. Reports only; asserts nothing either way.
struct MineReport {
  std::int64_t modulesScanned = 0;
  std::int64_t submodulesScanned = 0;
  std::optional<std::string> counterexample;
};
MineReport mineSubmoduleHeredity(const LawConfig& config, std::uint64_t seed);

}  // namespace modlattice
