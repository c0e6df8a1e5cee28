#include <set>

#include "doctest.h"
#include "modlattice/jsonio.hpp"
#include "modlattice/laws.hpp"

using namespace modlattice;

namespace {

LawConfig quickConfig() {
  LawConfig config;
  config.maxModuleSize = 36;  // keeps the whole registry fast in unit tests
  config.sampleCount = 8;
  return config;
}

}  // namespace

TEST_CASE("registry is closed with stable names") {
  const auto& registry = lawRegistry();
  CHECK(registry.size() == 19);
  std::set<std::string> names;
  for (LawId id : registry) {
    auto name = lawName(id);
    CHECK(lawFromName(name) == id);
    CHECK(names.insert(name).second);
    CHECK_FALSE(lawDescription(id).empty());
  }
  CHECK(names.count("L2.3eq") == 1);
  CHECK(names.count("L3.7min") == 1);
  CHECK_THROWS_AS(lawFromName("L9.9"), UnknownLaw);
}

TEST_CASE("corpus rings and modules are the documented family") {
  auto rings = corpusRings();
  CHECK(rings.size() == 9);
  auto config = quickConfig();
  for (const auto& ring : rings) {
    auto modules = corpusModules(ring, config, 5);
    CHECK(!modules.empty());
    for (const auto& m : modules) CHECK(m->size() <= config.maxModuleSize);
    // Deterministic under the same seed.
    auto again = corpusModules(ring, config, 5);
    REQUIRE(again.size() == modules.size());
    for (size_t i = 0; i < modules.size(); ++i)
      CHECK(jsonio::moduleJson(*again[i]) == jsonio::moduleJson(*modules[i]));
  }
}

TEST_CASE("every law passes on the quick configuration") {
  auto config = quickConfig();
  for (LawId id : lawRegistry()) {
    auto report = runLaw(id, config, 42);
    INFO(lawName(id), " ", report.error ? *report.error : "",
         report.counterexample ? *report.counterexample : "");
    CHECK(report.ok());
    CHECK(report.instancesGenerated > 0);
  }
}

TEST_CASE("runAll is deterministic and aggregates per-law seeds") {
  auto config = quickConfig();
  auto a = runAll(config, 42);
  auto b = runAll(config, 42);
  REQUIRE(a.size() == 19);
  REQUIRE(b.size() == 19);
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(jsonio::canonicalDump(lawReportJson(a[i])) ==
          jsonio::canonicalDump(lawReportJson(b[i])));
    CHECK(a[i].ok());
  }
  // Different seeds change at least the recorded seeds.
  auto c = runAll(config, 43);
  CHECK(c[0].seed != a[0].seed);
}

TEST_CASE("degenerate bounds surface as per-law errors, not aborts") {
  LawConfig config;
  config.maxModuleSize = 0;
  auto reports = runAll(config, 1);
  REQUIRE(reports.size() == 19);
  for (const auto& r : reports) {
    CHECK(r.error.has_value());
    CHECK_FALSE(r.ok());
  }
}

TEST_CASE("law report serialization excludes timing") {
  LawReport report;
  report.law = LawId::L2_18;
  report.instancesGenerated = 3;
  report.passed = 3;
  report.seed = 7;
  report.elapsedSeconds = 1.5;
  auto j = lawReportJson(report);
  CHECK(j.contains("law"));
  CHECK_FALSE(j.contains("elapsed"));
  CHECK_FALSE(j.contains("elapsedSeconds"));
  CHECK(j["passed"] == 3);
}

TEST_CASE("shrinking reaches a small failing instance") {
  // Synthetic failure: any module over a ring of carrier > 4 "fails".
  auto passes = [](const FiniteInstance& inst) {
    return parseRingSpec(inst.ringSpec)->size() <= 4;
  };
  FiniteInstance start;
  start.ringSpec = "Z/12 x Z/2";
  start.rank = 2;
  start.relations = {{4, 0}, {0, 1}};
  start.detail = "synthetic";
  REQUIRE_FALSE(passes(start));
  auto shrunk = shrinkFiniteInstance(start, passes);
  CHECK_FALSE(passes(shrunk));
  auto ring = parseRingSpec(shrunk.ringSpec);
  CHECK(ring->size() <= 12);
  CHECK(ring->size() > 4);
  CHECK(shrunk.relations.size() <= start.relations.size());
}

TEST_CASE("shrinking drops generators when the failure persists") {
  auto passes = [](const FiniteInstance& inst) { return inst.subGens.empty(); };
  FiniteInstance start;
  start.ringSpec = "Z/6";
  start.rank = 1;
  start.subGens = {{2}, {3}, {1}};
  auto shrunk = shrinkFiniteInstance(start, passes);
  CHECK(shrunk.subGens.size() == 1);
}

TEST_CASE("submodule heredity mining reports no counterexample") {
  LawConfig config;
  config.maxModuleSize = 16;
  auto report = mineSubmoduleHeredity(config, 11);
  CHECK(report.modulesScanned > 0);
  CHECK(report.submodulesScanned > 0);
  CHECK_FALSE(report.counterexample.has_value());
}
