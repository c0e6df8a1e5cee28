#include "modlattice/laws.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <utility>

#include "modlattice/classify.hpp"
#include "modlattice/euclid.hpp"
#include "modlattice/jsonio.hpp"
#include "modlattice/rng.hpp"

namespace modlattice {

using jsonio::json;

const std::vector<LawId>& lawRegistry() {
  static const std::vector<LawId> registry{
      LawId::L2_3eq, LawId::L2_4eq, LawId::L2_5,    LawId::L2_6,
      LawId::L2_7,   LawId::L2_8fwd, LawId::L2_10,  LawId::L2_11,
      LawId::L2_12,  LawId::L2_13,  LawId::L2_14,   LawId::L2_16,
      LawId::L2_17_1, LawId::L2_17_2, LawId::L2_17_3, LawId::L2_18,
      LawId::L3_2,   LawId::L3_6,   LawId::L3_7min,
  };
  return registry;
}

std::string lawName(LawId id) {
  switch (id) {
    case LawId::L2_3eq: return "L2.3eq";
    case LawId::L2_4eq: return "L2.4eq";
    case LawId::L2_5: return "L2.5";
    case LawId::L2_6: return "L2.6";
    case LawId::L2_7: return "L2.7";
    case LawId::L2_8fwd: return "L2.8fwd";
    case LawId::L2_10: return "L2.10";
    case LawId::L2_11: return "L2.11";
    case LawId::L2_12: return "L2.12";
    case LawId::L2_13: return "L2.13";
    case LawId::L2_14: return "L2.14";
    case LawId::L2_16: return "L2.16";
    case LawId::L2_17_1: return "L2.17.1";
    case LawId::L2_17_2: return "L2.17.2";
    case LawId::L2_17_3: return "L2.17.3";
    case LawId::L2_18: return "L2.18";
    case LawId::L3_2: return "L3.2";
    case LawId::L3_6: return "L3.6";
    case LawId::L3_7min: return "L3.7min";
  }
  throw InternalError("unreachable");
}

LawId lawFromName(const std::string& name) {
  for (LawId id : lawRegistry())
    if (lawName(id) == name) return id;
  throw UnknownLaw("unknown law id: " + name);
}

std::string lawDescription(LawId id) {
  switch (id) {
    case LawId::L2_3eq:
      return "definitional and annihilator-chain classical prime tests agree "
             "on every submodule of every corpus module";
    case LawId::L2_4eq:
      return "both prime-submodule routes (definition; prime colon with "
             "singleton spectrum) agree on every corpus submodule";
    case LawId::L2_5:
      return "classical-Hilbert status equals the strictly-larger-classical-"
             "primes intersection property on every corpus module";
    case LawId::L2_6:
      return "homomorphic images of classical Hilbert modules stay classical "
             "Hilbert";
    case LawId::L2_7:
      return "classical Hilbert status is equivalent to the status of all "
             "quotients, and of quotients by minimal classical primes";
    case LawId::L2_8fwd:
      return "a classical Hilbert direct sum forces both summands classical "
             "Hilbert";
    case LawId::L2_10:
      return "classical Hilbert status is invariant under restricting scalars "
             "across R -> R/I when I annihilates the module";
    case LawId::L2_11:
      return "classical Hilbert status passes through the nilradical quotient "
             "in both module and ring";
    case LawId::L2_12:
      return "classical Hilbert status equals vanishing of the radical of "
             "every classical prime quotient";
    case LawId::L2_13:
      return "inside a torsion-free quotient, classical primes of the "
             "submodule keep zero radical over the integers";
    case LawId::L2_14:
      return "pure submodules of free integer modules are detected pure and "
             "classical Hilbert; scaled copies are rejected";
    case LawId::L2_16:
      return "an annihilator spectrum of maximal ideals forces an "
             "intersection of maximal submodules";
    case LawId::L2_17_1:
      return "every module over the zero-dimensional corpus rings is "
             "classical Hilbert";
    case LawId::L2_17_2:
      return "torsion finitely generated integer modules are classical "
             "Hilbert, cross-checked through the finite transport";
    case LawId::L2_17_3:
      return "finite (hence artinian) corpus modules are classical Hilbert";
    case LawId::L2_18:
      return "every corpus module is classical Hilbert (dimension-zero base)";
    case LawId::L3_2:
      return "sampled mixed-shape classical primes over Z are intersections "
             "of the two constructed prime submodules";
    case LawId::L3_6:
      return "sampled classical primes over Z and GF(p)[x] have zero quotient "
             "radical; the localization free module is the negative control";
    case LawId::L3_7min:
      return "classical Hilbert status agrees with the minimal-prime quotient "
             "transport on rings with nilpotents";
  }
  throw InternalError("unreachable");
}

// ---------------------------------------------------------------------------
// Corpus
// ---------------------------------------------------------------------------

std::vector<RingPtr> corpusRings() {
  std::vector<RingPtr> out;
  for (const char* spec :
       {"Z/2", "Z/3", "Z/4", "Z/6", "Z/8", "Z/12", "GF(2)[x]/[0,0,1]",
        "GF(2)[x]/[1,1,1]", "Z/2 x Z/3"})
    out.push_back(parseRingSpec(spec));
  return out;
}

std::vector<ModulePtr> corpusModules(const RingPtr& ring, const LawConfig& config,
                                     std::uint64_t seed) {
  if (config.maxModuleSize < 1)
    throw BoundExceeded("degenerate module size bound");
  std::vector<ModulePtr> out;
  std::map<std::string, bool> seen;
  auto tryAdd = [&](auto&& maker) {
    if (static_cast<std::int64_t>(out.size()) >= 28) return;
    try {
      ModulePtr m = maker();
      if (m->size() > config.maxModuleSize) return;
      std::string key = jsonio::canonicalDump(jsonio::moduleJson(*m));
      if (seen.emplace(key, true).second) out.push_back(std::move(m));
    } catch (const BoundExceeded&) {
    }
  };

  for (int k = 1; k <= 3; ++k)
    tryAdd([&] { return makeModule(ring, k, {}, config.bounds); });

  auto ideals = allIdeals(ring, config.bounds);
  for (const auto& ideal : ideals) {
    if (ideal.size() == 1 || !ideal.isProper()) continue;
    tryAdd([&] {
      std::vector<std::vector<std::int64_t>> rows;
      for (std::int64_t g : ideal.generators) rows.push_back({g});
      return makeModule(ring, 1, rows, config.bounds);
    });
  }
  for (size_t i = 0; i < ideals.size(); ++i)
    for (size_t j = i; j < ideals.size(); ++j) {
      if (!ideals[i].isProper() || !ideals[j].isProper()) continue;
      tryAdd([&] {
        std::vector<std::vector<std::int64_t>> rows;
        for (std::int64_t g : ideals[i].generators)
          rows.push_back({g, ring->zero()});
        for (std::int64_t g : ideals[j].generators)
          rows.push_back({ring->zero(), g});
        return makeModule(ring, 2, rows, config.bounds);
      });
    }

  Rng rng(deriveSeed(seed, "corpus:" + renderRingSpec(*ring)));
  for (int trial = 0; trial < 3; ++trial) {
    tryAdd([&] {
      int rank = 2 + static_cast<int>(rng.below(2));
      int rows = 1 + static_cast<int>(rng.below(2));
      std::vector<std::vector<std::int64_t>> relations;
      for (int r = 0; r < rows; ++r) {
        std::vector<std::int64_t> row;
        for (int c = 0; c < rank; ++c)
          row.push_back(rng.coin() ? static_cast<std::int64_t>(rng.below(2))
                                   : static_cast<std::int64_t>(
                                         rng.below(ring->size())));
        relations.push_back(std::move(row));
      }
      return makeModule(ring, rank, relations, config.bounds);
    });
  }
  return out;
}

// ---------------------------------------------------------------------------
// Finite instances: serialization and shrinking
// ---------------------------------------------------------------------------

json FiniteInstance::toJson() const {
  json out;
  out["ring"] = ringSpec;
  out["rank"] = rank;
  out["relations"] = relations;
  if (!subGens.empty()) out["submoduleGenerators"] = subGens;
  if (!detail.empty()) out["detail"] = detail;
  return out;
}

namespace {

FiniteInstance instanceOf(const ModulePtr& module, const SubmoduleF* sub,
                          std::string detail) {
  FiniteInstance inst;
  inst.ringSpec = renderRingSpec(*module->ring());
  inst.rank = module->rank();
  inst.relations = module->relations();
  if (sub)
    for (std::int32_t g : sub->generators)
      inst.subGens.push_back(module->repVector(g));
  inst.detail = std::move(detail);
  return inst;
}

}  // namespace

FiniteInstance shrinkFiniteInstance(
    const FiniteInstance& start,
    const std::function<bool(const FiniteInstance&)>& passes) {
  FiniteInstance current = start;
  bool progressed = true;
  int steps = 0;
  while (progressed && steps < 200) {
    progressed = false;
    std::vector<FiniteInstance> candidates;
    for (size_t i = 0; i < current.relations.size(); ++i) {
      FiniteInstance cand = current;
      cand.relations.erase(cand.relations.begin() + static_cast<long>(i));
      candidates.push_back(std::move(cand));
    }
    for (size_t i = 0; i < current.subGens.size(); ++i) {
      FiniteInstance cand = current;
      cand.subGens.erase(cand.subGens.begin() + static_cast<long>(i));
      candidates.push_back(std::move(cand));
    }
    // Ring shrinks: cyclic modulus to a proper divisor; drop a component.
    try {
      auto ring = parseRingSpec(current.ringSpec);
      for (int comp = 0; comp < ring->componentCount(); ++comp) {
        const auto& c = ring->component(comp);
        if (c.kind == RingComponent::Kind::CyclicInt) {
          for (std::int64_t d = 2; d < c.n; ++d) {
            if (c.n % d != 0) continue;
            auto components = ring->components();
            components[comp] = RingComponent::cyclic(d);
            auto shrunk = FiniteRing::make(components);
            FiniteInstance cand = current;
            cand.ringSpec = renderRingSpec(*shrunk);
            auto remap = [&](std::vector<std::vector<std::int64_t>>& rows) {
              for (auto& row : rows)
                for (auto& code : row) {
                  auto codes = ring->componentCodes(code);
                  codes[comp] %= d;
                  code = shrunk->packComponents(codes);
                }
            };
            remap(cand.relations);
            remap(cand.subGens);
            candidates.push_back(std::move(cand));
          }
        }
        if (ring->componentCount() > 1) {
          auto components = ring->components();
          components.erase(components.begin() + comp);
          auto shrunk = FiniteRing::make(components);
          FiniteInstance cand = current;
          cand.ringSpec = renderRingSpec(*shrunk);
          auto remap = [&](std::vector<std::vector<std::int64_t>>& rows) {
            for (auto& row : rows)
              for (auto& code : row) {
                auto codes = ring->componentCodes(code);
                codes.erase(codes.begin() + comp);
                code = shrunk->packComponents(codes);
              }
          };
          remap(cand.relations);
          remap(cand.subGens);
          candidates.push_back(std::move(cand));
        }
      }
    } catch (const std::exception&) {
    }

    for (auto& cand : candidates) {
      ++steps;
      bool stillFails;
      try {
        stillFails = !passes(cand);
      } catch (const std::exception&) {
        continue;  // malformed shrink candidate
      }
      if (stillFails) {
        current = std::move(cand);
        progressed = true;
        break;
      }
    }
  }
  return current;
}

// ---------------------------------------------------------------------------
// Law harness
// ---------------------------------------------------------------------------

namespace {

struct LawRun {
  LawReport report;
  const LawConfig& config;

  explicit LawRun(LawId id, const LawConfig& config, std::uint64_t seed)
      : config(config) {
    report.law = id;
    report.seed = seed;
  }

  void record(bool pass, const std::function<FiniteInstance()>& makeInstance,
              const std::function<bool(const FiniteInstance&)>& passes) {
    ++report.instancesGenerated;
    if (pass) {
      ++report.passed;
      return;
    }
    if (!report.counterexample) {
      FiniteInstance shrunk = passes
                                  ? shrinkFiniteInstance(makeInstance(), passes)
                                  : makeInstance();
      report.counterexample = jsonio::canonicalDump(shrunk.toJson());
    }
  }

  void record(bool pass, std::string detail) {
    ++report.instancesGenerated;
    if (pass) {
      ++report.passed;
      return;
    }
    if (!report.counterexample) {
      json j;
      j["detail"] = detail;
      report.counterexample = jsonio::canonicalDump(j);
    }
  }
};

std::vector<RingPtr> filteredCorpus(const LawConfig& config) {
  auto rings = corpusRings();
  if (!config.ringFilter) return rings;
  std::vector<RingPtr> out;
  auto wanted = parseRingSpec(*config.ringFilter);
  for (auto& r : rings)
    if (r->sameAs(*wanted)) out.push_back(r);
  if (out.empty()) out.push_back(wanted);
  return out;
}

// Rebuild a module (and optional submodule) from a serialized instance.
struct BuiltInstance {
  ModulePtr module;
  std::optional<SubmoduleF> sub;
};

BuiltInstance buildInstance(const FiniteInstance& inst, const Bounds& bounds) {
  BuiltInstance out;
  auto ring = parseRingSpec(inst.ringSpec);
  out.module = makeModule(ring, inst.rank, inst.relations, bounds);
  if (!inst.subGens.empty()) {
    std::vector<std::int32_t> gens;
    for (const auto& vec : inst.subGens)
      gens.push_back(out.module->canonicalIndex(vec));
    out.sub = submoduleGenerated(out.module, gens);
  }
  return out;
}

// Evenly spaced subsample of lattice indices, capped.
std::vector<size_t> subsampleIndices(size_t count, size_t cap) {
  std::vector<size_t> out;
  if (count == 0) return out;
  size_t stride = std::max<size_t>(1, count / cap);
  for (size_t i = 0; i < count; i += stride) out.push_back(i);
  return out;
}

// --- finite-corpus laws ----------------------------------------------------

void lawDualClassicalPrime(LawRun& run, std::uint64_t seed) {
  for (const auto& ring : filteredCorpus(run.config)) {
    for (const auto& module : corpusModules(ring, run.config, seed)) {
      bool pass = true;
      for (const auto& sub : allSubmodules(module, run.config.bounds)) {
        if (!sub.isProper()) continue;
        if (isClassicalPrimeDef(module, sub) !=
            isClassicalPrimeChain(module, sub)) {
          pass = false;
          run.record(
              false, [&] { return instanceOf(module, &sub, "routes disagree"); },
              [&](const FiniteInstance& inst) {
                auto built = buildInstance(inst, run.config.bounds);
                if (!built.sub || !built.sub->isProper()) return true;
                return isClassicalPrimeDef(built.module, *built.sub) ==
                       isClassicalPrimeChain(built.module, *built.sub);
              });
          break;
        }
      }
      if (pass) run.record(true, std::string{});
    }
  }
}

void lawDualPrime(LawRun& run, std::uint64_t seed) {
  for (const auto& ring : filteredCorpus(run.config)) {
    for (const auto& module : corpusModules(ring, run.config, seed)) {
      bool pass = true;
      std::string why;
      for (const auto& sub : allSubmodules(module, run.config.bounds)) {
        if (!sub.isProper()) continue;
        try {
          // isPrimeSub raises when its two routes disagree.
          bool prime = isPrimeSub(module, sub);
          if (prime && !isClassicalPrimeChain(module, sub)) {
            pass = false;
            why = "prime without classical prime";
            break;
          }
        } catch (const InternalError& e) {
          pass = false;
          why = e.what();
          break;
        }
      }
      run.record(pass, "module " + jsonio::moduleJson(*module).dump() +
                           (why.empty() ? "" : ": " + why));
    }
  }
}

void lawStrictlyLargerIntersections(LawRun& run, std::uint64_t seed) {
  for (const auto& ring : filteredCorpus(run.config)) {
    for (const auto& module : corpusModules(ring, run.config, seed)) {
      bool pass = clHilbertTwoRoutesAgree(module, run.config.bounds);
      run.record(
          pass, [&] { return instanceOf(module, nullptr, "routes disagree"); },
          [&](const FiniteInstance& inst) {
            return clHilbertTwoRoutesAgree(
                buildInstance(inst, run.config.bounds).module,
                run.config.bounds);
          });
    }
  }
}

void lawQuotientsStayClHilbert(LawRun& run, std::uint64_t seed) {
  for (const auto& ring : filteredCorpus(run.config)) {
    for (const auto& module : corpusModules(ring, run.config, seed)) {
      if (!isClHilbert(module, run.config.bounds)) {
        run.record(false, "corpus module not classical Hilbert");
        continue;
      }
      auto lattice = allSubmodules(module, run.config.bounds);
      bool pass = true;
      for (size_t idx : subsampleIndices(lattice.size(), 16)) {
        auto q = quotientModule(module, lattice[idx], run.config.bounds);
        if (!isClHilbert(q.module, run.config.bounds)) {
          pass = false;
          run.record(
              false,
              [&] {
                return instanceOf(module, &lattice[idx],
                                  "quotient lost the property");
              },
              [&](const FiniteInstance& inst) {
                auto built = buildInstance(inst, run.config.bounds);
                if (!built.sub) return true;
                auto bq = quotientModule(built.module, *built.sub,
                                         run.config.bounds);
                return isClHilbert(bq.module, run.config.bounds);
              });
          break;
        }
      }
      if (pass) run.record(true, std::string{});
    }
  }
}

void lawQuotientEquivalence(LawRun& run, std::uint64_t seed) {
  for (const auto& ring : filteredCorpus(run.config)) {
    for (const auto& module : corpusModules(ring, run.config, seed)) {
      bool whole = isClHilbert(module, run.config.bounds);
      auto lattice = allSubmodules(module, run.config.bounds);
      bool allQuotients = true;
      for (size_t idx : subsampleIndices(lattice.size(), 12)) {
        auto q = quotientModule(module, lattice[idx], run.config.bounds);
        if (!isClHilbert(q.module, run.config.bounds)) allQuotients = false;
      }
      bool minimalQuotients = true;
      for (const auto& p0 : minimalClassicalPrimes(module, run.config.bounds)) {
        auto q = quotientModule(module, p0, run.config.bounds);
        if (!isClHilbert(q.module, run.config.bounds)) minimalQuotients = false;
      }
      run.record(whole == allQuotients && whole == minimalQuotients,
                 "module " + jsonio::moduleJson(*module).dump());
    }
  }
}

void lawDirectSumForward(LawRun& run, std::uint64_t seed) {
  for (const auto& ring : filteredCorpus(run.config)) {
    auto modules = corpusModules(ring, run.config, seed);
    if (modules.empty()) continue;
    Rng rng(deriveSeed(seed, "pairs:" + renderRingSpec(*ring)));
    int pairs = 0;
    for (int trial = 0; trial < 24 && pairs < 8; ++trial) {
      const auto& m1 = modules[rng.below(modules.size())];
      const auto& m2 = modules[rng.below(modules.size())];
      if (m1->size() * m2->size() > run.config.maxModuleSize) continue;
      ++pairs;
      auto sum = directSum(m1, m2, run.config.bounds);
      bool pass = true;
      if (isClHilbert(sum.module, run.config.bounds))
        pass = isClHilbert(m1, run.config.bounds) &&
               isClHilbert(m2, run.config.bounds);
      run.record(pass, "sum of " + jsonio::moduleJson(*m1).dump() + " and " +
                           jsonio::moduleJson(*m2).dump());
    }
  }
}

void lawAnnihilatorTransport(LawRun& run, std::uint64_t seed) {
  for (const auto& ring : filteredCorpus(run.config)) {
    for (const auto& module : corpusModules(ring, run.config, seed)) {
      auto ann = annihilatorOfModule(module);
      bool pass = true;
      std::string why;
      for (const auto& ideal : allIdeals(ring, run.config.bounds)) {
        if (!ann.containsAll(ideal)) continue;
        if (!ideal.isProper()) continue;  // quotient by R is not a ring
        auto q = quotientRing(ring, ideal);
        auto t = transportAcrossQuotient(module, q, run.config.bounds);
        if (isClHilbert(module, run.config.bounds) !=
            isClHilbert(t.module, run.config.bounds)) {
          pass = false;
          why = "transport across " + jsonio::idealJson(ideal).dump();
          break;
        }
      }
      run.record(pass, "module " + jsonio::moduleJson(*module).dump() +
                           (why.empty() ? "" : ": " + why));
    }
  }
}

void lawNilradicalTransport(LawRun& run, std::uint64_t seed) {
  for (const auto& ring : filteredCorpus(run.config)) {
    auto nil = nilradical(ring, run.config.bounds);
    for (const auto& module : corpusModules(ring, run.config, seed)) {
      bool base = isClHilbert(module, run.config.bounds);
      // N = Nil(R) * M.
      std::vector<std::int32_t> gens;
      for (std::int64_t j : nil.generators)
        for (std::int32_t g : module->generatorImages())
          gens.push_back(module->scalar(j, g));
      auto nilM = submoduleGenerated(module, gens);
      auto q = quotientModule(module, nilM, run.config.bounds);
      bool overR = isClHilbert(q.module, run.config.bounds);
      bool pass = base == overR;
      if (pass && nil.isProper()) {
        auto rq = quotientRing(ring, nil);
        auto t = transportAcrossQuotient(q.module, rq, run.config.bounds);
        pass = base == isClHilbert(t.module, run.config.bounds);
      }
      run.record(pass, "module " + jsonio::moduleJson(*module).dump());
    }
  }
}

void lawRadicalCharacterization(LawRun& run, std::uint64_t seed) {
  for (const auto& ring : filteredCorpus(run.config)) {
    for (const auto& module : corpusModules(ring, run.config, seed)) {
      bool whole = isClHilbert(module, run.config.bounds);
      bool allZeroRadicals = true;
      for (const auto& sub : allSubmodules(module, run.config.bounds)) {
        if (!sub.isProper() || !isClassicalPrimeChain(module, sub)) continue;
        auto q = quotientModule(module, sub, run.config.bounds);
        if (radicalOfModule(q.module, run.config.bounds).size() != 1)
          allZeroRadicals = false;
      }
      run.record(whole == allZeroRadicals,
                 "module " + jsonio::moduleJson(*module).dump());
    }
  }
}

void lawMaximalSpectrumForcesIntersection(LawRun& run, std::uint64_t seed) {
  for (const auto& ring : filteredCorpus(run.config)) {
    for (const auto& module : corpusModules(ring, run.config, seed)) {
      bool pass = true;
      for (const auto& sub : allSubmodules(module, run.config.bounds)) {
        if (!sub.isProper() || !isClassicalPrimeChain(module, sub)) continue;
        bool allMaximal = true;
        for (const auto& ann : annSpectrum(module, sub))
          if (!isMaximalIdeal(ann)) allMaximal = false;
        if (allMaximal && !isIntersectionOfMaximals(module, sub, run.config.bounds)) {
          pass = false;
          break;
        }
      }
      run.record(pass, "module " + jsonio::moduleJson(*module).dump());
    }
  }
}

void lawEveryCorpusModuleClHilbert(LawRun& run, std::uint64_t seed) {
  for (const auto& ring : filteredCorpus(run.config)) {
    for (const auto& module : corpusModules(ring, run.config, seed)) {
      bool pass = isClHilbert(module, run.config.bounds);
      run.record(
          pass, [&] { return instanceOf(module, nullptr, "not cl.Hilbert"); },
          [&](const FiniteInstance& inst) {
            return isClHilbert(buildInstance(inst, run.config.bounds).module,
                               run.config.bounds);
          });
    }
  }
}

void lawMinimalPrimeTransport(LawRun& run, std::uint64_t seed) {
  for (const auto& ring : filteredCorpus(run.config)) {
    // Focus rings with nontrivial nilpotents, plus any explicitly filtered.
    auto nil = nilradical(ring, run.config.bounds);
    if (nil.size() == 1 && !run.config.ringFilter) continue;
    std::vector<IdealF> primes;
    for (auto& ideal : allIdeals(ring, run.config.bounds))
      if (isPrimeIdeal(ideal)) primes.push_back(std::move(ideal));
    std::vector<IdealF> minimal;
    for (const auto& p : primes) {
      bool isMin = true;
      for (const auto& q : primes)
        if (q.size() < p.size() && p.containsAll(q)) isMin = false;
      if (isMin) minimal.push_back(p);
    }
    for (const auto& module : corpusModules(ring, run.config, seed)) {
      bool base = isClHilbert(module, run.config.bounds);
      bool pass = true;
      for (const auto& p0 : minimal) {
        std::vector<std::int32_t> gens;
        for (std::int64_t j : p0.generators)
          for (std::int32_t g : module->generatorImages())
            gens.push_back(module->scalar(j, g));
        auto q = quotientModule(module, submoduleGenerated(module, gens),
                                run.config.bounds);
        auto rq = quotientRing(ring, p0);
        auto t = transportAcrossQuotient(q.module, rq, run.config.bounds);
        if (base != isClHilbert(t.module, run.config.bounds)) pass = false;
      }
      run.record(pass, "module " + jsonio::moduleJson(*module).dump());
    }
  }
}

// --- sampled laws over the euclidean domains -------------------------------

Elem samplePrimeElem(const EuclideanDomain& d, Rng& rng) {
  switch (d.kind()) {
    case EuclideanDomain::Kind::Int: {
      static const long primes[] = {2, 3, 5, 7, 11, 13};
      return d.fromInt(primes[rng.below(6)]);
    }
    case EuclideanDomain::Kind::PolyOverGF: {
      while (true) {
        int deg = 1 + static_cast<int>(rng.below(2));
        gfp::Poly cand(static_cast<size_t>(deg) + 1, 0);
        for (int i = 0; i < deg; ++i)
          cand[i] = static_cast<long>(rng.below(static_cast<std::uint64_t>(d.prime())));
        cand[deg] = 1;
        if (gfp::isIrreducible(cand, d.prime())) return cand;
      }
    }
    case EuclideanDomain::Kind::IntLocAt:
      return d.fromInt(d.prime());
  }
  throw InternalError("unreachable");
}

Elem sampleSmallElem(const EuclideanDomain& d, Rng& rng) {
  switch (d.kind()) {
    case EuclideanDomain::Kind::Int:
      return d.fromInt(rng.inRange(-9, 9));
    case EuclideanDomain::Kind::PolyOverGF: {
      gfp::Poly p;
      int deg = static_cast<int>(rng.below(3));
      for (int i = 0; i <= deg; ++i)
        p.push_back(static_cast<long>(rng.below(static_cast<std::uint64_t>(d.prime()))));
      return gfp::normalize(p, d.prime());
    }
    case EuclideanDomain::Kind::IntLocAt:
      return d.fromInt(rng.inRange(-9, 9));
  }
  throw InternalError("unreachable");
}

// Random unimodular k x k matrix built from elementary operations.
DMat randomUnimodular(const EuclideanDomain& d, Rng& rng, int k, int ops) {
  DMat w = identityMat(d, k);
  for (int step = 0; step < ops; ++step) {
    int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
    int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
    if (i == j) continue;
    Elem c = d.fromInt(rng.inRange(-2, 2));
    for (int col = 0; col < k; ++col)
      w.at(j, col) = d.add(w.at(j, col), d.mul(c, w.at(i, col)));
  }
  return w;
}

struct SampledClassicalPrime {
  PresentedModule module;
  SubmodulePres sub;
  Elem prime;
  int freeRank = 0;
  int primePowerCount = 0;
};

// Build a module with a known classical prime preimage by prescribing the
// quotient shape in SNF coordinates and pulling the generators back.
std::optional<SampledClassicalPrime> sampleClassicalPrime(
    const EuclideanDomain& d, Rng& rng, bool forceMixed) {
  const int k = forceMixed ? 2 + static_cast<int>(rng.below(2))
                           : 1 + static_cast<int>(rng.below(3));
  PresentedModule module{d, k, {}};
  if (!forceMixed && rng.coin()) {
    int rows = 1 + static_cast<int>(rng.below(2));
    for (int r = 0; r < rows; ++r) {
      Vec row;
      for (int c = 0; c < k; ++c) row.push_back(sampleSmallElem(d, rng));
      module.relations.push_back(std::move(row));
    }
  }

  Elem pi = samplePrimeElem(d, rng);
  // Diagonalize the module presentation and decide, coordinate by
  // coordinate, whether the quotient keeps D, D/(pi), or dies.
  DMat vinv;
  std::vector<Elem> diag;
  if (module.relations.empty()) {
    vinv = identityMat(d, k);
  } else {
    auto snf = smithNormalForm(d, matFromRows(module.relations, k, d));
    vinv = snf.vinv;
    diag = snf.diag;
  }
  const int t0 = static_cast<int>(diag.size());
  SampledClassicalPrime out{module, {}, pi, 0, 0};
  for (int i = 0; i < k; ++i) {
    if (i < t0 && d.isUnit(diag[i])) continue;  // coordinate already dead
    bool torsion = i < t0;
    bool canReduce = !torsion || d.divides(pi, diag[i]);
    int choice = static_cast<int>(rng.below(3));  // 0 kill, 1 reduce, 2 free
    if (torsion && choice == 2) choice = 1;       // no free option inside torsion
    if (choice == 1 && !canReduce) choice = 0;
    if (forceMixed) {
      // Need r >= 1 and s >= 1: make the first coordinate free, second reduced.
      if (i == 0) choice = 2;
      if (i == 1) choice = 1;
    }
    if (choice == 2) {
      ++out.freeRank;
      continue;
    }
    Vec row = vinv.row(i);
    if (choice == 1) {
      for (auto& e : row) e = d.mul(pi, e);
      ++out.primePowerCount;
    }
    out.sub.generators.push_back(std::move(row));
  }
  if (out.freeRank + out.primePowerCount == 0) return std::nullopt;
  return out;
}

void lawSampledZeroRadicals(LawRun& run, std::uint64_t seed) {
  const std::int64_t samples =
      run.config.sampleCount > 0 ? run.config.sampleCount : 60;
  std::vector<EuclideanDomain> domains{EuclideanDomain::integers(),
                                       EuclideanDomain::polyOverGF(2),
                                       EuclideanDomain::polyOverGF(5)};
  for (const auto& d : domains) {
    Rng rng(deriveSeed(seed, "L3.6:" + renderDomainSpec(d)));
    std::int64_t done = 0, attempts = 0;
    while (done < samples && attempts < samples * 64) {
      ++attempts;
      auto sampled = sampleClassicalPrime(d, rng, false);
      if (!sampled) continue;
      ++done;
      bool pass = isClassicalPrimeFG(sampled->module, sampled->sub) &&
                  radicalShape(sampled->module, sampled->sub).zero &&
                  isClHilbertFG(sampled->module).value == Verdict::True;
      run.record(pass, "sampled classical prime over " + renderDomainSpec(d));
    }
    // Guard against vacuously-true predicates: a repeated prime is not a
    // classical prime shape.
    Rng neg(deriveSeed(seed, "L3.6neg:" + renderDomainSpec(d)));
    Elem pi = samplePrimeElem(d, neg);
    PresentedModule free1{d, 1, {}};
    SubmodulePres square{{Vec{d.mul(pi, pi)}}};
    run.record(!isClassicalPrimeFG(free1, square),
               "square of a prime misclassified over " + renderDomainSpec(d));
  }
  // Negative control: the localization has J = (p) and a free module fails.
  for (long p : {2L, 3L, 5L}) {
    auto loc = EuclideanDomain::intLocalizedAt(p);
    PresentedModule freeLoc{loc, 1, {}};
    auto verdict = isClHilbertFG(freeLoc);
    bool pass = verdict.value == Verdict::False && verdict.radicalGenerator &&
                loc.equal(*verdict.radicalGenerator, Elem(mpq_class(p))) &&
                !radicalShape(freeLoc, SubmodulePres{}).zero;
    PresentedModule torsionLoc{loc, 1, {Vec{Elem(mpq_class(p * p))}}};
    pass = pass && isClHilbertFG(torsionLoc).value == Verdict::True;
    run.record(pass, "localization control at p=" + std::to_string(p));
  }
}

void lawMixedShapeIntersections(LawRun& run, std::uint64_t seed) {
  const std::int64_t samples =
      run.config.sampleCount > 0 ? run.config.sampleCount : 60;
  const auto d = EuclideanDomain::integers();
  Rng rng(deriveSeed(seed, "L3.2"));
  std::int64_t done = 0, attempts = 0;
  while (done < samples && attempts < samples * 64) {
    ++attempts;
    auto sampled = sampleClassicalPrime(d, rng, true);
    if (!sampled || sampled->freeRank == 0 || sampled->primePowerCount == 0)
      continue;
    ++done;
    const auto& m = sampled->module;
    const auto& p = sampled->sub;

    auto stacked = m.relations;
    stacked.insert(stacked.end(), p.generators.begin(), p.generators.end());
    auto snf = smithNormalForm(d, matFromRows(stacked, m.rank, d));
    const int t = static_cast<int>(snf.diag.size());

    SubmodulePres torsionPreimage;  // free quotient; a prime submodule
    for (int i = 0; i < t; ++i)
      torsionPreimage.generators.push_back(snf.vinv.row(i));
    SubmodulePres piFreePreimage = p;  // quotient (Z/pi)^(r+s); prime
    for (int j = t; j < m.rank; ++j) {
      Vec row = snf.vinv.row(j);
      for (auto& e : row) e = d.mul(sampled->prime, e);
      piFreePreimage.generators.push_back(std::move(row));
    }

    bool pass = isClassicalPrimeFG(m, p) && isPrimeFG(m, torsionPreimage) &&
                isPrimeFG(m, piFreePreimage);

    auto stackRows = [&](const SubmodulePres& s) {
      auto rows = m.relations;
      rows.insert(rows.end(), s.generators.begin(), s.generators.end());
      return rows;
    };
    auto pRows = stackRows(p);
    auto q1Rows = stackRows(torsionPreimage);
    auto q2Rows = stackRows(piFreePreimage);
    for (const auto& g : pRows)
      pass = pass && hermiteMembership(d, q1Rows, g) &&
             hermiteMembership(d, q2Rows, g);
    for (const auto& z : intersectSpans(d, q1Rows, q2Rows, m.rank))
      pass = pass && hermiteMembership(d, pRows, z);
    run.record(pass, "mixed-shape classical prime sample");
  }
}

// Classical prime of a free module of the given rank, via a unimodular
// change of basis and a per-coordinate choice of kill / reduce mod pi /
// leave free. Rejects the whole-module case.
std::optional<SubmodulePres> sampleClassicalPrimeOfFree(const EuclideanDomain& d,
                                                        Rng& rng, int rank,
                                                        const Elem& pi) {
  DMat w = randomUnimodular(d, rng, rank, 2 * rank);
  SubmodulePres out;
  int alive = 0;
  for (int i = 0; i < rank; ++i) {
    switch (rng.below(3)) {
      case 0:
        out.generators.push_back(w.row(i));  // kill
        break;
      case 1: {
        Vec row = w.row(i);
        for (auto& e : row) e = d.mul(pi, e);
        out.generators.push_back(std::move(row));  // reduce to D/(pi)
        ++alive;
        break;
      }
      default:
        ++alive;  // leave free
        break;
    }
  }
  if (alive == 0) return std::nullopt;
  return out;
}

void lawTorsionFreeQuotientRestriction(LawRun& run, std::uint64_t seed) {
  const std::int64_t samples =
      run.config.sampleCount > 0 ? run.config.sampleCount : 40;
  const auto d = EuclideanDomain::integers();
  Rng rng(deriveSeed(seed, "L2.13"));
  std::int64_t done = 0, attempts = 0;
  while (done < samples && attempts < samples * 64) {
    ++attempts;
    const int k = 2 + static_cast<int>(rng.below(2));
    const int r = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
    DMat w = randomUnimodular(d, rng, k, 6);
    SubmodulePres n;
    for (int row = 0; row < r; ++row) n.generators.push_back(w.row(row));
    PresentedModule m{d, k, {}};

    // N is free of rank r on its generator rows; classical primes of N in
    // those coordinates must keep a vanishing quotient radical.
    Elem pi = samplePrimeElem(d, rng);
    auto p = sampleClassicalPrimeOfFree(d, rng, r, pi);
    if (!p) continue;
    ++done;
    PresentedModule nModule{d, r, {}};
    bool pass = isTorsionFreeQuotient(m, n) &&
                isClassicalPrimeFG(nModule, *p) &&
                radicalShape(nModule, *p).zero;
    run.record(pass, "torsion-free quotient sample");
  }
}

void lawPureSubmodules(LawRun& run, std::uint64_t seed) {
  const std::int64_t samples =
      run.config.sampleCount > 0 ? run.config.sampleCount : 40;
  const auto d = EuclideanDomain::integers();
  Rng rng(deriveSeed(seed, "L2.14"));
  for (std::int64_t i = 0; i < samples; ++i) {
    const int k = 2 + static_cast<int>(rng.below(2));
    const int r = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(k - 1)));
    DMat w = randomUnimodular(d, rng, k, 6);
    PresentedModule m{d, k, {}};
    SubmodulePres pure;
    for (int row = 0; row < r; ++row) pure.generators.push_back(w.row(row));
    bool pass = isPureSubmodule(m, pure) &&
                isClHilbertFG(PresentedModule{d, r, {}}).value == Verdict::True;

    // Negative control: a scaled copy is never pure.
    SubmodulePres scaled;
    for (const auto& g : pure.generators) {
      Vec row(g.size());
      for (size_t c = 0; c < g.size(); ++c) row[c] = d.mul(d.fromInt(2), g[c]);
      scaled.generators.push_back(std::move(row));
    }
    pass = pass && !isPureSubmodule(m, scaled);
    run.record(pass, "pure submodule sample");
  }
}

void lawTorsionIntegerModules(LawRun& run, std::uint64_t seed) {
  const std::int64_t samples =
      run.config.sampleCount > 0 ? run.config.sampleCount : 30;
  const auto d = EuclideanDomain::integers();
  Rng rng(deriveSeed(seed, "L2.17.2"));
  std::int64_t done = 0, attempts = 0;
  while (done < samples && attempts < samples * 64) {
    ++attempts;
    const int k = 1 + static_cast<int>(rng.below(2));
    std::vector<Vec> relations;
    DMat w = randomUnimodular(d, rng, k, 4);
    std::int64_t sizeEstimate = 1;
    for (int i = 0; i < k; ++i) {
      std::int64_t di = 2 + static_cast<std::int64_t>(rng.below(7));
      sizeEstimate *= di;
      Vec row(k, d.zero());
      for (int c = 0; c < k; ++c) row[c] = d.mul(d.fromInt(di), w.at(i, c));
      relations.push_back(std::move(row));
    }
    if (sizeEstimate > run.config.maxModuleSize) continue;
    ++done;
    PresentedModule m{d, k, relations};
    auto shape = shapeOfModule(m);
    bool pass = shape.freeRank == 0 &&
                isClHilbertFG(m).value == Verdict::True;
    if (pass && !shape.invariantFactors.empty()) {
      // Finite transport: the same presentation over Z/exponent.
      const mpz_class exponent =
          std::get<mpz_class>(shape.invariantFactors.back());
      if (exponent.fits_slong_p()) {
        auto ring = makeFiniteRing(
            {RingComponent::cyclic(exponent.get_si())});
        std::vector<std::vector<std::int64_t>> finRel;
        for (const auto& row : relations) {
          std::vector<std::int64_t> fr;
          for (const auto& e : row) {
            mpz_class v = std::get<mpz_class>(e) % exponent;
            if (v < 0) v += exponent;
            fr.push_back(v.get_si());
          }
          finRel.push_back(std::move(fr));
        }
        auto finite = makeModule(ring, k, finRel, run.config.bounds);
        pass = static_cast<std::int64_t>(finite->size()) <=
                   run.config.bounds.maxLattice
               ? isClHilbert(finite, run.config.bounds)
               : pass;
      }
    }
    run.record(pass, "torsion integer module sample");
  }
}

}  // namespace

LawReport runLaw(LawId id, const LawConfig& config, std::uint64_t seed) {
  LawRun run(id, config, seed);
  const auto start = std::chrono::steady_clock::now();
  try {
    if (config.maxModuleSize < 1)
      throw BoundExceeded("degenerate module size bound");
    switch (id) {
      case LawId::L2_3eq: lawDualClassicalPrime(run, seed); break;
      case LawId::L2_4eq: lawDualPrime(run, seed); break;
      case LawId::L2_5: lawStrictlyLargerIntersections(run, seed); break;
      case LawId::L2_6: lawQuotientsStayClHilbert(run, seed); break;
      case LawId::L2_7: lawQuotientEquivalence(run, seed); break;
      case LawId::L2_8fwd: lawDirectSumForward(run, seed); break;
      case LawId::L2_10: lawAnnihilatorTransport(run, seed); break;
      case LawId::L2_11: lawNilradicalTransport(run, seed); break;
      case LawId::L2_12: lawRadicalCharacterization(run, seed); break;
      case LawId::L2_13: lawTorsionFreeQuotientRestriction(run, seed); break;
      case LawId::L2_14: lawPureSubmodules(run, seed); break;
      case LawId::L2_16: lawMaximalSpectrumForcesIntersection(run, seed); break;
      case LawId::L2_17_1:
      case LawId::L2_17_3:
      case LawId::L2_18: lawEveryCorpusModuleClHilbert(run, seed); break;
      case LawId::L2_17_2: lawTorsionIntegerModules(run, seed); break;
      case LawId::L3_2: lawMixedShapeIntersections(run, seed); break;
      case LawId::L3_6: lawSampledZeroRadicals(run, seed); break;
      case LawId::L3_7min: lawMinimalPrimeTransport(run, seed); break;
    }
  } catch (const std::exception& e) {
    run.report.error = e.what();
  }
  run.report.elapsedSeconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return run.report;
}

std::vector<LawReport> runAll(const LawConfig& config, std::uint64_t rootSeed) {
  std::vector<LawReport> reports;
  for (LawId id : lawRegistry())
    reports.push_back(runLaw(id, config, deriveSeed(rootSeed, lawName(id))));
  return reports;
}

json lawReportJson(const LawReport& report) {
  json out;
  out["law"] = lawName(report.law);
  out["instancesGenerated"] = report.instancesGenerated;
  out["passed"] = report.passed;
  out["seed"] = report.seed;
  if (report.counterexample)
    out["counterexample"] = json::parse(*report.counterexample);
  if (report.error) out["error"] = *report.error;
  return out;
}

MineReport mineSubmoduleHeredity(const LawConfig& config, std::uint64_t seed) {
  MineReport out;
  for (const auto& ring : corpusRings()) {
    if (config.ringFilter &&
        !parseRingSpec(*config.ringFilter)->sameAs(*ring))
      continue;
    for (const auto& module : corpusModules(ring, config, seed)) {
      if (!isClHilbert(module, config.bounds)) continue;
      ++out.modulesScanned;
      auto lattice = allSubmodules(module, config.bounds);
      for (size_t idx : subsampleIndices(lattice.size(), 12)) {
        const auto& sub = lattice[idx];
        if (sub.size() == 1) continue;
        auto presented = presentSubmoduleAsModule(module, sub, config.bounds);
        ++out.submodulesScanned;
        if (!isClHilbert(presented.module, config.bounds)) {
          auto inst = instanceOf(module, &sub, "submodule not cl.Hilbert");
          out.counterexample = jsonio::canonicalDump(inst.toJson());
          return out;
        }
      }
    }
  }
  return out;
}

}  // namespace modlattice
