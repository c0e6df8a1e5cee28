// modlattice: exact computations on submodule lattices over finite
// commutative rings and over Z, GF(p)[x], and Z localized at a prime.
// Subcommands: classify, lattice, cl-hilbert, laws run, witness zx.

#include <chrono>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "modlattice/classify.hpp"
#include "modlattice/euclid.hpp"
#include "modlattice/jsonio.hpp"
#include "modlattice/laws.hpp"
#include "modlattice/rng.hpp"
#include "modlattice/zx_witness.hpp"

namespace {

using namespace modlattice;
using jsonio::json;

constexpr const char* kToolVersion = "modlattice 0.1.0";

// Exit codes: 0 ok, 1 law failure, 2 parse, 3 unsupported, 4 bounds,
// 5 internal.
enum ExitCode {
  kOk = 0,
  kLawFailure = 1,
  kParseError = 2,
  kUnsupported = 3,
  kBounds = 4,
  kInternal = 5,
};

struct CommonArgs {
  std::string ring;
  std::string domain;
  std::string moduleJson;
  std::string submoduleJson;
  std::string outPath;
  std::string format = "json";
  std::int64_t maxModule = -1;  // -1 = use defaults; 0 is a real (degenerate) bound
  std::int64_t maxLattice = -1;
};

Bounds boundsFrom(const CommonArgs& args) {
  Bounds b = defaultBounds();
  if (args.maxModule >= 0) b.maxModule = args.maxModule;
  if (args.maxLattice >= 0) b.maxLattice = args.maxLattice;
  return b;
}

json parseJsonArg(const std::string& text, const char* what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw ParseError(std::string("malformed JSON for ") + what + ": " + text);
  return j;
}

void emitReport(const CommonArgs& args, const std::string& command,
                json inputEcho, json result, double elapsedSeconds) {
  json report;
  report["toolVersion"] = kToolVersion;
  inputEcho["command"] = command;
  report["inputEcho"] = inputEcho;
  report["result"] = result;
  std::string text = jsonio::canonicalDump(report);
  if (args.outPath.empty()) {
    std::cout << text;
  } else {
    jsonio::atomicWrite(args.outPath, text);
  }
  std::cerr << command << " finished in " << elapsedSeconds << "s\n";
}

struct FiniteJob {
  RingPtr ring;
  ModulePtr module;
  std::optional<SubmoduleF> sub;
};

FiniteJob loadFiniteJob(const CommonArgs& args, bool needSubmodule) {
  FiniteJob job;
  RingPtr override;
  if (!args.ring.empty()) override = parseRingSpec(args.ring);
  if (args.moduleJson.empty()) throw ParseError("--module is required");
  job.module = jsonio::moduleFrom(parseJsonArg(args.moduleJson, "--module"),
                                  override, boundsFrom(args));
  job.ring = job.module->ring();
  if (!args.submoduleJson.empty()) {
    job.sub = jsonio::submoduleFrom(
        job.module, parseJsonArg(args.submoduleJson, "--submodule"));
  } else if (needSubmodule) {
    throw ParseError("--submodule is required");
  }
  return job;
}

json shapeJson(const EuclideanDomain& d, const QuotientShape& shape) {
  json out;
  out["freeRank"] = shape.freeRank;
  out["invariantFactors"] = json::array();
  for (const auto& e : shape.invariantFactors)
    out["invariantFactors"].push_back(jsonio::elemJson(d, e));
  return out;
}

int runClassify(const CommonArgs& args) {
  const auto start = std::chrono::steady_clock::now();
  json echo;
  json result;
  if (!args.domain.empty()) {
    auto d = parseDomainSpec(args.domain);
    auto m = jsonio::presentedModuleFrom(
        d, parseJsonArg(args.moduleJson.empty() ? "{}" : args.moduleJson,
                        "--module"));
    if (args.submoduleJson.empty()) throw ParseError("--submodule is required");
    auto p = jsonio::submodulePresFrom(
        d, m.rank, parseJsonArg(args.submoduleJson, "--submodule"));
    echo["domain"] = renderDomainSpec(d);
    echo["module"] = jsonio::presentedModuleJson(m);
    echo["submodule"] = jsonio::submodulePresJson(d, p);

    auto shape = quotientShape(m, p);
    result["proper"] = !shape.isZeroModule();
    result["shape"] = shapeJson(d, shape);
    if (!shape.isZeroModule()) {
      result["classicalPrime"] = isClassicalPrimeFG(m, p);
      result["prime"] = isPrimeFG(m, p);
      // Simple quotient <=> exactly one prime invariant factor and no free
      // part; maximal submodules are the kernels of simple quotients.
      result["maximal"] = shape.freeRank == 0 &&
                          shape.invariantFactors.size() == 1 &&
                          d.isPrime(shape.invariantFactors[0]);
      auto rad = radicalShape(m, p);
      result["intersectionOfMaximals"] = rad.zero;
      json radJson;
      radJson["zero"] = rad.zero;
      if (rad.generator)
        radJson["generator"] = jsonio::elemJson(d, *rad.generator);
      result["radical"] = radJson;
      // (P : M) is (0) with a free part, else the smallest invariant factor
      // annihilating the whole quotient, i.e. the last one.
      result["colon"] = shape.freeRank > 0
                            ? jsonio::elemJson(d, d.zero())
                            : (shape.invariantFactors.empty()
                                   ? jsonio::elemJson(d, d.one())
                                   : jsonio::elemJson(
                                         d, shape.invariantFactors.back()));
    }
  } else {
    auto job = loadFiniteJob(args, true);
    echo["ring"] = renderRingSpec(*job.ring);
    echo["module"] = jsonio::moduleJson(*job.module);
    echo["submodule"] = jsonio::submoduleJson(*job.module, *job.sub);
    auto classification =
        classifySubmodule(job.module, *job.sub, boundsFrom(args));
    result = jsonio::classificationJson(*job.ring, classification);
  }
  emitReport(args, "classify", echo, result,
             std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                           start)
                 .count());
  return kOk;
}

std::string latticeDot(const ModulePtr& module,
                       const std::vector<SubmoduleF>& lattice,
                       const std::vector<json>& nodes) {
  std::string out = "digraph lattice {\n  rankdir=BT;\n";
  for (size_t i = 0; i < lattice.size(); ++i) {
    std::string flags;
    if (nodes[i]["maximal"].get<bool>()) flags += "M";
    if (nodes[i]["prime"].get<bool>()) flags += "P";
    if (nodes[i]["classicalPrime"].get<bool>()) flags += "C";
    if (nodes[i]["intersectionOfMaximals"].get<bool>()) flags += "R";
    out += "  n" + std::to_string(i) + " [label=\"#" + std::to_string(i) +
           " size=" + std::to_string(lattice[i].size()) +
           (flags.empty() ? "" : " " + flags) + "\"];\n";
  }
  // Covering edges: a < b with nothing strictly between.
  for (size_t a = 0; a < lattice.size(); ++a)
    for (size_t b = 0; b < lattice.size(); ++b) {
      if (a == b || lattice[a].size() >= lattice[b].size()) continue;
      if (!lattice[b].containsAll(lattice[a])) continue;
      bool covering = true;
      for (size_t c = 0; c < lattice.size() && covering; ++c) {
        if (c == a || c == b) continue;
        if (lattice[c].size() <= lattice[a].size() ||
            lattice[c].size() >= lattice[b].size())
          continue;
        if (lattice[c].containsAll(lattice[a]) &&
            lattice[b].containsAll(lattice[c]))
          covering = false;
      }
      if (covering)
        out += "  n" + std::to_string(a) + " -> n" + std::to_string(b) + ";\n";
    }
  out += "}\n";
  return out;
}

int runLattice(const CommonArgs& args) {
  const auto start = std::chrono::steady_clock::now();
  auto job = loadFiniteJob(args, false);
  auto bounds = boundsFrom(args);
  auto lattice = allSubmodules(job.module, bounds);
  json echo;
  echo["ring"] = renderRingSpec(*job.ring);
  echo["module"] = jsonio::moduleJson(*job.module);

  std::vector<json> nodes;
  for (const auto& sub : lattice) {
    json node;
    node["size"] = sub.size();
    node["generators"] = jsonio::submoduleJson(*job.module, sub)["generators"];
    bool proper = sub.isProper();
    node["maximal"] = proper && isMaximalSub(job.module, sub);
    node["prime"] = proper && isPrimeSub(job.module, sub);
    node["classicalPrime"] = proper && isClassicalPrimeChain(job.module, sub);
    node["intersectionOfMaximals"] =
        proper && isIntersectionOfMaximals(job.module, sub, bounds);
    nodes.push_back(std::move(node));
  }
  double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  if (args.format == "dot") {
    std::string dot = latticeDot(job.module, lattice, nodes);
    if (args.outPath.empty())
      std::cout << dot;
    else
      jsonio::atomicWrite(args.outPath, dot);
    std::cerr << "lattice finished in " << elapsed << "s\n";
    return kOk;
  }
  json result;
  result["count"] = static_cast<std::int64_t>(lattice.size());
  result["nodes"] = nodes;
  emitReport(args, "lattice", echo, result, elapsed);
  return kOk;
}

int runClHilbert(const CommonArgs& args) {
  const auto start = std::chrono::steady_clock::now();
  json echo, result;
  if (!args.domain.empty()) {
    auto d = parseDomainSpec(args.domain);
    auto m = jsonio::presentedModuleFrom(
        d, parseJsonArg(args.moduleJson.empty() ? "{}" : args.moduleJson,
                        "--module"));
    echo["domain"] = renderDomainSpec(d);
    echo["module"] = jsonio::presentedModuleJson(m);
    auto verdict = isClHilbertFG(m);
    result["verdict"] = verdict.value == Verdict::True    ? "true"
                        : verdict.value == Verdict::False ? "false"
                                                          : "unsupported";
    result["justification"] = verdict.tag == VerdictTag::TheoremBacked
                                  ? "TheoremBacked"
                                  : "Derived";
    if (verdict.witness)
      result["witness"] = jsonio::submodulePresJson(d, *verdict.witness);
    if (verdict.radicalGenerator)
      result["radical"] = jsonio::elemJson(d, *verdict.radicalGenerator);
  } else {
    auto job = loadFiniteJob(args, false);
    echo["ring"] = renderRingSpec(*job.ring);
    echo["module"] = jsonio::moduleJson(*job.module);
    bool verdict = isClHilbert(job.module, boundsFrom(args));
    result["verdict"] = verdict ? "true" : "false";
    result["justification"] = "Exhaustive";
  }
  emitReport(args, "cl-hilbert", echo, result,
             std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                           start)
                 .count());
  return kOk;
}

int runLaws(const CommonArgs& args, const std::string& lawFlag, bool all,
            std::optional<std::uint64_t> seed, std::int64_t samples,
            const std::string& mine) {
  if (!seed) throw ParseError("laws run requires --seed");
  const auto start = std::chrono::steady_clock::now();
  LawConfig config;
  config.bounds = boundsFrom(args);
  if (args.maxModule >= 0) config.maxModuleSize = args.maxModule;
  if (samples > 0) config.sampleCount = samples;
  if (!args.ring.empty()) config.ringFilter = args.ring;

  json echo;
  echo["seed"] = *seed;
  echo["maxModule"] = config.maxModuleSize;
  if (config.ringFilter) echo["ring"] = *config.ringFilter;

  if (!mine.empty()) {
    if (mine != "q215")
      throw ParseError("unknown mining mode: " + mine);
    auto report = mineSubmoduleHeredity(config, *seed);
    json result;
    result["modulesScanned"] = report.modulesScanned;
    result["submodulesScanned"] = report.submodulesScanned;
    result["counterexampleFound"] = report.counterexample.has_value();
    if (report.counterexample)
      result["counterexample"] = json::parse(*report.counterexample);
    emitReport(args, "laws", echo, result,
               std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             start)
                   .count());
    return report.counterexample ? kLawFailure : kOk;
  }

  std::vector<LawReport> reports;
  if (all) {
    reports = runAll(config, *seed);
  } else {
    if (lawFlag.empty()) throw ParseError("laws run needs --all or --law <id>");
    reports.push_back(
        runLaw(lawFromName(lawFlag), config, deriveSeed(*seed, lawFlag)));
  }
  bool allPassed = true;
  json result = json::array();
  for (const auto& r : reports) {
    if (!r.ok()) allPassed = false;
    result.push_back(lawReportJson(r));
    std::cerr << lawName(r.law) << ": "
              << (r.ok() ? "ok" : (r.error ? "error" : "counterexample"))
              << " (" << r.passed << "/" << r.instancesGenerated
              << " instances, " << r.elapsedSeconds << "s)\n";
  }
  emitReport(args, "laws", echo, result,
             std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                           start)
                 .count());
  return allPassed ? kOk : kLawFailure;
}

int runWitness(const CommonArgs& args, long p, std::int64_t samples,
               std::optional<std::uint64_t> seed) {
  if (!seed) throw ParseError("witness zx requires --seed");
  const auto start = std::chrono::steady_clock::now();
  if (!isPrimeInt64(p)) throw UnsupportedRing("--p must be prime");
  json echo;
  echo["p"] = p;
  echo["samples"] = samples;
  echo["seed"] = *seed;

  json result;
  auto witness = notPrimeWitness(p);
  result["notPrime"] = witness.verified() ? "verified" : "FAILED";
  auto obstruction = radicalObstruction(p);
  result["radicalObstruction"] = obstruction.verified() ? "verified" : "FAILED";
  auto falsify = classicalPrimeFalsify(p, samples, 4, 9, *seed);
  if (falsify.counterexampleFound) {
    json ce;
    ce["r"] = *falsify.r;
    ce["s"] = *falsify.s;
    ce["v"] = *falsify.v;
    result["falsifier"] = ce;
  } else {
    result["falsifier"] = "NoCounterexample";
  }
  result["samplesChecked"] = falsify.samplesChecked;
  emitReport(args, "witness", echo, result,
             std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                           start)
                 .count());
  bool ok = witness.verified() && obstruction.verified() &&
            !falsify.counterexampleFound;
  return ok ? kOk : kLawFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact classical-prime / classical-Hilbert workbench"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string lawFlag, mineFlag;
  bool allLaws = false;
  std::optional<std::uint64_t> seed;
  std::int64_t lawSamples = 0;
  std::int64_t witnessSamples = 100000;
  long witnessP = 2;

  auto addCommon = [&](CLI::App* cmd, bool withRing, bool withDomain) {
    if (withRing) cmd->add_option("--ring", args.ring, "finite ring spec");
    if (withDomain)
      cmd->add_option("--domain", args.domain, "euclidean domain spec");
    cmd->add_option("--module", args.moduleJson, "module spec JSON");
    cmd->add_option("--submodule", args.submoduleJson, "submodule spec JSON");
    cmd->add_option("--max-module", args.maxModule, "module size bound");
    cmd->add_option("--max-lattice", args.maxLattice, "lattice size bound");
    cmd->add_option("--out", args.outPath, "output path (atomic write)");
    cmd->add_option("--format", args.format, "json|dot");
  };

  auto* classify = app.add_subcommand("classify", "classify one submodule");
  addCommon(classify, true, true);

  auto* lattice = app.add_subcommand("lattice", "enumerate a submodule lattice");
  addCommon(lattice, true, false);

  auto* clh = app.add_subcommand("cl-hilbert", "classical Hilbert verdict");
  addCommon(clh, true, true);

  auto* laws = app.add_subcommand("laws", "property-suite runner");
  auto* lawsRun = laws->add_subcommand("run", "run laws");
  addCommon(lawsRun, true, false);
  lawsRun->add_flag("--all", allLaws, "run the whole registry");
  lawsRun->add_option("--law", lawFlag, "single law id (e.g. L2.5)");
  lawsRun->add_option("--seed", seed, "root seed (required)");
  lawsRun->add_option("--samples", lawSamples, "sample count for sampled laws");
  lawsRun->add_option("--mine", mineFlag, "counterexample mining mode (q215)");

  auto* witness = app.add_subcommand("witness", "worked-example witnesses");
  auto* witnessZx = witness->add_subcommand("zx", "Z[x] + Z[x] witness suite");
  witnessZx->add_option("--p", witnessP, "prime for the ideal (p, x)");
  witnessZx->add_option("--samples", witnessSamples, "falsifier sample count");
  witnessZx->add_option("--seed", seed, "falsifier seed (required)");
  witnessZx->add_option("--out", args.outPath, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kParseError;
  }

  try {
    if (classify->parsed()) return runClassify(args);
    if (lattice->parsed()) return runLattice(args);
    if (clh->parsed()) return runClHilbert(args);
    if (laws->parsed()) {
      if (!lawsRun->parsed()) throw ParseError("usage: laws run ...");
      return runLaws(args, lawFlag, allLaws, seed, lawSamples, mineFlag);
    }
    if (witness->parsed()) {
      if (!witnessZx->parsed()) throw ParseError("usage: witness zx ...");
      return runWitness(args, witnessP, witnessSamples, seed);
    }
    throw ParseError("no subcommand given");
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const UnknownLaw& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const UnsupportedRing& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kUnsupported;
  } catch (const InvalidSpec& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kUnsupported;
  } catch (const BoundExceeded& e) {
    std::cerr << "bound exceeded: " << e.what() << "\n";
    return kBounds;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
