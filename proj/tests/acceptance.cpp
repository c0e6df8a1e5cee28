// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exit code = number of failed
// criteria. argv[1] must be the path to the modlattice binary (used for the
// CLI determinism and golden-file checks); argv[2] the golden directory.

#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "modlattice/classify.hpp"
#include "modlattice/euclid.hpp"
#include "modlattice/jsonio.hpp"
#include "modlattice/laws.hpp"
#include "modlattice/rng.hpp"
#include "modlattice/zx_witness.hpp"

using namespace modlattice;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& what) {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << criterion << ": "
            << what << std::endl;
  if (!pass) ++failures;
}

double seconds(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

LawConfig acceptanceConfig() {
  LawConfig config;
  config.maxModuleSize = 256;
  return config;
}

bool lawPasses(LawId id, const LawConfig& config, std::uint64_t seed,
               std::string* detail) {
  auto r = runLaw(id, config, seed);
  std::ostringstream ss;
  ss << lawName(id) << " " << r.passed << "/" << r.instancesGenerated;
  if (r.error) ss << " error: " << *r.error;
  if (r.counterexample) ss << " counterexample: " << *r.counterexample;
  *detail = ss.str();
  return r.ok() && r.instancesGenerated > 0;
}

std::string runCommand(const std::string& command, int* exitCode) {
  std::string output;
  FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
  if (!pipe) {
    *exitCode = -1;
    return output;
  }
  std::array<char, 4096> buffer;
  size_t n;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
    output.append(buffer.data(), n);
  *exitCode = WEXITSTATUS(pclose(pipe));
  return output;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 1. Dual-route classical prime and prime tests on the full corpus.
void criterion1() {
  const auto start = std::chrono::steady_clock::now();
  auto config = acceptanceConfig();
  std::string d1, d2;
  bool pass = lawPasses(LawId::L2_3eq, config, 20240801, &d1) &&
              lawPasses(LawId::L2_4eq, config, 20240802, &d2);
  double elapsed = seconds(start);
  pass = pass && elapsed < 300.0;
  report(1, pass,
         "dual classical-prime and prime routes agree on the corpus (" + d1 +
             "; " + d2 + "; " + std::to_string(elapsed) + "s < 300s)");
}

// 2. Every corpus module is classical Hilbert, exhaustively.
void criterion2() {
  auto config = acceptanceConfig();
  std::string d1, d2, d3;
  bool pass = lawPasses(LawId::L2_18, config, 20240803, &d1) &&
              lawPasses(LawId::L2_17_1, config, 20240804, &d2) &&
              lawPasses(LawId::L2_17_3, config, 20240805, &d3);
  report(2, pass, "every corpus module classical Hilbert (" + d1 + "; " + d2 +
                      "; " + d3 + ")");
}

// 3. The two classical-Hilbert characterizations agree on every module.
void criterion3() {
  auto config = acceptanceConfig();
  std::string detail;
  bool pass = lawPasses(LawId::L2_5, config, 20240806, &detail);
  report(3, pass, "equivalence via strictly larger classical primes (" +
                      detail + ")");
}

// 4. P = pZ + 0 inside Z^2: classical prime but not prime.
void criterion4() {
  const auto Z = EuclideanDomain::integers();
  PresentedModule m{Z, 2, {}};
  bool pass = true;
  for (long p : {2L, 3L, 5L, 7L}) {
    SubmodulePres sub{{Vec{Z.fromInt(p), Z.fromInt(0)}}};
    pass = pass && isClassicalPrimeFG(m, sub) && !isPrimeFG(m, sub);
  }
  report(4, pass, "pZ+0 in Z^2 is classical prime and not prime, p in {2,3,5,7}");
}

// 5. Sampled classical primes over Z, GF(2)[x], GF(5)[x] have zero radical.
void criterion5() {
  const auto start = std::chrono::steady_clock::now();
  auto config = acceptanceConfig();
  config.sampleCount = 500;
  std::string detail;
  bool pass = lawPasses(LawId::L3_6, config, 20240807, &detail);
  double elapsed = seconds(start);
  pass = pass && elapsed < 120.0;
  report(5, pass, "sampled classical primes have zero radical (" + detail +
                      "; " + std::to_string(elapsed) + "s < 120s)");
}

// 6. The localization negative control.
void criterion6() {
  bool pass = true;
  std::ostringstream detail;
  for (long p : {2L, 3L, 5L}) {
    auto loc = EuclideanDomain::intLocalizedAt(p);
    PresentedModule freeLoc{loc, 1, {}};
    auto verdict = isClHilbertFG(freeLoc);
    bool here = verdict.value == Verdict::False && verdict.witness &&
                verdict.witness->generators.empty() &&
                verdict.radicalGenerator &&
                loc.equal(*verdict.radicalGenerator, Elem(mpq_class(p)));
    PresentedModule torsion{loc, 1, {Vec{Elem(mpq_class(p * p))}}};
    here = here && isClHilbertFG(torsion).value == Verdict::True;
    if (!here) detail << " p=" << p << " failed";
    pass = pass && here;
  }
  report(6, pass, "localization free module fails with witness P=0, Rad=(p); "
                  "torsion modules pass" + detail.str());
}

// 7. The worked witness suite over Z[x]+Z[x].
void criterion7() {
  bool pass = true;
  std::ostringstream detail;
  for (long p : {2L, 5L}) {
    auto witness = notPrimeWitness(p);
    auto obstruction = radicalObstruction(p);
    auto falsify = classicalPrimeFalsify(p, 100000, 4, 9, 42);
    bool here = witness.verified() && obstruction.verified() &&
                !falsify.counterexampleFound &&
                falsify.samplesChecked == 100000;
    if (!here) detail << " p=" << p << " failed";
    pass = pass && here;
  }
  auto corrupted = classicalPrimeFalsify(
      2, 1000, 4, 9, 42,
      [](const ZxVec& v, long p) {
        return inPpxSubmodule(v, p) && v.f.degree() <= 0;
      });
  if (!corrupted.counterexampleFound) {
    detail << " mutation fixture missed";
    pass = false;
  }
  report(7, pass,
         "witness suite verified, falsifier clean over 1e5 samples, mutation "
         "fixture caught" + detail.str());
}

// 8. Mixed-shape classical primes are intersections of two primes.
void criterion8() {
  auto config = acceptanceConfig();
  config.sampleCount = 200;
  std::string detail;
  bool pass = lawPasses(LawId::L3_2, config, 20240808, &detail);
  report(8, pass, "mixed-shape classical primes split as an intersection (" +
                      detail + ")");
}

// 9. Smith normal form self-verification across the three domains.
void criterion9() {
  const auto start = std::chrono::steady_clock::now();
  bool pass = true;
  std::string why;
  const int perDomain = 10000;

  auto Z = EuclideanDomain::integers();
  Rng rngZ(101);
  for (int i = 0; i < perDomain && pass; ++i) {
    int rows = 1 + static_cast<int>(rngZ.below(4));
    int cols = 1 + static_cast<int>(rngZ.below(4));
    DMat a(rows, cols, Z.zero());
    for (auto& e : a.a) e = mpz_class(rngZ.inRange(-30, 30));
    auto snf = smithNormalForm(Z, a);
    pass = verifySnf(Z, a, snf, &why);
  }

  auto P5 = EuclideanDomain::polyOverGF(5);
  Rng rngP(102);
  for (int i = 0; i < perDomain && pass; ++i) {
    int rows = 1 + static_cast<int>(rngP.below(3));
    int cols = 1 + static_cast<int>(rngP.below(3));
    DMat a(rows, cols, P5.zero());
    for (auto& e : a.a) {
      gfp::Poly poly;
      int deg = static_cast<int>(rngP.below(4));
      for (int j = 0; j <= deg; ++j)
        poly.push_back(static_cast<long>(rngP.below(5)));
      e = gfp::normalize(poly, 5);
    }
    auto snf = smithNormalForm(P5, a);
    pass = verifySnf(P5, a, snf, &why);
  }

  auto L3 = EuclideanDomain::intLocalizedAt(3);
  Rng rngL(103);
  for (int i = 0; i < perDomain && pass; ++i) {
    int rows = 1 + static_cast<int>(rngL.below(3));
    int cols = 1 + static_cast<int>(rngL.below(3));
    DMat a(rows, cols, L3.zero());
    for (auto& e : a.a) {
      long den = 1 + static_cast<long>(rngL.below(9));
      while (den % 3 == 0) ++den;
      mpq_class q(rngL.inRange(-30, 30), den);
      q.canonicalize();
      e = q;
    }
    auto snf = smithNormalForm(L3, a);
    pass = verifySnf(L3, a, snf, &why);
  }

  double elapsed = seconds(start);
  pass = pass && elapsed < 60.0;
  report(9, pass,
         "1e4 SNF self-verifications per domain (" + std::to_string(elapsed) +
             "s < 60s" + (why.empty() ? "" : "; " + why) + ")");
}

// 10. CLI determinism and golden files.
void criterion10(const std::string& bin, const std::string& golden) {
  bool pass = true;
  std::ostringstream detail;

  int code1 = 0, code2 = 0;
  std::string out1 = "/tmp/modlattice_acceptance_report1.json";
  std::string out2 = "/tmp/modlattice_acceptance_report2.json";
  runCommand(bin + " laws run --all --seed 42 --out " + out1, &code1);
  runCommand(bin + " laws run --all --seed 42 --out " + out2, &code2);
  if (code1 != 0 || code2 != 0) {
    pass = false;
    detail << " laws run exit codes " << code1 << "," << code2;
  } else if (slurp(out1) != slurp(out2) || slurp(out1).empty()) {
    pass = false;
    detail << " law reports differ between runs";
  }

  for (const char* p : {"2", "3", "5", "7"}) {
    int code = 0;
    std::string out = "/tmp/modlattice_acceptance_classify.json";
    runCommand(bin + " classify --domain Z --module "
                     "'{\"rank\":2,\"relations\":[]}' --submodule "
                     "'{\"generators\":[[" + std::string(p) +
                     ",0]]}' --out " + out,
               &code);
    if (code != 0 ||
        slurp(out) != slurp(golden + "/classify_z2_p" + p + ".json")) {
      pass = false;
      detail << " classify golden p=" << p << " mismatch";
    }
  }
  for (const char* p : {"2", "3", "5"}) {
    int code = 0;
    std::string out = "/tmp/modlattice_acceptance_clh.json";
    runCommand(bin + " cl-hilbert --domain 'Zloc(" + std::string(p) +
                   ")' --module '{\"rank\":1,\"relations\":[]}' --out " + out,
               &code);
    if (code != 0 ||
        slurp(out) != slurp(golden + "/clhilbert_zloc" + p + ".json")) {
      pass = false;
      detail << " cl-hilbert golden p=" << p << " mismatch";
    }
  }
  report(10, pass,
         "seeded law suite byte-identical across runs; golden CLI reports "
         "bit-exact" + detail.str());
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <modlattice-binary> <golden-dir>\n";
    return 64;
  }
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10(argv[1], argv[2]);
  std::cout << (failures == 0 ? "ACCEPTANCE: all criteria passed"
                              : "ACCEPTANCE: " + std::to_string(failures) +
                                    " criteria failed")
            << std::endl;
  return failures;
}
