#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace modlattice {

// Integer polynomials, ascending coefficients, normalized (no zero leading
// coefficient). Specialized support for membership in the ideal (p, x) of
// Z[x] and in the submodule P*(p,x) of Z[x] ⊕ Z[x], where P = (p, x).

struct IntPoly {
  std::vector<mpz_class> c;

  static IntPoly zero() { return {}; }
  static IntPoly constant(const mpz_class& v);
  static IntPoly variableX();

  bool isZero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  const mpz_class& constantTerm() const;
  void normalize();

  bool operator==(const IntPoly&) const = default;
};

IntPoly operator+(const IntPoly& a, const IntPoly& b);
IntPoly operator-(const IntPoly& a, const IntPoly& b);
IntPoly operator*(const IntPoly& a, const IntPoly& b);
IntPoly operator*(const mpz_class& s, const IntPoly& a);
IntPoly operator-(const IntPoly& a);
IntPoly mulByX(const IntPoly& a);
std::string renderPoly(const IntPoly& a);

struct ZxVec {
  IntPoly f, g;
  bool operator==(const ZxVec&) const = default;
};

// f in (p, x), decided by the constant-term criterion p | f(0). Validated
// against a brute-force cofactor search in the test suite.
bool inIdealPX(const IntPoly& f, long p);

// v = z*(p, x) for some z in (p, x): p divides every coefficient of f,
// f*x = g*p, and f/p in (p, x). Also validated against brute-force search.
bool inPpxSubmodule(const ZxVec& v, long p);

// r = p, m = (p, x): r*m lies in P(p,x), m does not, and r*(1,0) does not,
// so P(p,x) fails the prime-submodule condition.
struct NotPrimeWitnessRecord {
  long p = 0;
  IntPoly r;
  ZxVec m;
  bool productInside = false;
  bool elementOutside = false;
  bool probeOutside = false;
  bool verified() const { return productInside && elementOutside && probeOutside; }
};
NotPrimeWitnessRecord notPrimeWitness(long p);

// The two arithmetic facts behind the no-intersection-of-maximals argument:
// (p,x) = p*(1,0) + x*(0,1) lands in P*(Z[x] ⊕ Z[x]), yet (p,x) is not in
// P(p,x). The quantification over all maximal submodules is not machine
// checked.
struct RadicalObstructionRecord {
  long p = 0;
  bool sumDecompositionInPM = false;
  bool pairOutsidePpx = false;
  bool verified() const { return sumDecompositionInPM && pairOutsidePpx; }
};
RadicalObstructionRecord radicalObstruction(long p);

// Randomized falsifier for the classical-prime property of P(p,x): samples
// triples (r, s, v) with r*s*v in P(p,x) and checks r*v or s*v stays inside.
// The membership hook exists so tests can corrupt the predicate and confirm
// the harness detects violations.
using ZxMembership = std::function<bool(const ZxVec&, long)>;

struct FalsifyResult {
  bool counterexampleFound = false;
  std::int64_t samplesChecked = 0;
  std::uint64_t seed = 0;
  std::optional<std::string> r, s, v;  // rendered, when found
};

FalsifyResult classicalPrimeFalsify(long p, std::int64_t sampleCount,
                                    int degreeBound, long coeffBound,
                                    std::uint64_t seed,
                                    const ZxMembership& membership = {});

}  // namespace modlattice
