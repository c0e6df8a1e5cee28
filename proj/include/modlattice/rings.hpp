#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "modlattice/errors.hpp"
#include "modlattice/gfp.hpp"

namespace modlattice {

// ---------------------------------------------------------------------------
// Finite commutative rings, presented as products of cyclic quotients
// Z/n and GF(p)[x]/(f). Elements are integer codes 0 .. size-1; the code
// order coincides with lexicographic order on the coordinate tuples, so a
// plain integer sort is the canonical element order.
// ---------------------------------------------------------------------------

struct RingComponent {
  enum class Kind { CyclicInt, PolyQuot };
  Kind kind = Kind::CyclicInt;
  std::int64_t n = 0;        // CyclicInt modulus, n >= 2
  long p = 0;                // PolyQuot characteristic (prime)
  gfp::Poly f;               // PolyQuot modulus, deg >= 1, need not be irreducible
  std::int64_t size = 0;     // n, or p^deg(f)

  static RingComponent cyclic(std::int64_t n);
  static RingComponent polyQuot(long p, const std::vector<long>& f);
  bool operator==(const RingComponent&) const = default;
};

class FiniteRing;
using RingPtr = std::shared_ptr<const FiniteRing>;

class FiniteRing {
 public:
  static RingPtr make(std::vector<RingComponent> components);

  std::int64_t size() const { return size_; }
  int componentCount() const { return static_cast<int>(components_.size()); }
  const RingComponent& component(int i) const { return components_[i]; }
  const std::vector<RingComponent>& components() const { return components_; }
  bool sameAs(const FiniteRing& other) const {
    return components_ == other.components_;
  }

  std::int64_t zero() const { return 0; }
  std::int64_t one() const { return one_; }
  std::int64_t add(std::int64_t a, std::int64_t b) const;
  std::int64_t neg(std::int64_t a) const;
  std::int64_t sub(std::int64_t a, std::int64_t b) const {
    return add(a, neg(b));
  }
  std::int64_t mul(std::int64_t a, std::int64_t b) const;
  bool isUnit(std::int64_t a) const;  // exhaustive inverse search
  bool isField() const;               // computed, not declared

  // Mixed-radix split of a code into per-component codes (first component is
  // the most significant digit, keeping code order lexicographic).
  std::vector<std::int64_t> componentCodes(std::int64_t code) const;
  std::int64_t packComponents(const std::vector<std::int64_t>& codes) const;

  // PolyQuot component codes encode the coefficient tuple (c0.. c_{d-1})
  // with c0 as the most significant base-p digit. Fixed length deg(f).
  std::vector<long> polyCoeffsOfCode(int component, std::int64_t code) const;
  std::int64_t codeOfPolyCoeffs(int component,
                                const std::vector<long>& coeffs) const;

  struct IdealData {
    std::vector<std::int64_t> generators;
    std::vector<std::int64_t> elements;  // sorted
  };
  // Every ideal, sorted by (size, element list); memoized. Throws
  // BoundExceeded past the carrier / ideal-count caps.
  const std::vector<IdealData>& idealData(const Bounds& bounds) const;

 private:
  explicit FiniteRing(std::vector<RingComponent> components);

  std::vector<RingComponent> components_;
  std::vector<std::int64_t> radix_;  // radix_[i] = product of sizes after i
  std::int64_t size_ = 1;
  std::int64_t one_ = 0;

  mutable std::once_flag idealOnce_;
  mutable std::vector<IdealData> idealCache_;
};

struct IdealF {
  RingPtr ring;
  std::vector<std::int64_t> generators;
  std::vector<std::int64_t> elements;  // sorted, closed under +, -, R*
  std::int64_t size() const { return static_cast<std::int64_t>(elements.size()); }
  bool contains(std::int64_t code) const;
  bool isProper() const { return size() < ring->size(); }
  bool sameElements(const IdealF& other) const {
    return elements == other.elements;
  }
  bool containsAll(const IdealF& other) const;
};

RingPtr makeFiniteRing(const std::vector<RingComponent>& spec);

IdealF idealGenerated(const RingPtr& ring, std::vector<std::int64_t> gens);
IdealF idealFromElements(const RingPtr& ring, std::vector<std::int64_t> elems);
std::vector<IdealF> allIdeals(const RingPtr& ring,
                              const Bounds& bounds = defaultBounds());

bool isPrimeIdeal(const IdealF& ideal);
bool isMaximalIdeal(const IdealF& ideal);
IdealF nilradical(const RingPtr& ring, const Bounds& bounds = defaultBounds());
IdealF jacobsonRadical(const RingPtr& ring,
                       const Bounds& bounds = defaultBounds());

// Quotient ring together with the element surjection (old code -> new code).
// Quotients of component products are again component products, so the
// result stays in the same representation. Throws NotProper for I = R.
struct RingQuotient {
  RingPtr ring;
  std::vector<std::int64_t> project;
};
RingQuotient quotientRing(const RingPtr& ring, const IdealF& ideal);

// Ring spec grammar: "Z/6", "GF(2)[x]/[1,1,1]" (ascending coefficients),
// products joined with " x ".
RingPtr parseRingSpec(const std::string& spec);
std::string renderRingSpec(const FiniteRing& ring);

// ---------------------------------------------------------------------------
// Euclidean domains: Z, GF(p)[x], and Z localized at a prime p. Elements are
// a variant; the domain object interprets them. All operations are pure.
// ---------------------------------------------------------------------------

using Elem = std::variant<mpz_class, gfp::Poly, mpq_class>;

class EuclideanDomain {
 public:
  enum class Kind { Int, PolyOverGF, IntLocAt };

  static EuclideanDomain integers() { return EuclideanDomain(Kind::Int, 0); }
  static EuclideanDomain polyOverGF(long p);
  static EuclideanDomain intLocalizedAt(long p);

  Kind kind() const { return kind_; }
  long prime() const { return p_; }
  bool operator==(const EuclideanDomain&) const = default;

  Elem zero() const;
  Elem one() const;
  Elem fromInt(std::int64_t v) const;

  bool isZero(const Elem& a) const;
  bool isUnit(const Elem& a) const;
  bool equal(const Elem& a, const Elem& b) const;

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;

  // a = q*b + r with r == 0 or euclideanSize(r) < euclideanSize(b).
  std::pair<Elem, Elem> divMod(const Elem& a, const Elem& b) const;
  Elem gcd(const Elem& a, const Elem& b) const;  // unit-normalized
  Elem normalizeUnit(const Elem& a) const;       // canonical associate
  // The unit u with a == u * normalizeUnit(a), for nonzero a.
  Elem unitPart(const Elem& a) const;
  Elem inverseOfUnit(const Elem& u) const;

  bool divides(const Elem& a, const Elem& b) const;  // a | b
  Elem divExact(const Elem& a, const Elem& b) const; // a / b, exact

  mpz_class euclideanSize(const Elem& a) const;  // nonzero a

  // Exact primality / radical with the configured factorization budget
  // (integer trial division to 1e6, polynomial degree cap 64). Throw
  // RequiresFactorization instead of guessing beyond it.
  bool isPrime(const Elem& a) const;
  Elem radical(const Elem& a) const;  // product of distinct prime divisors
  std::vector<std::pair<Elem, int>> factor(const Elem& a) const;

  std::string renderElem(const Elem& a) const;

 private:
  EuclideanDomain(Kind kind, long p) : kind_(kind), p_(p) {}
  Kind kind_;
  long p_;
};

// p-adic valuation of a nonzero rational with denominator coprime to p.
long valuationAt(long p, const mpq_class& q);

// Domain spec grammar: "Z", "GF(5)[x]", "Zloc(3)".
EuclideanDomain parseDomainSpec(const std::string& spec);
std::string renderDomainSpec(const EuclideanDomain& d);

bool isPrimeInt64(std::int64_t n);

}  // namespace modlattice
