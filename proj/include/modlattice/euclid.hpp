#pragma once

#include <optional>
#include <string>
#include <vector>

#include "modlattice/rings.hpp"

namespace modlattice {

using Vec = std::vector<Elem>;

struct DMat {
  int rows = 0;
  int cols = 0;
  std::vector<Elem> a;

  DMat() = default;
  DMat(int r, int c, const Elem& fill) : rows(r), cols(c), a(r * c, fill) {}
  Elem& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Elem& at(int i, int j) const {
    return a[static_cast<size_t>(i) * cols + j];
  }
  Vec row(int i) const {
    return Vec(a.begin() + static_cast<size_t>(i) * cols,
               a.begin() + static_cast<size_t>(i + 1) * cols);
  }
};

DMat identityMat(const EuclideanDomain& d, int n);
DMat matFromRows(const std::vector<Vec>& rows, int width, const EuclideanDomain& d);
DMat matMul(const EuclideanDomain& d, const DMat& x, const DMat& y);
bool matEqual(const EuclideanDomain& d, const DMat& x, const DMat& y);
Elem determinant(const EuclideanDomain& d, const DMat& m);  // Bareiss

// U*A*V = D with U, V unimodular, D diagonal, unit-normalized entries in a
// divisibility chain. vinv tracks V^{-1} for pulling coordinate subspaces
// back to the original basis.
struct SnfResult {
  DMat u, d, v, vinv;
  std::vector<Elem> diag;  // nonzero diagonal entries, chain order
};
SnfResult smithNormalForm(const EuclideanDomain& d, const DMat& input);

// Full postcondition check: recomputes U*A*V, unimodularity via Bareiss
// determinants, chain divisibility, and V*Vinv = I.
bool verifySnf(const EuclideanDomain& d, const DMat& input, const SnfResult& snf,
               std::string* why = nullptr);

// Row echelon form by unimodular row operations; pivot columns strictly
// increase. u * input = h.
struct EchelonResult {
  DMat h, u;
  std::vector<std::pair<int, int>> pivots;  // (row, col)
};
EchelonResult rowEchelon(const EuclideanDomain& d, const DMat& input);

// v in the row span of gens?
bool hermiteMembership(const EuclideanDomain& d, const std::vector<Vec>& gens,
                       const Vec& v);

// Rows spanning {w : w * input = 0}.
std::vector<Vec> leftKernel(const EuclideanDomain& d, const DMat& input);

// Generators of span(gensA) ∩ span(gensB) inside D^width.
std::vector<Vec> intersectSpans(const EuclideanDomain& d,
                                const std::vector<Vec>& gensA,
                                const std::vector<Vec>& gensB, int width);

// ---------------------------------------------------------------------------
// Finitely generated modules D^rank / rowspan(relations). Submodules are
// given as full preimages in D^rank; operations stack the parent relations
// onto the generator rows, so the rows need not repeat them.
// ---------------------------------------------------------------------------

struct PresentedModule {
  EuclideanDomain domain;
  int rank = 1;
  std::vector<Vec> relations;
};

struct SubmodulePres {
  std::vector<Vec> generators;
};

// M/P ≅ D^freeRank ⊕ ⊕ D/(d_i), invariant factors unit-normalized, nonunit,
// nonzero, in divisibility order.
struct QuotientShape {
  int freeRank = 0;
  std::vector<Elem> invariantFactors;
  bool isZeroModule() const { return freeRank == 0 && invariantFactors.empty(); }
};

QuotientShape quotientShape(const PresentedModule& m, const SubmodulePres& p);
QuotientShape shapeOfModule(const PresentedModule& m);

// Shape route to the classical prime / prime tests: the coset annihilators
// form a chain of primes exactly when every invariant factor is one fixed
// prime to the first power, since distinct primes are incomparable and
// {(0),(pi)} is a chain. Prime additionally forbids mixing a free part with
// torsion. Throws NotProper when the quotient is zero.
bool isClassicalPrimeFG(const PresentedModule& m, const SubmodulePres& p);
bool isPrimeFG(const PresentedModule& m, const SubmodulePres& p);

// Rad(M/P) via the shape: Rad(D/(d)) = (rad d)/(d), Rad(D) = J(D), and the
// radical of a finite direct sum is the direct sum of the radicals. J is 0
// for Z and GF(p)[x] and (p) for the localization.
struct RadicalShapeResult {
  bool zero = true;
  std::optional<Elem> generator;  // a generator of some nonzero component
};
RadicalShapeResult radicalShape(const PresentedModule& m, const SubmodulePres& p);

enum class Verdict { True, False, Unsupported };
enum class VerdictTag { TheoremBacked, Derived };

struct ClHilbertVerdict {
  Verdict value = Verdict::Unsupported;
  VerdictTag tag = VerdictTag::Derived;
  std::optional<SubmodulePres> witness;   // failing classical prime, if false
  std::optional<Elem> radicalGenerator;   // nonzero radical generator, if false
};

// Z and GF(p)[x]: always true. The localization at p: true exactly for
// torsion modules; otherwise the preimage of the torsion part is a
// classical prime whose quotient has radical (p).
ClHilbertVerdict isClHilbertFG(const PresentedModule& m);

// Preimage in D^rank of the torsion part of M.
SubmodulePres torsionSubmodule(const PresentedModule& m);

bool isTorsionFreeQuotient(const PresentedModule& m, const SubmodulePres& n);

// IN = N ∩ IM for every ideal I; over a PID it suffices to check the primes
// dividing the exponent of M/N (the zero and unit ideals are trivial).
bool isPureSubmodule(const PresentedModule& m, const SubmodulePres& n);

// span{(a, b)} in D^2 with gcd(a, b) = 1.
SubmodulePres spanOfCoprimePair(const EuclideanDomain& d, const Elem& a,
                                const Elem& b);

}  // namespace modlattice
