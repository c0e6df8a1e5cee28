#pragma once

#include <vector>

#include "modlattice/finmod.hpp"

namespace modlattice {

// Predicates on proper submodules P < M of finite modules. Predicates throw
// NotProper when P = M (which covers the zero module, whose only submodule
// is itself); whole-module classifiers treat the zero module as vacuously
// classical Hilbert.

struct Classification {
  bool proper = false;
  bool maximal = false;
  bool prime = false;
  bool classicalPrime = false;
  bool intersectionOfMaximals = false;
  IdealF colon;
  std::vector<IdealF> annSpectrum;  // deduplicated, sorted by (size, elements)
};

// Annihilator of the coset of m in M/P.
IdealF annModulo(const ModulePtr& module, const SubmoduleF& sub, std::int32_t m);

// {(0 : m̄) : 0 != m̄ in M/P}, deduplicated and sorted.
std::vector<IdealF> annSpectrum(const ModulePtr& module, const SubmoduleF& sub);

// Definitional route: abm in P implies am in P or bm in P, scanned over all
// scalar pairs and module elements.
bool isClassicalPrimeDef(const ModulePtr& module, const SubmoduleF& sub);

// Spectrum route: every coset annihilator is prime and the spectrum is a
// chain under inclusion. Equivalent to the definitional route; the pair is
// kept as a cross-implementation oracle.
bool isClassicalPrimeChain(const ModulePtr& module, const SubmoduleF& sub);

// Prime submodule test. Both available routes (definition, and colon prime
// with singleton spectrum) are evaluated and must agree.
bool isPrimeSub(const ModulePtr& module, const SubmoduleF& sub);

bool isMaximalSub(const ModulePtr& module, const SubmoduleF& sub);

// Intersection of all maximal submodules; M itself when none exist.
// For a finite module Rad(M) = intersection of mM over the maximal ideals m
// with mM != M; the lattice scan stays available as a test oracle.
SubmoduleF radicalOfModule(const ModulePtr& module,
                           const Bounds& bounds = defaultBounds());

// True iff Rad(M/P) = 0, computed on preimages in M.
bool isIntersectionOfMaximals(const ModulePtr& module, const SubmoduleF& sub,
                              const Bounds& bounds = defaultBounds());

std::vector<SubmoduleF> minimalClassicalPrimes(
    const ModulePtr& module, const Bounds& bounds = defaultBounds());

// Every classical prime (resp. prime) submodule is an intersection of
// maximal submodules. The zero module passes vacuously.
bool isClHilbert(const ModulePtr& module, const Bounds& bounds = defaultBounds());
bool isHilbert(const ModulePtr& module, const Bounds& bounds = defaultBounds());

// Computes independently (a) isClHilbert and (b) "every non-maximal
// classical prime equals the intersection of the strictly larger classical
// primes", and reports whether they agree. They always should.
bool clHilbertTwoRoutesAgree(const ModulePtr& module,
                             const Bounds& bounds = defaultBounds());

Classification classifySubmodule(const ModulePtr& module, const SubmoduleF& sub,
                                 const Bounds& bounds = defaultBounds());

}  // namespace modlattice
