#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include "modlattice/rings.hpp"

namespace modlattice {

// Finite module over a finite ring, presented as R^k modulo the row span of
// a relation matrix. Elements are indices 0 .. size-1 into the sorted list
// of canonical coset representatives (the lexicographically least vector of
// each coset), so index order is the canonical element order and index 0 is
// the zero element.
class FiniteModule {
 public:
  const RingPtr& ring() const { return ring_; }
  int rank() const { return rank_; }
  const std::vector<std::vector<std::int64_t>>& relations() const {
    return relations_;
  }
  std::int64_t size() const { return static_cast<std::int64_t>(reps_.size()); }
  bool isZero() const { return size() == 1; }

  std::vector<std::int64_t> repVector(std::int32_t index) const;
  std::int32_t canonicalIndex(const std::vector<std::int64_t>& vec) const;

  std::int32_t add(std::int32_t a, std::int32_t b) const;
  std::int32_t neg(std::int32_t a) const;
  std::int32_t sub(std::int32_t a, std::int32_t b) const {
    return add(a, neg(b));
  }
  std::int32_t scalar(std::int64_t r, std::int32_t m) const;
  std::int32_t zeroIndex() const { return 0; }

  // Images of the free basis vectors; they generate the module.
  const std::vector<std::int32_t>& generatorImages() const { return gens_; }

  struct LatticeEntry {
    std::vector<std::int32_t> generators;
    std::vector<std::int32_t> elements;
  };
  // Memoized raw submodule lattice, sorted by (size, elements).
  const std::vector<LatticeEntry>& latticeData(const Bounds& bounds) const;

 private:
  friend std::shared_ptr<const FiniteModule> makeModule(
      const RingPtr&, int, const std::vector<std::vector<std::int64_t>>&,
      const Bounds&);
  FiniteModule() = default;

  std::uint64_t pack(const std::vector<std::int64_t>& vec) const;
  std::vector<std::int64_t> unpack(std::uint64_t code) const;

  RingPtr ring_;
  int rank_ = 0;
  std::vector<std::vector<std::int64_t>> relations_;
  std::vector<std::uint64_t> reps_;     // packed canonical reps, increasing
  std::vector<std::int32_t> cosetOf_;   // packed vector code -> element index
  std::vector<std::int32_t> gens_;

  mutable std::once_flag latticeOnce_;
  mutable std::vector<LatticeEntry> latticeCache_;
};

using ModulePtr = std::shared_ptr<const FiniteModule>;

ModulePtr makeModule(const RingPtr& ring, int rank,
                     const std::vector<std::vector<std::int64_t>>& relations,
                     const Bounds& bounds = defaultBounds());

struct SubmoduleF {
  ModulePtr parent;
  std::vector<std::int32_t> generators;
  std::vector<std::int32_t> elements;  // sorted element indices
  std::vector<char> mask;              // size |M|

  std::int64_t size() const { return static_cast<std::int64_t>(elements.size()); }
  bool contains(std::int32_t idx) const { return mask[idx] != 0; }
  bool isProper() const { return size() < parent->size(); }
  bool containsAll(const SubmoduleF& other) const;
  bool sameElements(const SubmoduleF& other) const {
    return elements == other.elements;
  }
};

SubmoduleF submoduleGenerated(const ModulePtr& module,
                              std::vector<std::int32_t> gens);
SubmoduleF zeroSubmodule(const ModulePtr& module);
SubmoduleF fullSubmodule(const ModulePtr& module);
SubmoduleF joinSubmodules(const SubmoduleF& a, const SubmoduleF& b);
SubmoduleF intersectSubmodules(const SubmoduleF& a, const SubmoduleF& b);

// Every submodule, sorted by (size, element list). Throws BoundExceeded if
// |M| exceeds the lattice bound or the count exceeds the submodule cap.
std::vector<SubmoduleF> allSubmodules(const ModulePtr& module,
                                      const Bounds& bounds = defaultBounds());

// M/N with transport in both directions: project[m] is the image of m, and
// lift[q] is the canonical representative of the coset q in M.
struct ModuleQuotient {
  ModulePtr module;
  std::vector<std::int32_t> project;
  std::vector<std::int32_t> lift;
};
ModuleQuotient quotientModule(const ModulePtr& module, const SubmoduleF& sub,
                              const Bounds& bounds = defaultBounds());

struct ModuleSum {
  ModulePtr module;
  std::vector<std::int32_t> injectLeft;
  std::vector<std::int32_t> injectRight;
};
ModuleSum directSum(const ModulePtr& left, const ModulePtr& right,
                    const Bounds& bounds = defaultBounds());

// {r in R : r*m = 0}; already an ideal, no closure needed.
IdealF annOfElement(const ModulePtr& module, std::int32_t m);

// (N : M) = {r in R : r*M <= N}.
IdealF colonIdeal(const SubmoduleF& sub, const ModulePtr& module);

// Annihilator ideal of M itself, i.e. (0 : M).
IdealF annihilatorOfModule(const ModulePtr& module);

// View a module over R as a module over R/I when I annihilates it; elements
// correspond one to one. Throws RingMismatch if I does not annihilate M.
struct TransportedModule {
  ModulePtr module;
  std::vector<std::int32_t> map;  // old element index -> new element index
};
TransportedModule transportAcrossQuotient(const ModulePtr& module,
                                          const RingQuotient& quotient,
                                          const Bounds& bounds = defaultBounds());

// Present a submodule as a standalone module over the same ring, using its
// generator list as the new free basis (kernel computed by enumeration).
struct PresentedSubmodule {
  ModulePtr module;
  std::vector<std::int32_t> embed;  // new element index -> parent element index
};
PresentedSubmodule presentSubmoduleAsModule(const ModulePtr& parent,
                                            const SubmoduleF& sub,
                                            const Bounds& bounds = defaultBounds());

}  // namespace modlattice
