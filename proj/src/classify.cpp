#include "modlattice/classify.hpp"

#include <algorithm>
#include <map>

namespace modlattice {

namespace {

void requireProper(const ModulePtr& module, const SubmoduleF& sub) {
  if (!sub.isProper())
    throw NotProper("submodule predicate requires a proper submodule");
  (void)module;
}

bool idealLess(const IdealF& a, const IdealF& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.elements < b.elements;
}

// P + mM for an ideal m, as a submodule of M.
SubmoduleF idealTimesModulePlus(const ModulePtr& module, const SubmoduleF& sub,
                                const IdealF& ideal) {
  std::vector<std::int32_t> gens = sub.generators;
  for (std::int64_t j : ideal.generators)
    for (std::int32_t g : module->generatorImages())
      gens.push_back(module->scalar(j, g));
  return submoduleGenerated(module, std::move(gens));
}

std::vector<IdealF> maximalIdealsOf(const RingPtr& ring, const Bounds& bounds) {
  std::vector<IdealF> out;
  for (auto& ideal : allIdeals(ring, bounds))
    if (isMaximalIdeal(ideal)) out.push_back(std::move(ideal));
  return out;
}

}  // namespace

IdealF annModulo(const ModulePtr& module, const SubmoduleF& sub,
                 std::int32_t m) {
  std::vector<std::int64_t> elems;
  for (std::int64_t r = 0; r < module->ring()->size(); ++r)
    if (sub.mask[module->scalar(r, m)]) elems.push_back(r);
  return idealFromElements(module->ring(), std::move(elems));
}

std::vector<IdealF> annSpectrum(const ModulePtr& module, const SubmoduleF& sub) {
  std::map<std::vector<std::int64_t>, IdealF> seen;
  for (std::int32_t m = 0; m < module->size(); ++m) {
    if (sub.mask[m]) continue;
    auto ann = annModulo(module, sub, m);
    seen.emplace(ann.elements, std::move(ann));
  }
  std::vector<IdealF> out;
  out.reserve(seen.size());
  for (auto& [elems, ideal] : seen) out.push_back(std::move(ideal));
  std::sort(out.begin(), out.end(), idealLess);
  return out;
}

bool isClassicalPrimeDef(const ModulePtr& module, const SubmoduleF& sub) {
  requireProper(module, sub);
  const FiniteRing& R = *module->ring();
  std::vector<char> inP(module->size());
  for (std::int32_t i = 0; i < module->size(); ++i) inP[i] = sub.mask[i];
  std::vector<std::int32_t> scaled(R.size());
  for (std::int32_t m = 0; m < module->size(); ++m) {
    if (inP[m]) continue;  // abm in P holds trivially once m is inside
    for (std::int64_t r = 0; r < R.size(); ++r) scaled[r] = module->scalar(r, m);
    for (std::int64_t a = 0; a < R.size(); ++a) {
      if (inP[scaled[a]]) continue;
      for (std::int64_t b = a; b < R.size(); ++b) {
        if (inP[scaled[b]]) continue;
        if (inP[scaled[R.mul(a, b)]]) return false;
      }
    }
  }
  return true;
}

bool isClassicalPrimeChain(const ModulePtr& module, const SubmoduleF& sub) {
  requireProper(module, sub);
  auto spectrum = annSpectrum(module, sub);
  for (const auto& ideal : spectrum)
    if (!isPrimeIdeal(ideal)) return false;
  for (size_t i = 0; i + 1 < spectrum.size(); ++i)
    if (!spectrum[i + 1].containsAll(spectrum[i])) return false;
  return true;
}

bool isPrimeSub(const ModulePtr& module, const SubmoduleF& sub) {
  requireProper(module, sub);
  const FiniteRing& R = *module->ring();
  auto colon = colonIdeal(sub, module);

  bool byDefinition = true;
  for (std::int32_t m = 0; m < module->size() && byDefinition; ++m) {
    if (sub.mask[m]) continue;
    for (std::int64_t a = 0; a < R.size(); ++a)
      if (sub.mask[module->scalar(a, m)] && !colon.contains(a)) {
        byDefinition = false;
        break;
      }
  }

  bool bySpectrum =
      isPrimeIdeal(colon) && annSpectrum(module, sub).size() == 1;
  if (byDefinition != bySpectrum)
    throw InternalError("isPrimeSub: definitional and spectrum routes disagree");
  return byDefinition;
}

bool isMaximalSub(const ModulePtr& module, const SubmoduleF& sub) {
  requireProper(module, sub);
  for (std::int32_t m = 0; m < module->size(); ++m) {
    if (sub.mask[m]) continue;
    auto gens = sub.generators;
    gens.push_back(m);
    if (submoduleGenerated(module, gens).size() != module->size()) return false;
  }
  return true;
}

SubmoduleF radicalOfModule(const ModulePtr& module, const Bounds& bounds) {
  auto zero = zeroSubmodule(module);
  bool any = false;
  SubmoduleF acc = fullSubmodule(module);
  for (const auto& mx : maximalIdealsOf(module->ring(), bounds)) {
    auto scaled = idealTimesModulePlus(module, zero, mx);
    if (scaled.size() == module->size()) continue;
    acc = any ? intersectSubmodules(acc, scaled) : scaled;
    any = true;
  }
  if (!any) return fullSubmodule(module);
  return acc;
}

bool isIntersectionOfMaximals(const ModulePtr& module, const SubmoduleF& sub,
                              const Bounds& bounds) {
  requireProper(module, sub);
  // Rad(M/P) = 0 iff the preimages P + mM (over maximal ideals m that keep
  // the quotient proper) intersect to exactly P.
  bool any = false;
  SubmoduleF acc = fullSubmodule(module);
  for (const auto& mx : maximalIdealsOf(module->ring(), bounds)) {
    auto scaled = idealTimesModulePlus(module, sub, mx);
    if (scaled.size() == module->size()) continue;
    acc = any ? intersectSubmodules(acc, scaled) : scaled;
    any = true;
    if (acc.size() == sub.size()) return true;  // can only shrink further to P
  }
  if (!any) return false;
  return acc.sameElements(sub);
}

std::vector<SubmoduleF> minimalClassicalPrimes(const ModulePtr& module,
                                               const Bounds& bounds) {
  std::vector<SubmoduleF> primes;
  for (auto& sub : allSubmodules(module, bounds)) {
    if (!sub.isProper()) continue;
    if (isClassicalPrimeChain(module, sub)) primes.push_back(std::move(sub));
  }
  std::vector<SubmoduleF> minimal;
  for (const auto& p : primes) {
    bool isMin = true;
    for (const auto& q : primes)
      if (q.size() < p.size() && p.containsAll(q)) {
        isMin = false;
        break;
      }
    if (isMin) minimal.push_back(p);
  }
  return minimal;
}

bool isClHilbert(const ModulePtr& module, const Bounds& bounds) {
  if (module->isZero()) return true;
  for (const auto& sub : allSubmodules(module, bounds)) {
    if (!sub.isProper()) continue;
    if (isClassicalPrimeChain(module, sub) &&
        !isIntersectionOfMaximals(module, sub, bounds))
      return false;
  }
  return true;
}

bool isHilbert(const ModulePtr& module, const Bounds& bounds) {
  if (module->isZero()) return true;
  for (const auto& sub : allSubmodules(module, bounds)) {
    if (!sub.isProper()) continue;
    if (isPrimeSub(module, sub) && !isIntersectionOfMaximals(module, sub, bounds))
      return false;
  }
  return true;
}

bool clHilbertTwoRoutesAgree(const ModulePtr& module, const Bounds& bounds) {
  if (module->isZero()) return true;
  const bool viaRadicals = isClHilbert(module, bounds);

  auto lattice = allSubmodules(module, bounds);
  std::vector<const SubmoduleF*> classicalPrimes;
  for (const auto& sub : lattice)
    if (sub.isProper() && isClassicalPrimeChain(module, sub))
      classicalPrimes.push_back(&sub);

  bool viaLarger = true;
  for (const SubmoduleF* p : classicalPrimes) {
    if (isMaximalSub(module, *p)) continue;
    bool any = false;
    SubmoduleF acc = fullSubmodule(module);
    for (const SubmoduleF* q : classicalPrimes) {
      if (q->size() <= p->size() || !q->containsAll(*p)) continue;
      acc = any ? intersectSubmodules(acc, *q) : *q;
      any = true;
    }
    if (!any || !acc.sameElements(*p)) {
      viaLarger = false;
      break;
    }
  }
  return viaRadicals == viaLarger;
}

Classification classifySubmodule(const ModulePtr& module, const SubmoduleF& sub,
                                 const Bounds& bounds) {
  Classification out;
  out.proper = sub.isProper();
  out.colon = colonIdeal(sub, module);
  if (!out.proper) return out;
  out.annSpectrum = annSpectrum(module, sub);
  out.classicalPrime = isClassicalPrimeChain(module, sub);
  out.prime = isPrimeSub(module, sub);
  out.maximal = isMaximalSub(module, sub);
  out.intersectionOfMaximals = isIntersectionOfMaximals(module, sub, bounds);
  return out;
}

}  // namespace modlattice
