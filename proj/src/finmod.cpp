#include "modlattice/finmod.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>
#include <utility>

namespace modlattice {

namespace {

std::vector<std::int64_t> addVec(const FiniteRing& R,
                                 const std::vector<std::int64_t>& a,
                                 const std::vector<std::int64_t>& b) {
  std::vector<std::int64_t> out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = R.add(a[i], b[i]);
  return out;
}

std::vector<std::int64_t> scalarVec(const FiniteRing& R, std::int64_t r,
                                    const std::vector<std::int64_t>& a) {
  std::vector<std::int64_t> out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = R.mul(r, a[i]);
  return out;
}

}  // namespace

std::uint64_t FiniteModule::pack(const std::vector<std::int64_t>& vec) const {
  std::uint64_t code = 0;
  const std::uint64_t radix = static_cast<std::uint64_t>(ring_->size());
  for (int i = 0; i < rank_; ++i)
    code = code * radix + static_cast<std::uint64_t>(vec[i]);
  return code;
}

std::vector<std::int64_t> FiniteModule::unpack(std::uint64_t code) const {
  std::vector<std::int64_t> vec(rank_);
  const std::uint64_t radix = static_cast<std::uint64_t>(ring_->size());
  for (int i = rank_ - 1; i >= 0; --i) {
    vec[i] = static_cast<std::int64_t>(code % radix);
    code /= radix;
  }
  return vec;
}

std::vector<std::int64_t> FiniteModule::repVector(std::int32_t index) const {
  return unpack(reps_[index]);
}

std::int32_t FiniteModule::canonicalIndex(
    const std::vector<std::int64_t>& vec) const {
  return cosetOf_[pack(vec)];
}

std::int32_t FiniteModule::add(std::int32_t a, std::int32_t b) const {
  return cosetOf_[pack(addVec(*ring_, unpack(reps_[a]), unpack(reps_[b])))];
}

std::int32_t FiniteModule::neg(std::int32_t a) const {
  auto v = unpack(reps_[a]);
  for (auto& c : v) c = ring_->neg(c);
  return cosetOf_[pack(v)];
}

std::int32_t FiniteModule::scalar(std::int64_t r, std::int32_t m) const {
  return cosetOf_[pack(scalarVec(*ring_, r, unpack(reps_[m])))];
}

ModulePtr makeModule(const RingPtr& ring, int rank,
                     const std::vector<std::vector<std::int64_t>>& relations,
                     const Bounds& bounds) {
  if (rank < 1) throw InvalidSpec("module rank must be >= 1");
  std::uint64_t cells = 1;
  for (int i = 0; i < rank; ++i) {
    if (cells > static_cast<std::uint64_t>(bounds.maxCells) /
                    static_cast<std::uint64_t>(ring->size()))
      throw BoundExceeded("module enumeration: |R|^rank exceeds cell bound");
    cells *= static_cast<std::uint64_t>(ring->size());
  }
  if (cells > static_cast<std::uint64_t>(bounds.maxCells))
    throw BoundExceeded("module enumeration: |R|^rank exceeds cell bound");

  for (const auto& row : relations) {
    if (static_cast<int>(row.size()) != rank)
      throw InvalidSpec("relation row width does not match rank");
    for (std::int64_t e : row)
      if (e < 0 || e >= ring->size())
        throw InvalidSpec("relation entry out of range");
  }

  auto module = std::shared_ptr<FiniteModule>(new FiniteModule());
  module->ring_ = ring;
  module->rank_ = rank;
  module->relations_ = relations;

  // Relation submodule: scalar multiples of the rows, closed additively.
  std::vector<std::vector<std::int64_t>> seeds;
  {
    std::unordered_set<std::uint64_t> seen;
    for (const auto& row : relations)
      for (std::int64_t r = 0; r < ring->size(); ++r) {
        auto v = scalarVec(*ring, r, row);
        if (seen.insert(module->pack(v)).second) seeds.push_back(std::move(v));
      }
  }
  std::vector<std::vector<std::int64_t>> closure;
  {
    std::unordered_set<std::uint64_t> seen;
    std::vector<std::int64_t> zero(rank, 0);
    seen.insert(module->pack(zero));
    closure.push_back(zero);
    std::vector<std::vector<std::int64_t>> queue{zero};
    while (!queue.empty()) {
      auto x = std::move(queue.back());
      queue.pop_back();
      for (const auto& s : seeds) {
        auto y = addVec(*ring, x, s);
        if (seen.insert(module->pack(y)).second) {
          closure.push_back(y);
          queue.push_back(y);
        }
      }
    }
  }

  // Sweep the carrier in increasing packed order: the first unlabeled
  // vector of a coset is its lexicographically least representative.
  module->cosetOf_.assign(cells, -1);
  for (std::uint64_t w = 0; w < cells; ++w) {
    if (module->cosetOf_[w] >= 0) continue;
    auto idx = static_cast<std::int32_t>(module->reps_.size());
    if (static_cast<std::int64_t>(module->reps_.size()) >= bounds.maxModule)
      throw BoundExceeded("module enumeration: |M| exceeds module bound");
    module->reps_.push_back(w);
    auto base = module->unpack(w);
    for (const auto& n : closure)
      module->cosetOf_[module->pack(addVec(*ring, base, n))] = idx;
  }

  for (int i = 0; i < rank; ++i) {
    std::vector<std::int64_t> e(rank, 0);
    e[i] = ring->one();
    module->gens_.push_back(module->canonicalIndex(e));
  }
  return module;
}

bool SubmoduleF::containsAll(const SubmoduleF& other) const {
  for (std::int32_t e : other.elements)
    if (!mask[e]) return false;
  return true;
}

namespace {

SubmoduleF fromMask(const ModulePtr& module, std::vector<char> mask,
                    std::vector<std::int32_t> gens) {
  SubmoduleF sub;
  sub.parent = module;
  sub.generators = std::move(gens);
  sub.mask = std::move(mask);
  for (std::int32_t i = 0; i < module->size(); ++i)
    if (sub.mask[i]) sub.elements.push_back(i);
  return sub;
}

std::vector<char> closureMask(const ModulePtr& module,
                              const std::vector<std::int32_t>& gens) {
  const FiniteRing& R = *module->ring();
  std::vector<char> mask(module->size(), 0);
  std::vector<std::int32_t> seeds;
  {
    std::vector<char> seen(module->size(), 0);
    for (std::int32_t g : gens)
      for (std::int64_t r = 0; r < R.size(); ++r) {
        std::int32_t s = module->scalar(r, g);
        if (!seen[s]) {
          seen[s] = 1;
          seeds.push_back(s);
        }
      }
  }
  std::vector<std::int32_t> queue;
  mask[0] = 1;
  queue.push_back(0);
  while (!queue.empty()) {
    std::int32_t x = queue.back();
    queue.pop_back();
    for (std::int32_t s : seeds) {
      std::int32_t y = module->add(x, s);
      if (!mask[y]) {
        mask[y] = 1;
        queue.push_back(y);
      }
    }
  }
  return mask;
}

std::vector<std::int32_t> greedyModuleGens(const ModulePtr& module,
                                           const std::vector<std::int32_t>& elems) {
  std::vector<std::int32_t> gens;
  std::vector<char> mask(module->size(), 0);
  mask[0] = 1;
  size_t covered = 1;
  for (std::int32_t e : elems) {
    if (mask[e]) continue;
    gens.push_back(e);
    mask = closureMask(module, gens);
    covered = static_cast<size_t>(std::count(mask.begin(), mask.end(), 1));
    if (covered == elems.size()) break;
  }
  return gens;
}

}  // namespace

SubmoduleF submoduleGenerated(const ModulePtr& module,
                              std::vector<std::int32_t> gens) {
  auto mask = closureMask(module, gens);
  return fromMask(module, std::move(mask), std::move(gens));
}

SubmoduleF zeroSubmodule(const ModulePtr& module) {
  return submoduleGenerated(module, {});
}

SubmoduleF fullSubmodule(const ModulePtr& module) {
  return submoduleGenerated(module, module->generatorImages());
}

SubmoduleF joinSubmodules(const SubmoduleF& a, const SubmoduleF& b) {
  // The pairwise sum set is already a submodule.
  const ModulePtr& M = a.parent;
  std::vector<char> mask(M->size(), 0);
  for (std::int32_t x : a.elements)
    for (std::int32_t y : b.elements) mask[M->add(x, y)] = 1;
  std::vector<std::int32_t> gens = a.generators;
  for (std::int32_t g : b.generators)
    if (std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);
  return fromMask(M, std::move(mask), std::move(gens));
}

SubmoduleF intersectSubmodules(const SubmoduleF& a, const SubmoduleF& b) {
  const ModulePtr& M = a.parent;
  std::vector<char> mask(M->size(), 0);
  for (std::int32_t x : a.elements)
    if (b.mask[x]) mask[x] = 1;
  std::vector<std::int32_t> elems;
  for (std::int32_t i = 0; i < M->size(); ++i)
    if (mask[i]) elems.push_back(i);
  return fromMask(M, std::move(mask), greedyModuleGens(M, elems));
}

const std::vector<FiniteModule::LatticeEntry>& FiniteModule::latticeData(
    const Bounds& bounds) const {
  if (size() > bounds.maxLattice)
    throw BoundExceeded("lattice enumeration: |M| exceeds lattice bound");
  std::call_once(latticeOnce_, [this, &bounds] {
    // Reach the module through a temporary aliasing pointer so the closure
    // helpers can be reused; the pointer does not own.
    ModulePtr self(std::shared_ptr<const FiniteModule>{}, this);

    // Join-closure over the cyclic submodules: every submodule is a join of
    // cyclics, so joining the frontier with each cyclic reaches the whole
    // lattice without a subset scan.
    std::vector<SubmoduleF> cyclics;
    {
      std::map<std::vector<std::int32_t>, bool> seen;
      for (std::int32_t m = 0; m < size(); ++m) {
        auto sub = submoduleGenerated(self, {m});
        if (seen.emplace(sub.elements, true).second)
          cyclics.push_back(std::move(sub));
      }
    }
    std::map<std::vector<std::int32_t>, SubmoduleF> found;
    std::vector<const SubmoduleF*> queue;
    {
      auto zero = zeroSubmodule(self);
      auto [it, fresh] = found.emplace(zero.elements, zero);
      queue.push_back(&it->second);
    }
    for (const auto& c : cyclics) {
      auto [it, fresh] = found.emplace(c.elements, c);
      if (fresh) queue.push_back(&it->second);
    }
    while (!queue.empty()) {
      const SubmoduleF* current = queue.back();
      queue.pop_back();
      for (const auto& c : cyclics) {
        if (current->containsAll(c)) continue;
        auto joined = joinSubmodules(*current, c);
        auto [it, fresh] = found.emplace(joined.elements, std::move(joined));
        if (fresh) {
          if (static_cast<std::int64_t>(found.size()) > bounds.maxSubmoduleCount)
            throw BoundExceeded(
                "lattice enumeration: submodule count exceeds bound");
          queue.push_back(&it->second);
        }
      }
    }
    std::vector<LatticeEntry> entries;
    entries.reserve(found.size());
    for (auto& [elems, sub] : found)
      entries.push_back({std::move(sub.generators), std::move(sub.elements)});
    std::sort(entries.begin(), entries.end(),
              [](const LatticeEntry& a, const LatticeEntry& b) {
                if (a.elements.size() != b.elements.size())
                  return a.elements.size() < b.elements.size();
                return a.elements < b.elements;
              });
    latticeCache_ = std::move(entries);
  });
  return latticeCache_;
}

std::vector<SubmoduleF> allSubmodules(const ModulePtr& module,
                                      const Bounds& bounds) {
  const auto& raw = module->latticeData(bounds);
  std::vector<SubmoduleF> out;
  out.reserve(raw.size());
  for (const auto& entry : raw) {
    SubmoduleF sub;
    sub.parent = module;
    sub.generators = entry.generators;
    sub.elements = entry.elements;
    sub.mask.assign(module->size(), 0);
    for (std::int32_t e : sub.elements) sub.mask[e] = 1;
    out.push_back(std::move(sub));
  }
  return out;
}

ModuleQuotient quotientModule(const ModulePtr& module, const SubmoduleF& sub,
                              const Bounds& bounds) {
  auto relations = module->relations();
  const auto& rows = sub.generators.empty() && sub.size() > 1
                         ? sub.elements
                         : sub.generators;
  for (std::int32_t g : rows) relations.push_back(module->repVector(g));
  ModuleQuotient out;
  out.module = makeModule(module->ring(), module->rank(), relations, bounds);
  out.project.resize(module->size());
  for (std::int32_t i = 0; i < module->size(); ++i)
    out.project[i] = out.module->canonicalIndex(module->repVector(i));
  out.lift.resize(out.module->size());
  for (std::int32_t q = 0; q < out.module->size(); ++q)
    out.lift[q] = module->canonicalIndex(out.module->repVector(q));
  if (module->size() != out.module->size() * sub.size())
    throw InternalError("quotientModule: size mismatch");
  return out;
}

ModuleSum directSum(const ModulePtr& left, const ModulePtr& right,
                    const Bounds& bounds) {
  if (!left->ring()->sameAs(*right->ring()))
    throw RingMismatch("directSum: modules over different rings");
  const int k1 = left->rank(), k2 = right->rank();
  std::vector<std::vector<std::int64_t>> relations;
  for (const auto& row : left->relations()) {
    auto r = row;
    r.resize(k1 + k2, 0);
    relations.push_back(std::move(r));
  }
  for (const auto& row : right->relations()) {
    std::vector<std::int64_t> r(k1, 0);
    r.insert(r.end(), row.begin(), row.end());
    relations.push_back(std::move(r));
  }
  ModuleSum out;
  out.module = makeModule(left->ring(), k1 + k2, relations, bounds);
  out.injectLeft.resize(left->size());
  for (std::int32_t i = 0; i < left->size(); ++i) {
    auto v = left->repVector(i);
    v.resize(k1 + k2, 0);
    out.injectLeft[i] = out.module->canonicalIndex(v);
  }
  out.injectRight.resize(right->size());
  for (std::int32_t i = 0; i < right->size(); ++i) {
    std::vector<std::int64_t> v(k1, 0);
    auto w = right->repVector(i);
    v.insert(v.end(), w.begin(), w.end());
    out.injectRight[i] = out.module->canonicalIndex(v);
  }
  if (out.module->size() != left->size() * right->size())
    throw InternalError("directSum: size mismatch");
  return out;
}

IdealF annOfElement(const ModulePtr& module, std::int32_t m) {
  std::vector<std::int64_t> elems;
  for (std::int64_t r = 0; r < module->ring()->size(); ++r)
    if (module->scalar(r, m) == 0) elems.push_back(r);
  return idealFromElements(module->ring(), std::move(elems));
}

IdealF colonIdeal(const SubmoduleF& sub, const ModulePtr& module) {
  std::vector<std::int64_t> elems;
  const auto& gens = module->generatorImages();
  for (std::int64_t r = 0; r < module->ring()->size(); ++r) {
    bool maps = true;
    for (std::int32_t g : gens)
      if (!sub.mask[module->scalar(r, g)]) {
        maps = false;
        break;
      }
    if (maps) elems.push_back(r);
  }
  return idealFromElements(module->ring(), std::move(elems));
}

IdealF annihilatorOfModule(const ModulePtr& module) {
  return colonIdeal(zeroSubmodule(module), module);
}

TransportedModule transportAcrossQuotient(const ModulePtr& module,
                                          const RingQuotient& quotient,
                                          const Bounds& bounds) {
  const FiniteRing& R = *module->ring();
  for (std::int64_t e = 0; e < R.size(); ++e) {
    if (quotient.project[e] != 0) continue;
    for (std::int32_t g : module->generatorImages())
      if (module->scalar(e, g) != 0)
        throw RingMismatch("transport: ideal does not annihilate the module");
  }
  std::vector<std::vector<std::int64_t>> relations;
  for (const auto& row : module->relations()) {
    std::vector<std::int64_t> mapped(row.size());
    for (size_t i = 0; i < row.size(); ++i) mapped[i] = quotient.project[row[i]];
    relations.push_back(std::move(mapped));
  }
  TransportedModule out;
  out.module = makeModule(quotient.ring, module->rank(), relations, bounds);
  if (out.module->size() != module->size())
    throw InternalError("transport: size changed");
  out.map.resize(module->size());
  for (std::int32_t i = 0; i < module->size(); ++i) {
    auto v = module->repVector(i);
    for (auto& c : v) c = quotient.project[c];
    out.map[i] = out.module->canonicalIndex(v);
  }
  return out;
}

PresentedSubmodule presentSubmoduleAsModule(const ModulePtr& parent,
                                            const SubmoduleF& sub,
                                            const Bounds& bounds) {
  auto gens = greedyModuleGens(parent, sub.elements);
  if (gens.empty()) gens.push_back(0);
  const int t = static_cast<int>(gens.size());
  // The free cover is internal scratch; only the cell ceiling applies.
  Bounds coverBounds = bounds;
  coverBounds.maxModule = coverBounds.maxCells;
  auto free = makeModule(parent->ring(), t, {}, coverBounds);
  // Kernel of R^t -> sub, (r_1..r_t) -> sum r_i * g_i.
  std::vector<std::int32_t> kernelElems;
  for (std::int32_t i = 0; i < free->size(); ++i) {
    auto coeffs = free->repVector(i);
    std::int32_t image = 0;
    for (int j = 0; j < t; ++j)
      image = parent->add(image, parent->scalar(coeffs[j], gens[j]));
    if (image == 0) kernelElems.push_back(i);
  }
  auto kernelGens = greedyModuleGens(free, kernelElems);
  std::vector<std::vector<std::int64_t>> relations;
  for (std::int32_t g : kernelGens) relations.push_back(free->repVector(g));
  PresentedSubmodule out;
  out.module = makeModule(parent->ring(), t, relations, bounds);
  if (out.module->size() != sub.size())
    throw InternalError("presentSubmoduleAsModule: size mismatch");
  out.embed.resize(out.module->size());
  for (std::int32_t i = 0; i < out.module->size(); ++i) {
    auto coeffs = out.module->repVector(i);
    std::int32_t image = 0;
    for (int j = 0; j < t; ++j)
      image = parent->add(image, parent->scalar(coeffs[j], gens[j]));
    out.embed[i] = image;
  }
  return out;
}

}  // namespace modlattice
