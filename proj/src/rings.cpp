#include "modlattice/rings.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <numeric>
#include <sstream>
#include <utility>

namespace modlattice {

Bounds defaultBounds() {
  Bounds b;
  if (const char* env = std::getenv("MODLATTICE_MAX_CELLS")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end && *end == '\0' && v > 0) b.maxCells = v;
  }
  return b;
}

bool isPrimeInt64(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// --------------------------------------------------------------------------
// Components
// --------------------------------------------------------------------------

RingComponent RingComponent::cyclic(std::int64_t n) {
  if (n < 2) throw InvalidSpec("CyclicInt modulus must be >= 2");
  RingComponent c;
  c.kind = Kind::CyclicInt;
  c.n = n;
  c.size = n;
  return c;
}

RingComponent RingComponent::polyQuot(long p, const std::vector<long>& f) {
  if (!isPrimeInt64(p)) throw InvalidSpec("PolyQuot characteristic must be prime");
  gfp::Poly fn = gfp::fromCoeffs(f, p);
  if (gfp::degree(fn) < 1)
    throw InvalidSpec("PolyQuot modulus must have degree >= 1");
  fn = gfp::makeMonic(fn, p);
  RingComponent c;
  c.kind = Kind::PolyQuot;
  c.p = p;
  c.f = std::move(fn);
  c.size = 1;
  for (int i = 0; i < gfp::degree(c.f); ++i) {
    if (c.size > (std::int64_t{1} << 40) / p)
      throw InvalidSpec("PolyQuot component too large");
    c.size *= p;
  }
  return c;
}

// --------------------------------------------------------------------------
// FiniteRing
// --------------------------------------------------------------------------

FiniteRing::FiniteRing(std::vector<RingComponent> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw InvalidSpec("ring needs at least one component");
  size_ = 1;
  for (const auto& c : components_) {
    if (size_ > (std::int64_t{1} << 40) / c.size)
      throw InvalidSpec("ring carrier too large");
    size_ *= c.size;
  }
  radix_.assign(components_.size(), 1);
  for (int i = static_cast<int>(components_.size()) - 2; i >= 0; --i)
    radix_[i] = radix_[i + 1] * components_[i + 1].size;

  std::vector<std::int64_t> ones;
  for (int i = 0; i < componentCount(); ++i) {
    const auto& c = components_[i];
    if (c.kind == RingComponent::Kind::CyclicInt) {
      ones.push_back(1 % c.n);
    } else {
      ones.push_back(codeOfPolyCoeffs(i, {1}));
    }
  }
  one_ = packComponents(ones);
}

RingPtr FiniteRing::make(std::vector<RingComponent> components) {
  return RingPtr(new FiniteRing(std::move(components)));
}

RingPtr makeFiniteRing(const std::vector<RingComponent>& spec) {
  return FiniteRing::make(spec);
}

std::vector<std::int64_t> FiniteRing::componentCodes(std::int64_t code) const {
  std::vector<std::int64_t> out(components_.size());
  for (size_t i = 0; i < components_.size(); ++i) {
    out[i] = code / radix_[i];
    code %= radix_[i];
  }
  return out;
}

std::int64_t FiniteRing::packComponents(
    const std::vector<std::int64_t>& codes) const {
  std::int64_t code = 0;
  for (size_t i = 0; i < components_.size(); ++i) code += codes[i] * radix_[i];
  return code;
}

std::vector<long> FiniteRing::polyCoeffsOfCode(int component,
                                               std::int64_t code) const {
  const auto& c = components_[component];
  const int d = gfp::degree(c.f);
  std::vector<long> coeffs(d, 0);
  // c0 is the most significant base-p digit so that code order is
  // lexicographic on the ascending coefficient tuple.
  for (int i = d - 1; i >= 0; --i) {
    coeffs[i] = static_cast<long>(code % c.p);
    code /= c.p;
  }
  return coeffs;
}

std::int64_t FiniteRing::codeOfPolyCoeffs(int component,
                                          const std::vector<long>& coeffs) const {
  const auto& c = components_[component];
  const int d = gfp::degree(c.f);
  std::int64_t code = 0;
  for (int i = 0; i < d; ++i) {
    long v = i < static_cast<int>(coeffs.size())
                 ? gfp::modReduce(coeffs[i], c.p)
                 : 0;
    code = code * c.p + v;
  }
  return code;
}

std::int64_t FiniteRing::add(std::int64_t a, std::int64_t b) const {
  auto ca = componentCodes(a);
  auto cb = componentCodes(b);
  for (int i = 0; i < componentCount(); ++i) {
    const auto& c = components_[i];
    if (c.kind == RingComponent::Kind::CyclicInt) {
      ca[i] = (ca[i] + cb[i]) % c.n;
    } else {
      auto pa = polyCoeffsOfCode(i, ca[i]);
      auto pb = polyCoeffsOfCode(i, cb[i]);
      for (size_t j = 0; j < pa.size(); ++j)
        pa[j] = gfp::modReduce(pa[j] + pb[j], c.p);
      ca[i] = codeOfPolyCoeffs(i, pa);
    }
  }
  return packComponents(ca);
}

std::int64_t FiniteRing::neg(std::int64_t a) const {
  auto ca = componentCodes(a);
  for (int i = 0; i < componentCount(); ++i) {
    const auto& c = components_[i];
    if (c.kind == RingComponent::Kind::CyclicInt) {
      ca[i] = (c.n - ca[i]) % c.n;
    } else {
      auto pa = polyCoeffsOfCode(i, ca[i]);
      for (auto& v : pa) v = gfp::modReduce(-v, c.p);
      ca[i] = codeOfPolyCoeffs(i, pa);
    }
  }
  return packComponents(ca);
}

std::int64_t FiniteRing::mul(std::int64_t a, std::int64_t b) const {
  auto ca = componentCodes(a);
  auto cb = componentCodes(b);
  for (int i = 0; i < componentCount(); ++i) {
    const auto& c = components_[i];
    if (c.kind == RingComponent::Kind::CyclicInt) {
      ca[i] = (ca[i] * cb[i]) % c.n;
    } else {
      auto pa = gfp::normalize(polyCoeffsOfCode(i, ca[i]), c.p);
      auto pb = gfp::normalize(polyCoeffsOfCode(i, cb[i]), c.p);
      auto prod = gfp::mod(gfp::mul(pa, pb, c.p), c.f, c.p);
      prod.resize(gfp::degree(c.f), 0);
      ca[i] = codeOfPolyCoeffs(i, prod);
    }
  }
  return packComponents(ca);
}

bool FiniteRing::isUnit(std::int64_t a) const {
  for (std::int64_t b = 0; b < size_; ++b)
    if (mul(a, b) == one_) return true;
  return false;
}

bool FiniteRing::isField() const {
  for (std::int64_t a = 1; a < size_; ++a)
    if (!isUnit(a)) return false;
  return true;
}

bool IdealF::contains(std::int64_t code) const {
  return std::binary_search(elements.begin(), elements.end(), code);
}

bool IdealF::containsAll(const IdealF& other) const {
  return std::includes(elements.begin(), elements.end(),
                       other.elements.begin(), other.elements.end());
}

namespace {

// Additive closure of the seed set inside the ring carrier.
std::vector<std::int64_t> closeAdditively(const FiniteRing& ring,
                                          const std::vector<std::int64_t>& seeds) {
  std::vector<char> mask(ring.size(), 0);
  std::vector<std::int64_t> elems;
  std::vector<std::int64_t> queue;
  mask[0] = 1;
  elems.push_back(0);
  queue.push_back(0);
  while (!queue.empty()) {
    std::int64_t x = queue.back();
    queue.pop_back();
    for (std::int64_t s : seeds) {
      std::int64_t y = ring.add(x, s);
      if (!mask[y]) {
        mask[y] = 1;
        elems.push_back(y);
        queue.push_back(y);
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  return elems;
}

std::vector<std::int64_t> idealClosure(const FiniteRing& ring,
                                       const std::vector<std::int64_t>& gens) {
  std::vector<std::int64_t> seeds;
  std::vector<char> seen(ring.size(), 0);
  for (std::int64_t g : gens)
    for (std::int64_t r = 0; r < ring.size(); ++r) {
      std::int64_t s = ring.mul(r, g);
      if (!seen[s]) {
        seen[s] = 1;
        seeds.push_back(s);
      }
    }
  return closeAdditively(ring, seeds);
}

std::vector<std::int64_t> greedyGenerators(const RingPtr& ring,
                                           const std::vector<std::int64_t>& elems) {
  std::vector<std::int64_t> gens;
  std::vector<std::int64_t> closure{0};
  for (std::int64_t e : elems) {
    if (std::binary_search(closure.begin(), closure.end(), e)) continue;
    gens.push_back(e);
    closure = idealClosure(*ring, gens);
    if (closure.size() == elems.size()) break;
  }
  return gens;
}

}  // namespace

IdealF idealGenerated(const RingPtr& ring, std::vector<std::int64_t> gens) {
  IdealF ideal;
  ideal.ring = ring;
  ideal.elements = idealClosure(*ring, gens);
  ideal.generators = std::move(gens);
  return ideal;
}

IdealF idealFromElements(const RingPtr& ring, std::vector<std::int64_t> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  IdealF ideal;
  ideal.ring = ring;
  ideal.generators = greedyGenerators(ring, elems);
  ideal.elements = std::move(elems);
  return ideal;
}

const std::vector<FiniteRing::IdealData>& FiniteRing::idealData(
    const Bounds& bounds) const {
  if (size_ > bounds.maxRingCarrier)
    throw BoundExceeded("ideal enumeration: ring carrier exceeds bound");
  std::call_once(idealOnce_, [this, &bounds] {
    // Principal ideals, then repeated joins I + (a) to the fixpoint. Keyed
    // by element set for dedup; output sorted by (size, elements).
    std::map<std::vector<std::int64_t>, std::vector<std::int64_t>> found;
    std::vector<std::vector<std::int64_t>> principals;
    for (std::int64_t r = 0; r < size_; ++r) {
      auto elems = idealClosure(*this, {r});
      if (found.emplace(elems, std::vector<std::int64_t>{r}).second)
        principals.push_back(elems);
    }
    std::vector<std::vector<std::int64_t>> queue;
    for (auto& [elems, gens] : found) queue.push_back(elems);
    while (!queue.empty()) {
      auto current = queue.back();
      queue.pop_back();
      for (const auto& principal : principals) {
        if (std::includes(current.begin(), current.end(), principal.begin(),
                          principal.end()))
          continue;
        // Sum of two ideals is the pairwise sum set.
        std::vector<char> mask(size_, 0);
        for (std::int64_t x : current)
          for (std::int64_t y : principal) mask[add(x, y)] = 1;
        std::vector<std::int64_t> sum;
        for (std::int64_t v = 0; v < size_; ++v)
          if (mask[v]) sum.push_back(v);
        if (found.emplace(sum, std::vector<std::int64_t>{}).second) {
          if (static_cast<std::int64_t>(found.size()) > bounds.maxIdealCount)
            throw BoundExceeded("ideal enumeration: ideal count exceeds bound");
          queue.push_back(sum);
        }
      }
    }
    std::vector<IdealData> result;
    result.reserve(found.size());
    for (auto& [elems, gens] : found) {
      IdealData data;
      data.elements = elems;
      result.push_back(std::move(data));
    }
    std::sort(result.begin(), result.end(),
              [](const IdealData& a, const IdealData& b) {
                if (a.elements.size() != b.elements.size())
                  return a.elements.size() < b.elements.size();
                return a.elements < b.elements;
              });
    idealCache_ = std::move(result);
  });
  return idealCache_;
}

std::vector<IdealF> allIdeals(const RingPtr& ring, const Bounds& bounds) {
  const auto& data = ring->idealData(bounds);
  std::vector<IdealF> out;
  out.reserve(data.size());
  for (const auto& d : data) {
    IdealF ideal;
    ideal.ring = ring;
    ideal.elements = d.elements;
    ideal.generators = greedyGenerators(ring, d.elements);
    out.push_back(std::move(ideal));
  }
  return out;
}

bool isPrimeIdeal(const IdealF& ideal) {
  const FiniteRing& R = *ideal.ring;
  if (!ideal.isProper()) return false;
  std::vector<char> mask(R.size(), 0);
  for (std::int64_t e : ideal.elements) mask[e] = 1;
  for (std::int64_t a = 0; a < R.size(); ++a) {
    if (mask[a]) continue;
    for (std::int64_t b = a; b < R.size(); ++b) {
      if (mask[b]) continue;
      if (mask[R.mul(a, b)]) return false;
    }
  }
  return true;
}

bool isMaximalIdeal(const IdealF& ideal) {
  const FiniteRing& R = *ideal.ring;
  if (!ideal.isProper()) return false;
  std::vector<char> mask(R.size(), 0);
  for (std::int64_t e : ideal.elements) mask[e] = 1;
  for (std::int64_t a = 0; a < R.size(); ++a) {
    if (mask[a]) continue;
    // I + (a) must be the whole ring.
    auto principal = idealClosure(R, {a});
    std::vector<char> sum(R.size(), 0);
    std::int64_t count = 0;
    for (std::int64_t x : ideal.elements)
      for (std::int64_t y : principal) {
        std::int64_t v = R.add(x, y);
        if (!sum[v]) {
          sum[v] = 1;
          ++count;
        }
      }
    if (count != R.size()) return false;
  }
  return true;
}

namespace {
IdealF intersectIdeals(const RingPtr& ring,
                       const std::vector<const IdealF*>& ideals) {
  std::vector<std::int64_t> elems;
  if (ideals.empty()) {
    for (std::int64_t v = 0; v < ring->size(); ++v) elems.push_back(v);
  } else {
    elems = ideals[0]->elements;
    for (size_t i = 1; i < ideals.size(); ++i) {
      std::vector<std::int64_t> next;
      std::set_intersection(elems.begin(), elems.end(),
                            ideals[i]->elements.begin(),
                            ideals[i]->elements.end(),
                            std::back_inserter(next));
      elems = std::move(next);
    }
  }
  return idealFromElements(ring, std::move(elems));
}
}  // namespace

IdealF nilradical(const RingPtr& ring, const Bounds& bounds) {
  auto ideals = allIdeals(ring, bounds);
  std::vector<const IdealF*> primes;
  for (const auto& ideal : ideals)
    if (isPrimeIdeal(ideal)) primes.push_back(&ideal);
  return intersectIdeals(ring, primes);
}

IdealF jacobsonRadical(const RingPtr& ring, const Bounds& bounds) {
  auto ideals = allIdeals(ring, bounds);
  std::vector<const IdealF*> maximals;
  for (const auto& ideal : ideals)
    if (isMaximalIdeal(ideal)) maximals.push_back(&ideal);
  return intersectIdeals(ring, maximals);
}

RingQuotient quotientRing(const RingPtr& ring, const IdealF& ideal) {
  const FiniteRing& R = *ring;
  if (!ideal.isProper()) throw NotProper("quotientRing: ideal is the whole ring");

  // An ideal of a component product is the product of its component
  // projections, so the quotient is again a component product.
  const int nc = R.componentCount();
  struct CompQuot {
    bool alive = false;
    std::int64_t cyclicMod = 0;  // CyclicInt: new modulus
    gfp::Poly g;                 // PolyQuot: new modulus polynomial
  };
  std::vector<CompQuot> quots(nc);
  std::vector<std::vector<std::int64_t>> proj(nc);
  for (std::int64_t e : ideal.elements) {
    auto codes = R.componentCodes(e);
    for (int i = 0; i < nc; ++i) proj[i].push_back(codes[i]);
  }
  std::vector<RingComponent> newComponents;
  std::vector<int> survivors;
  for (int i = 0; i < nc; ++i) {
    const auto& c = R.component(i);
    if (c.kind == RingComponent::Kind::CyclicInt) {
      std::int64_t d = c.n;
      for (std::int64_t v : proj[i]) d = std::gcd(d, v);
      if (d >= 2) {
        quots[i].alive = true;
        quots[i].cyclicMod = d;
        newComponents.push_back(RingComponent::cyclic(d));
        survivors.push_back(i);
      }
    } else {
      gfp::Poly g = c.f;
      for (std::int64_t v : proj[i]) {
        auto poly = gfp::normalize(R.polyCoeffsOfCode(i, v), c.p);
        g = gfp::gcd(g, poly, c.p);
      }
      if (gfp::degree(g) >= 1) {
        quots[i].alive = true;
        quots[i].g = g;
        newComponents.push_back(RingComponent::polyQuot(
            c.p, std::vector<long>(g.begin(), g.end())));
        survivors.push_back(i);
      }
    }
  }
  if (newComponents.empty())
    throw InternalError("quotientRing: proper ideal projected onto whole ring");

  RingQuotient out;
  out.ring = FiniteRing::make(newComponents);
  out.project.resize(R.size());
  for (std::int64_t e = 0; e < R.size(); ++e) {
    auto codes = R.componentCodes(e);
    std::vector<std::int64_t> mapped;
    for (size_t j = 0; j < survivors.size(); ++j) {
      int i = survivors[j];
      const auto& c = R.component(i);
      if (c.kind == RingComponent::Kind::CyclicInt) {
        mapped.push_back(codes[i] % quots[i].cyclicMod);
      } else {
        auto poly = gfp::normalize(R.polyCoeffsOfCode(i, codes[i]), c.p);
        auto reduced = gfp::mod(poly, quots[i].g, c.p);
        mapped.push_back(out.ring->codeOfPolyCoeffs(static_cast<int>(j), reduced));
      }
    }
    out.project[e] = out.ring->packComponents(mapped);
  }
  return out;
}

// --------------------------------------------------------------------------
// Spec grammar
// --------------------------------------------------------------------------

namespace {

std::string trimmed(const std::string& s) {
  size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<long> parseCoeffList(const std::string& text) {
  // "[c0,c1,...]"
  if (text.size() < 2 || text.front() != '[' || text.back() != ']')
    throw ParseError("expected coefficient list [c0,c1,...] in: " + text);
  std::vector<long> coeffs;
  std::string body = text.substr(1, text.size() - 2);
  if (trimmed(body).empty()) return coeffs;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trimmed(item);
    if (item.empty() || (!std::isdigit(static_cast<unsigned char>(item[0])) &&
                         item[0] != '-'))
      throw ParseError("bad coefficient '" + item + "'");
    coeffs.push_back(std::stol(item));
  }
  return coeffs;
}

RingComponent parseComponent(const std::string& tok) {
  if (tok.rfind("Z/", 0) == 0) {
    std::string numText = trimmed(tok.substr(2));
    if (numText.empty() ||
        numText.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("bad modulus in ring component: " + tok);
    std::int64_t n = std::stoll(numText);
    if (n < 2) throw UnsupportedRing("Z/" + numText + ": modulus must be >= 2");
    return RingComponent::cyclic(n);
  }
  if (tok.rfind("GF(", 0) == 0) {
    size_t close = tok.find(')');
    if (close == std::string::npos)
      throw ParseError("unterminated GF( in: " + tok);
    std::string pText = trimmed(tok.substr(3, close - 3));
    if (pText.empty() ||
        pText.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("bad characteristic in: " + tok);
    long p = std::stol(pText);
    std::string rest = trimmed(tok.substr(close + 1));
    if (rest.rfind("[x]/", 0) != 0)
      throw ParseError("expected [x]/[...] after GF(p) in: " + tok);
    std::vector<long> coeffs = parseCoeffList(trimmed(rest.substr(4)));
    try {
      return RingComponent::polyQuot(p, coeffs);
    } catch (const InvalidSpec& e) {
      throw UnsupportedRing(e.what());
    }
  }
  throw ParseError("unrecognized ring component: " + tok);
}

}  // namespace

RingPtr parseRingSpec(const std::string& spec) {
  // Product components are separated by a lone 'x' token.
  std::vector<std::string> tokens;
  std::string current;
  std::stringstream ss(spec);
  std::string word;
  while (ss >> word) {
    if (word == "x") {
      if (trimmed(current).empty())
        throw ParseError("empty ring component in: " + spec);
      tokens.push_back(trimmed(current));
      current.clear();
    } else {
      if (!current.empty()) current += " ";
      current += word;
    }
  }
  if (!trimmed(current).empty()) tokens.push_back(trimmed(current));
  if (tokens.empty()) throw ParseError("empty ring spec");
  std::vector<RingComponent> components;
  for (const auto& tok : tokens) components.push_back(parseComponent(tok));
  try {
    return FiniteRing::make(components);
  } catch (const InvalidSpec& e) {
    throw UnsupportedRing(e.what());
  }
}

std::string renderRingSpec(const FiniteRing& ring) {
  std::string out;
  for (int i = 0; i < ring.componentCount(); ++i) {
    if (i) out += " x ";
    const auto& c = ring.component(i);
    if (c.kind == RingComponent::Kind::CyclicInt) {
      out += "Z/" + std::to_string(c.n);
    } else {
      out += "GF(" + std::to_string(c.p) + ")[x]/[";
      for (size_t j = 0; j < c.f.size(); ++j) {
        if (j) out += ",";
        out += std::to_string(c.f[j]);
      }
      out += "]";
    }
  }
  return out;
}

// --------------------------------------------------------------------------
// Euclidean domains
// --------------------------------------------------------------------------

EuclideanDomain EuclideanDomain::polyOverGF(long p) {
  if (!isPrimeInt64(p)) throw InvalidSpec("PolyOverGF characteristic must be prime");
  return EuclideanDomain(Kind::PolyOverGF, p);
}

EuclideanDomain EuclideanDomain::intLocalizedAt(long p) {
  if (!isPrimeInt64(p)) throw InvalidSpec("IntLocAt prime must be prime");
  return EuclideanDomain(Kind::IntLocAt, p);
}

long valuationAt(long p, const mpq_class& q) {
  if (q == 0) throw InternalError("valuationAt of zero");
  mpz_class num = q.get_num();
  long v = 0;
  while (mpz_divisible_ui_p(num.get_mpz_t(), static_cast<unsigned long>(p))) {
    num /= p;
    ++v;
  }
  return v;
}

Elem EuclideanDomain::zero() const {
  switch (kind_) {
    case Kind::Int: return mpz_class(0);
    case Kind::PolyOverGF: return gfp::Poly{};
    case Kind::IntLocAt: return mpq_class(0);
  }
  throw InternalError("unreachable");
}

Elem EuclideanDomain::one() const { return fromInt(1); }

Elem EuclideanDomain::fromInt(std::int64_t v) const {
  switch (kind_) {
    case Kind::Int: return mpz_class(static_cast<long>(v));
    case Kind::PolyOverGF: return gfp::constant(static_cast<long>(v), p_);
    case Kind::IntLocAt: return mpq_class(static_cast<long>(v));
  }
  throw InternalError("unreachable");
}

bool EuclideanDomain::isZero(const Elem& a) const {
  switch (kind_) {
    case Kind::Int: return std::get<mpz_class>(a) == 0;
    case Kind::PolyOverGF: return std::get<gfp::Poly>(a).empty();
    case Kind::IntLocAt: return std::get<mpq_class>(a) == 0;
  }
  throw InternalError("unreachable");
}

bool EuclideanDomain::isUnit(const Elem& a) const {
  switch (kind_) {
    case Kind::Int: {
      const auto& z = std::get<mpz_class>(a);
      return z == 1 || z == -1;
    }
    case Kind::PolyOverGF: return gfp::degree(std::get<gfp::Poly>(a)) == 0;
    case Kind::IntLocAt: {
      const auto& q = std::get<mpq_class>(a);
      return q != 0 && valuationAt(p_, q) == 0;
    }
  }
  throw InternalError("unreachable");
}

bool EuclideanDomain::equal(const Elem& a, const Elem& b) const {
  switch (kind_) {
    case Kind::Int: return std::get<mpz_class>(a) == std::get<mpz_class>(b);
    case Kind::PolyOverGF:
      return std::get<gfp::Poly>(a) == std::get<gfp::Poly>(b);
    case Kind::IntLocAt: return std::get<mpq_class>(a) == std::get<mpq_class>(b);
  }
  throw InternalError("unreachable");
}

Elem EuclideanDomain::add(const Elem& a, const Elem& b) const {
  switch (kind_) {
    case Kind::Int:
      return mpz_class(std::get<mpz_class>(a) + std::get<mpz_class>(b));
    case Kind::PolyOverGF:
      return gfp::add(std::get<gfp::Poly>(a), std::get<gfp::Poly>(b), p_);
    case Kind::IntLocAt:
      return mpq_class(std::get<mpq_class>(a) + std::get<mpq_class>(b));
  }
  throw InternalError("unreachable");
}

Elem EuclideanDomain::sub(const Elem& a, const Elem& b) const {
  return add(a, neg(b));
}

Elem EuclideanDomain::neg(const Elem& a) const {
  switch (kind_) {
    case Kind::Int: return mpz_class(-std::get<mpz_class>(a));
    case Kind::PolyOverGF: return gfp::neg(std::get<gfp::Poly>(a), p_);
    case Kind::IntLocAt: return mpq_class(-std::get<mpq_class>(a));
  }
  throw InternalError("unreachable");
}

Elem EuclideanDomain::mul(const Elem& a, const Elem& b) const {
  switch (kind_) {
    case Kind::Int:
      return mpz_class(std::get<mpz_class>(a) * std::get<mpz_class>(b));
    case Kind::PolyOverGF:
      return gfp::mul(std::get<gfp::Poly>(a), std::get<gfp::Poly>(b), p_);
    case Kind::IntLocAt:
      return mpq_class(std::get<mpq_class>(a) * std::get<mpq_class>(b));
  }
  throw InternalError("unreachable");
}

std::pair<Elem, Elem> EuclideanDomain::divMod(const Elem& a, const Elem& b) const {
  if (isZero(b)) throw DivisionByZero("divMod by zero");
  switch (kind_) {
    case Kind::Int: {
      mpz_class q, r;
      mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(),
                  std::get<mpz_class>(a).get_mpz_t(),
                  std::get<mpz_class>(b).get_mpz_t());
      return {Elem(q), Elem(r)};
    }
    case Kind::PolyOverGF: {
      auto [q, r] = gfp::divMod(std::get<gfp::Poly>(a), std::get<gfp::Poly>(b), p_);
      return {Elem(q), Elem(r)};
    }
    case Kind::IntLocAt: {
      const auto& qa = std::get<mpq_class>(a);
      const auto& qb = std::get<mpq_class>(b);
      if (qa == 0) return {Elem(mpq_class(0)), Elem(mpq_class(0))};
      if (valuationAt(p_, qa) >= valuationAt(p_, qb)) {
        mpq_class q = qa / qb;
        q.canonicalize();
        return {Elem(q), Elem(mpq_class(0))};
      }
      return {Elem(mpq_class(0)), Elem(qa)};
    }
  }
  throw InternalError("unreachable");
}

Elem EuclideanDomain::normalizeUnit(const Elem& a) const {
  if (isZero(a)) return zero();
  switch (kind_) {
    case Kind::Int: return mpz_class(abs(std::get<mpz_class>(a)));
    case Kind::PolyOverGF: return gfp::makeMonic(std::get<gfp::Poly>(a), p_);
    case Kind::IntLocAt: {
      long v = valuationAt(p_, std::get<mpq_class>(a));
      mpz_class pk;
      mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p_),
                    static_cast<unsigned long>(v));
      return mpq_class(pk);
    }
  }
  throw InternalError("unreachable");
}

Elem EuclideanDomain::unitPart(const Elem& a) const {
  if (isZero(a)) throw InternalError("unitPart of zero");
  return divExact(a, normalizeUnit(a));
}

Elem EuclideanDomain::inverseOfUnit(const Elem& u) const {
  if (!isUnit(u)) throw InternalError("inverseOfUnit: not a unit");
  switch (kind_) {
    case Kind::Int: return u;  // 1 or -1
    case Kind::PolyOverGF: {
      long c = std::get<gfp::Poly>(u)[0];
      return gfp::constant(gfp::invMod(c, p_), p_);
    }
    case Kind::IntLocAt: {
      mpq_class inv = 1 / std::get<mpq_class>(u);
      inv.canonicalize();
      return inv;
    }
  }
  throw InternalError("unreachable");
}

Elem EuclideanDomain::gcd(const Elem& a, const Elem& b) const {
  if (isZero(a)) return normalizeUnit(b);
  if (isZero(b)) return normalizeUnit(a);
  switch (kind_) {
    case Kind::Int: {
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), std::get<mpz_class>(a).get_mpz_t(),
              std::get<mpz_class>(b).get_mpz_t());
      return g;
    }
    case Kind::PolyOverGF:
      return gfp::gcd(std::get<gfp::Poly>(a), std::get<gfp::Poly>(b), p_);
    case Kind::IntLocAt: {
      long va = valuationAt(p_, std::get<mpq_class>(a));
      long vb = valuationAt(p_, std::get<mpq_class>(b));
      long v = std::min(va, vb);
      mpz_class pk;
      mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p_),
                    static_cast<unsigned long>(v));
      return mpq_class(pk);
    }
  }
  throw InternalError("unreachable");
}

bool EuclideanDomain::divides(const Elem& a, const Elem& b) const {
  if (isZero(a)) return isZero(b);
  if (isZero(b)) return true;
  auto [q, r] = divMod(b, a);
  return isZero(r);
}

Elem EuclideanDomain::divExact(const Elem& a, const Elem& b) const {
  auto [q, r] = divMod(a, b);
  if (!isZero(r)) throw InternalError("divExact: division not exact");
  return q;
}

mpz_class EuclideanDomain::euclideanSize(const Elem& a) const {
  if (isZero(a)) throw InternalError("euclideanSize of zero");
  switch (kind_) {
    case Kind::Int: return abs(std::get<mpz_class>(a));
    case Kind::PolyOverGF:
      return mpz_class(gfp::degree(std::get<gfp::Poly>(a)));
    case Kind::IntLocAt:
      return mpz_class(valuationAt(p_, std::get<mpq_class>(a)));
  }
  throw InternalError("unreachable");
}

namespace {
constexpr long kTrialDivisionBound = 1000000;  // integer factor budget
constexpr int kPolyDegreeBound = 64;           // polynomial factor budget
constexpr std::int64_t kPolyTrialEnumBound = 4096;  // monic polys tried per degree
}  // namespace

bool EuclideanDomain::isPrime(const Elem& a) const {
  if (isZero(a) || isUnit(a)) return false;
  switch (kind_) {
    case Kind::Int: {
      mpz_class n = abs(std::get<mpz_class>(a));
      for (long d = 2; d <= kTrialDivisionBound; ++d) {
        if (mpz_class(d) * d > n) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(d)))
          return false;
      }
      throw RequiresFactorization("integer exceeds trial division bound: " +
                                  n.get_str());
    }
    case Kind::PolyOverGF: {
      const auto& f = std::get<gfp::Poly>(a);
      if (gfp::degree(f) > kPolyDegreeBound)
        throw RequiresFactorization("polynomial degree exceeds bound");
      return gfp::isIrreducible(f, p_);
    }
    case Kind::IntLocAt:
      return valuationAt(p_, std::get<mpq_class>(a)) == 1;
  }
  throw InternalError("unreachable");
}

std::vector<std::pair<Elem, int>> EuclideanDomain::factor(const Elem& a) const {
  if (isZero(a)) throw InternalError("factor of zero");
  std::vector<std::pair<Elem, int>> out;
  if (isUnit(a)) return out;
  switch (kind_) {
    case Kind::Int: {
      mpz_class n = abs(std::get<mpz_class>(a));
      for (long d = 2; d <= kTrialDivisionBound && mpz_class(d) * d <= n; ++d) {
        if (!mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(d)))
          continue;
        int e = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(d))) {
          n /= d;
          ++e;
        }
        out.emplace_back(mpz_class(d), e);
      }
      if (n > 1) {
        // No factor <= 1e6; certainly prime only if below the square bound.
        mpz_class certLimit = mpz_class(kTrialDivisionBound) * kTrialDivisionBound;
        if (n > certLimit)
          throw RequiresFactorization("integer cofactor exceeds bound: " +
                                      n.get_str());
        out.emplace_back(n, 1);
      }
      return out;
    }
    case Kind::PolyOverGF: {
      gfp::Poly f = gfp::makeMonic(std::get<gfp::Poly>(a), p_);
      if (gfp::degree(f) > kPolyDegreeBound)
        throw RequiresFactorization("polynomial degree exceeds bound");
      for (int e = 1; 2 * e <= gfp::degree(f); ++e) {
        std::int64_t count = 1;
        for (int i = 0; i < e; ++i) count *= p_;
        if (count > kPolyTrialEnumBound) break;
        // Trial division by all monic polynomials of degree e; smaller
        // factors are gone, so any divisor found here is irreducible.
        for (std::int64_t code = 0; code < count && gfp::degree(f) >= e; ++code) {
          gfp::Poly cand(static_cast<size_t>(e) + 1, 0);
          std::int64_t c = code;
          for (int i = 0; i < e; ++i) {
            cand[i] = static_cast<long>(c % p_);
            c /= p_;
          }
          cand[e] = 1;
          if (!gfp::divMod(f, cand, p_).second.empty()) continue;
          int mult = 0;
          while (true) {
            auto [q, r] = gfp::divMod(f, cand, p_);
            if (!r.empty()) break;
            f = q;
            ++mult;
          }
          out.emplace_back(cand, mult);
        }
      }
      if (gfp::degree(f) >= 1) {
        if (!gfp::isIrreducible(f, p_))
          throw RequiresFactorization("polynomial cofactor exceeds trial bound");
        out.emplace_back(f, 1);
      }
      return out;
    }
    case Kind::IntLocAt: {
      long v = valuationAt(p_, std::get<mpq_class>(a));
      if (v > 0) out.emplace_back(mpq_class(p_), static_cast<int>(v));
      return out;
    }
  }
  throw InternalError("unreachable");
}

Elem EuclideanDomain::radical(const Elem& a) const {
  if (isZero(a)) throw InternalError("radical of zero");
  if (isUnit(a)) return one();
  switch (kind_) {
    case Kind::PolyOverGF: {
      const auto& f = std::get<gfp::Poly>(a);
      if (gfp::degree(f) > kPolyDegreeBound)
        throw RequiresFactorization("polynomial degree exceeds bound");
      return gfp::squarefreePart(f, p_);
    }
    default: {
      Elem r = one();
      for (const auto& [prime, exp] : factor(a)) r = mul(r, prime);
      return normalizeUnit(r);
    }
  }
}

std::string EuclideanDomain::renderElem(const Elem& a) const {
  switch (kind_) {
    case Kind::Int: return std::get<mpz_class>(a).get_str();
    case Kind::PolyOverGF: {
      const auto& f = std::get<gfp::Poly>(a);
      std::string out = "[";
      for (size_t i = 0; i < f.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(f[i]);
      }
      return out + "]";
    }
    case Kind::IntLocAt: {
      const auto& q = std::get<mpq_class>(a);
      if (q.get_den() == 1) return q.get_num().get_str();
      return q.get_num().get_str() + "/" + q.get_den().get_str();
    }
  }
  throw InternalError("unreachable");
}

EuclideanDomain parseDomainSpec(const std::string& raw) {
  std::string spec = trimmed(raw);
  if (spec == "Z") return EuclideanDomain::integers();
  if (spec.rfind("GF(", 0) == 0) {
    size_t close = spec.find(')');
    if (close == std::string::npos || trimmed(spec.substr(close + 1)) != "[x]")
      throw ParseError("expected GF(p)[x], got: " + spec);
    std::string pText = trimmed(spec.substr(3, close - 3));
    if (pText.empty() || pText.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("bad characteristic in: " + spec);
    try {
      return EuclideanDomain::polyOverGF(std::stol(pText));
    } catch (const InvalidSpec& e) {
      throw UnsupportedRing(e.what());
    }
  }
  if (spec.rfind("Zloc(", 0) == 0 && spec.back() == ')') {
    std::string pText = trimmed(spec.substr(5, spec.size() - 6));
    if (pText.empty() || pText.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("bad prime in: " + spec);
    try {
      return EuclideanDomain::intLocalizedAt(std::stol(pText));
    } catch (const InvalidSpec& e) {
      throw UnsupportedRing(e.what());
    }
  }
  throw ParseError("unrecognized domain spec: " + spec);
}

std::string renderDomainSpec(const EuclideanDomain& d) {
  switch (d.kind()) {
    case EuclideanDomain::Kind::Int: return "Z";
    case EuclideanDomain::Kind::PolyOverGF:
      return "GF(" + std::to_string(d.prime()) + ")[x]";
    case EuclideanDomain::Kind::IntLocAt:
      return "Zloc(" + std::to_string(d.prime()) + ")";
  }
  throw InternalError("unreachable");
}

}  // namespace modlattice
