#include "modlattice/zx_witness.hpp"

#include "modlattice/errors.hpp"
#include "modlattice/rings.hpp"
#include "modlattice/rng.hpp"

namespace modlattice {

IntPoly IntPoly::constant(const mpz_class& v) {
  IntPoly p;
  if (v != 0) p.c.push_back(v);
  return p;
}

IntPoly IntPoly::variableX() {
  IntPoly p;
  p.c = {mpz_class(0), mpz_class(1)};
  return p;
}

const mpz_class& IntPoly::constantTerm() const {
  static const mpz_class zero(0);
  return c.empty() ? zero : c[0];
}

void IntPoly::normalize() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
  IntPoly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), mpz_class(0));
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
  r.normalize();
  return r;
}

IntPoly operator-(const IntPoly& a) {
  IntPoly r = a;
  for (auto& v : r.c) v = -v;
  return r;
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + (-b); }

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.isZero() || b.isZero()) return {};
  IntPoly r;
  r.c.assign(a.c.size() + b.c.size() - 1, mpz_class(0));
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  r.normalize();
  return r;
}

IntPoly operator*(const mpz_class& s, const IntPoly& a) {
  IntPoly r = a;
  for (auto& v : r.c) v *= s;
  r.normalize();
  return r;
}

IntPoly mulByX(const IntPoly& a) {
  if (a.isZero()) return {};
  IntPoly r;
  r.c.reserve(a.c.size() + 1);
  r.c.push_back(mpz_class(0));
  r.c.insert(r.c.end(), a.c.begin(), a.c.end());
  return r;
}

std::string renderPoly(const IntPoly& a) {
  std::string out = "[";
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (i) out += ",";
    out += a.c[i].get_str();
  }
  return out + "]";
}

bool inIdealPX(const IntPoly& f, long p) {
  return mpz_divisible_ui_p(f.constantTerm().get_mpz_t(),
                            static_cast<unsigned long>(p)) != 0;
}

bool inPpxSubmodule(const ZxVec& v, long p) {
  // v = z*(p, x) forces z = f/p, so p must divide every coefficient of f,
  // g must equal (f/p)*x (equivalently f*x = g*p), and z must lie in (p,x).
  for (const auto& coeff : v.f.c)
    if (!mpz_divisible_ui_p(coeff.get_mpz_t(), static_cast<unsigned long>(p)))
      return false;
  if (!(mulByX(v.f) == mpz_class(p) * v.g)) return false;
  IntPoly z = v.f;
  for (auto& coeff : z.c) coeff /= p;
  return inIdealPX(z, p);
}

NotPrimeWitnessRecord notPrimeWitness(long p) {
  if (!isPrimeInt64(p)) throw InvalidSpec("notPrimeWitness: p must be prime");
  NotPrimeWitnessRecord rec;
  rec.p = p;
  rec.r = IntPoly::constant(p);
  rec.m = {IntPoly::constant(p), IntPoly::variableX()};
  ZxVec rm{rec.r * rec.m.f, rec.r * rec.m.g};
  rec.productInside = inPpxSubmodule(rm, p);
  rec.elementOutside = !inPpxSubmodule(rec.m, p);
  ZxVec probe{rec.r * IntPoly::constant(1), IntPoly::zero()};
  rec.probeOutside = !inPpxSubmodule(probe, p);
  return rec;
}

RadicalObstructionRecord radicalObstruction(long p) {
  if (!isPrimeInt64(p))
    throw InvalidSpec("radicalObstruction: p must be prime");
  RadicalObstructionRecord rec;
  rec.p = p;
  // (p, x) = p*(1,0) + x*(0,1) with both scalars in (p, x).
  IntPoly scalarP = IntPoly::constant(p);
  IntPoly scalarX = IntPoly::variableX();
  ZxVec sum{scalarP * IntPoly::constant(1) + scalarX * IntPoly::zero(),
            scalarP * IntPoly::zero() + scalarX * IntPoly::constant(1)};
  rec.sumDecompositionInPM = inIdealPX(scalarP, p) && inIdealPX(scalarX, p) &&
                             sum == ZxVec{IntPoly::constant(p),
                                          IntPoly::variableX()};
  rec.pairOutsidePpx =
      !inPpxSubmodule({IntPoly::constant(p), IntPoly::variableX()}, p);
  return rec;
}

namespace {

IntPoly randomPoly(Rng& rng, int degreeBound, long coeffBound) {
  IntPoly out;
  int deg = static_cast<int>(rng.below(static_cast<std::uint64_t>(degreeBound) + 1));
  for (int i = 0; i <= deg; ++i)
    out.c.push_back(mpz_class(rng.inRange(-coeffBound, coeffBound)));
  out.normalize();
  return out;
}

IntPoly randomNonzeroPoly(Rng& rng, int degreeBound, long coeffBound) {
  while (true) {
    IntPoly p = randomPoly(rng, degreeBound, coeffBound);
    if (!p.isZero()) return p;
  }
}

}  // namespace

FalsifyResult classicalPrimeFalsify(long p, std::int64_t sampleCount,
                                    int degreeBound, long coeffBound,
                                    std::uint64_t seed,
                                    const ZxMembership& membership) {
  if (sampleCount <= 0 || degreeBound < 0 || coeffBound <= 0)
    throw InvalidSpec("classicalPrimeFalsify: bounds must be positive");
  ZxMembership inside = membership ? membership : ZxMembership(&inPpxSubmodule);
  FalsifyResult out;
  out.seed = seed;
  Rng rng(seed);
  // Sample the conditioned slice r*s*v in P(p,x): any such v is z1*(p,x),
  // so draw z1, r, s from the box and accept when r*s*z1 lands in (p,x).
  const std::int64_t maxAttempts = sampleCount * 64;
  std::int64_t attempts = 0;
  while (out.samplesChecked < sampleCount && attempts < maxAttempts) {
    ++attempts;
    IntPoly z1 = randomPoly(rng, degreeBound, coeffBound);
    IntPoly r = randomNonzeroPoly(rng, degreeBound, coeffBound);
    IntPoly s = randomNonzeroPoly(rng, degreeBound, coeffBound);
    if (!inIdealPX(r * s * z1, p)) continue;
    ++out.samplesChecked;
    ZxVec v{z1 * IntPoly::constant(p), z1 * IntPoly::variableX()};
    ZxVec rv{r * v.f, r * v.g};
    ZxVec sv{s * v.f, s * v.g};
    if (!inside(rv, p) && !inside(sv, p)) {
      out.counterexampleFound = true;
      out.r = renderPoly(r);
      out.s = renderPoly(s);
      out.v = "(" + renderPoly(v.f) + "," + renderPoly(v.g) + ")";
      return out;
    }
  }
  return out;
}

}  // namespace modlattice
