#include "modlattice/jsonio.hpp"

#include <cstdio>
#include <fstream>

namespace modlattice::jsonio {

namespace {
constexpr std::int64_t kSafeInt = (std::int64_t{1} << 53) - 1;
}

json mpzJson(const mpz_class& v) {
  if (v.fits_slong_p()) {
    long sv = v.get_si();
    if (sv <= kSafeInt && sv >= -kSafeInt) return json(sv);
  }
  return json(v.get_str());
}

mpz_class mpzFrom(const json& j) {
  if (j.is_number_integer()) return mpz_class(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return mpz_class(j.get<std::string>());
    } catch (const std::invalid_argument&) {
      throw ParseError("bad integer literal: " + j.dump());
    }
  }
  throw ParseError("expected integer or decimal string, got: " + j.dump());
}

json elemJson(const EuclideanDomain& d, const Elem& e) {
  switch (d.kind()) {
    case EuclideanDomain::Kind::Int:
      return mpzJson(std::get<mpz_class>(e));
    case EuclideanDomain::Kind::PolyOverGF: {
      json arr = json::array();
      for (long c : std::get<gfp::Poly>(e)) arr.push_back(c);
      return arr;
    }
    case EuclideanDomain::Kind::IntLocAt: {
      const auto& q = std::get<mpq_class>(e);
      if (q.get_den() == 1) return mpzJson(q.get_num());
      return json(q.get_num().get_str() + "/" + q.get_den().get_str());
    }
  }
  throw InternalError("unreachable");
}

Elem elemFrom(const EuclideanDomain& d, const json& j) {
  switch (d.kind()) {
    case EuclideanDomain::Kind::Int:
      return mpzFrom(j);
    case EuclideanDomain::Kind::PolyOverGF: {
      if (!j.is_array())
        throw ParseError("polynomial must be a coefficient array: " + j.dump());
      std::vector<long> coeffs;
      for (const auto& c : j) {
        if (!c.is_number_integer())
          throw ParseError("bad polynomial coefficient: " + c.dump());
        coeffs.push_back(c.get<long>());
      }
      return gfp::fromCoeffs(coeffs, d.prime());
    }
    case EuclideanDomain::Kind::IntLocAt: {
      mpq_class q;
      if (j.is_number_integer()) {
        q = mpq_class(j.get<std::int64_t>());
      } else if (j.is_string()) {
        const std::string text = j.get<std::string>();
        try {
          q = mpq_class(text);
        } catch (const std::invalid_argument&) {
          throw ParseError("bad fraction literal: " + text);
        }
        q.canonicalize();
      } else {
        throw ParseError("expected integer or \"a/b\" string: " + j.dump());
      }
      if (q != 0 &&
          mpz_divisible_ui_p(q.get_den().get_mpz_t(),
                             static_cast<unsigned long>(d.prime())))
        throw ParseError("denominator not invertible at the localized prime: " +
                         j.dump());
      return q;
    }
  }
  throw InternalError("unreachable");
}

namespace {

json componentCoordJson(const FiniteRing& ring, int comp, std::int64_t code) {
  const auto& c = ring.component(comp);
  if (c.kind == RingComponent::Kind::CyclicInt) return json(code);
  json arr = json::array();
  for (long v : ring.polyCoeffsOfCode(comp, code)) arr.push_back(v);
  return arr;
}

std::int64_t componentCoordFrom(const FiniteRing& ring, int comp, const json& j) {
  const auto& c = ring.component(comp);
  if (c.kind == RingComponent::Kind::CyclicInt) {
    if (!j.is_number_integer())
      throw ParseError("expected residue integer: " + j.dump());
    std::int64_t v = j.get<std::int64_t>() % c.n;
    return v < 0 ? v + c.n : v;
  }
  if (!j.is_array())
    throw ParseError("expected coefficient array for polynomial coordinate: " +
                     j.dump());
  std::vector<long> coeffs;
  for (const auto& e : j) {
    if (!e.is_number_integer())
      throw ParseError("bad coefficient: " + e.dump());
    coeffs.push_back(e.get<long>());
  }
  auto reduced = gfp::mod(gfp::fromCoeffs(coeffs, c.p), c.f, c.p);
  return ring.codeOfPolyCoeffs(comp, reduced);
}

}  // namespace

json ringElemJson(const FiniteRing& ring, std::int64_t code) {
  auto codes = ring.componentCodes(code);
  if (ring.componentCount() == 1) return componentCoordJson(ring, 0, codes[0]);
  json arr = json::array();
  for (int i = 0; i < ring.componentCount(); ++i)
    arr.push_back(componentCoordJson(ring, i, codes[i]));
  return arr;
}

std::int64_t ringElemFrom(const FiniteRing& ring, const json& j) {
  if (ring.componentCount() == 1)
    return componentCoordFrom(ring, 0, j);
  if (!j.is_array() ||
      static_cast<int>(j.size()) != ring.componentCount())
    throw ParseError("expected one coordinate per ring component: " + j.dump());
  std::vector<std::int64_t> codes;
  for (int i = 0; i < ring.componentCount(); ++i)
    codes.push_back(componentCoordFrom(ring, i, j[i]));
  return ring.packComponents(codes);
}

json idealJson(const IdealF& ideal) {
  json out;
  out["generators"] = json::array();
  for (std::int64_t g : ideal.generators)
    out["generators"].push_back(ringElemJson(*ideal.ring, g));
  out["elements"] = json::array();
  for (std::int64_t e : ideal.elements)
    out["elements"].push_back(ringElemJson(*ideal.ring, e));
  return out;
}

json moduleJson(const FiniteModule& module) {
  json out;
  out["ring"] = renderRingSpec(*module.ring());
  out["rank"] = module.rank();
  out["relations"] = json::array();
  for (const auto& row : module.relations()) {
    json r = json::array();
    for (std::int64_t e : row) r.push_back(ringElemJson(*module.ring(), e));
    out["relations"].push_back(r);
  }
  return out;
}

ModulePtr moduleFrom(const json& j, const RingPtr& ringOverride,
                     const Bounds& bounds) {
  if (!j.is_object()) throw ParseError("module spec must be an object");
  RingPtr ring = ringOverride;
  if (j.contains("ring")) {
    auto parsed = parseRingSpec(j["ring"].get<std::string>());
    if (ring && !ring->sameAs(*parsed))
      throw ParseError("module ring spec disagrees with --ring");
    ring = parsed;
  }
  if (!ring) throw ParseError("module spec needs a ring");
  if (!j.contains("rank") || !j["rank"].is_number_integer())
    throw ParseError("module spec needs an integer rank");
  int rank = j["rank"].get<int>();
  std::vector<std::vector<std::int64_t>> relations;
  if (j.contains("relations")) {
    if (!j["relations"].is_array())
      throw ParseError("relations must be an array of rows");
    for (const auto& row : j["relations"]) {
      if (!row.is_array() || static_cast<int>(row.size()) != rank)
        throw ParseError("relation row width must equal rank");
      std::vector<std::int64_t> r;
      for (const auto& e : row) r.push_back(ringElemFrom(*ring, e));
      relations.push_back(std::move(r));
    }
  }
  return makeModule(ring, rank, relations, bounds);
}

json submoduleJson(const FiniteModule& module, const SubmoduleF& sub) {
  json out;
  out["generators"] = json::array();
  for (std::int32_t g : sub.generators) {
    json row = json::array();
    for (std::int64_t e : module.repVector(g))
      row.push_back(ringElemJson(*module.ring(), e));
    out["generators"].push_back(row);
  }
  return out;
}

SubmoduleF submoduleFrom(const ModulePtr& module, const json& j) {
  if (!j.is_object() || !j.contains("generators") || !j["generators"].is_array())
    throw ParseError("submodule spec needs a generators array");
  std::vector<std::int32_t> gens;
  for (const auto& row : j["generators"]) {
    if (!row.is_array() || static_cast<int>(row.size()) != module->rank())
      throw ParseError("submodule generator width must equal rank");
    std::vector<std::int64_t> vec;
    for (const auto& e : row) vec.push_back(ringElemFrom(*module->ring(), e));
    gens.push_back(module->canonicalIndex(vec));
  }
  return submoduleGenerated(module, gens);
}

json classificationJson(const FiniteRing& ring, const Classification& c) {
  json out;
  out["proper"] = c.proper;
  out["maximal"] = c.maximal;
  out["prime"] = c.prime;
  out["classicalPrime"] = c.classicalPrime;
  out["intersectionOfMaximals"] = c.intersectionOfMaximals;
  out["colon"] = idealJson(c.colon);
  out["annSpectrum"] = json::array();
  for (const auto& ideal : c.annSpectrum)
    out["annSpectrum"].push_back(idealJson(ideal));
  (void)ring;
  return out;
}

json presentedModuleJson(const PresentedModule& m) {
  json out;
  out["domain"] = renderDomainSpec(m.domain);
  out["rank"] = m.rank;
  out["relations"] = json::array();
  for (const auto& row : m.relations) {
    json r = json::array();
    for (const auto& e : row) r.push_back(elemJson(m.domain, e));
    out["relations"].push_back(r);
  }
  return out;
}

PresentedModule presentedModuleFrom(const EuclideanDomain& d, const json& j) {
  if (!j.is_object()) throw ParseError("module spec must be an object");
  if (j.contains("domain")) {
    auto parsed = parseDomainSpec(j["domain"].get<std::string>());
    if (!(parsed == d))
      throw ParseError("module domain spec disagrees with --domain");
  }
  if (!j.contains("rank") || !j["rank"].is_number_integer())
    throw ParseError("module spec needs an integer rank");
  PresentedModule m{d, j["rank"].get<int>(), {}};
  if (m.rank < 1) throw ParseError("rank must be >= 1");
  if (j.contains("relations")) {
    if (!j["relations"].is_array())
      throw ParseError("relations must be an array of rows");
    for (const auto& row : j["relations"]) {
      if (!row.is_array() || static_cast<int>(row.size()) != m.rank)
        throw ParseError("relation row width must equal rank");
      Vec r;
      for (const auto& e : row) r.push_back(elemFrom(d, e));
      m.relations.push_back(std::move(r));
    }
  }
  return m;
}

json submodulePresJson(const EuclideanDomain& d, const SubmodulePres& p) {
  json out;
  out["generators"] = json::array();
  for (const auto& row : p.generators) {
    json r = json::array();
    for (const auto& e : row) r.push_back(elemJson(d, e));
    out["generators"].push_back(r);
  }
  return out;
}

SubmodulePres submodulePresFrom(const EuclideanDomain& d, int rank,
                                const json& j) {
  if (!j.is_object() || !j.contains("generators") || !j["generators"].is_array())
    throw ParseError("submodule spec needs a generators array");
  SubmodulePres p;
  for (const auto& row : j["generators"]) {
    if (!row.is_array() || static_cast<int>(row.size()) != rank)
      throw ParseError("submodule generator width must equal rank");
    Vec r;
    for (const auto& e : row) r.push_back(elemFrom(d, e));
    p.generators.push_back(std::move(r));
  }
  return p;
}

std::string canonicalDump(const json& j) { return j.dump(2) + "\n"; }

void atomicWrite(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InternalError("cannot open for writing: " + tmp);
    out << content;
    if (!out.flush()) throw InternalError("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw InternalError("atomic rename failed: " + path);
}

}  // namespace modlattice::jsonio
