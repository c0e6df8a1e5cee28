#pragma once

#include <string>

#include "json.hpp"
#include "modlattice/classify.hpp"
#include "modlattice/euclid.hpp"
#include "modlattice/finmod.hpp"
#include "modlattice/rings.hpp"

namespace modlattice::jsonio {

using nlohmann::json;

// Integers outside the 53-bit safe range serialize as decimal strings.
json mpzJson(const mpz_class& v);
mpz_class mpzFrom(const json& j);

json elemJson(const EuclideanDomain& d, const Elem& e);
Elem elemFrom(const EuclideanDomain& d, const json& j);

// Finite ring elements: bare coordinate for single-component rings,
// otherwise an array of per-component coordinates (residue integers and
// ascending coefficient arrays).
json ringElemJson(const FiniteRing& ring, std::int64_t code);
std::int64_t ringElemFrom(const FiniteRing& ring, const json& j);

json idealJson(const IdealF& ideal);

json moduleJson(const FiniteModule& module);
ModulePtr moduleFrom(const json& j, const RingPtr& ringOverride,
                     const Bounds& bounds = defaultBounds());
json submoduleJson(const FiniteModule& module, const SubmoduleF& sub);
SubmoduleF submoduleFrom(const ModulePtr& module, const json& j);

json classificationJson(const FiniteRing& ring, const Classification& c);

json presentedModuleJson(const PresentedModule& m);
PresentedModule presentedModuleFrom(const EuclideanDomain& d, const json& j);
json submodulePresJson(const EuclideanDomain& d, const SubmodulePres& p);
SubmodulePres submodulePresFrom(const EuclideanDomain& d, int rank, const json& j);

std::string canonicalDump(const json& j);
void atomicWrite(const std::string& path, const std::string& content);

}  // namespace modlattice::jsonio
