#include <cstdlib>

#include "doctest.h"
#include "modlattice/jsonio.hpp"

using namespace modlattice;
using jsonio::json;

TEST_CASE("big integers round trip through decimal strings") {
  mpz_class big("123456789012345678901234567890");
  auto j = jsonio::mpzJson(big);
  CHECK(j.is_string());
  CHECK(jsonio::mpzFrom(j) == big);
  auto small = jsonio::mpzJson(mpz_class(-42));
  CHECK(small.is_number_integer());
  CHECK(jsonio::mpzFrom(small) == -42);
  CHECK_THROWS_AS(jsonio::mpzFrom(json("not a number")), ParseError);
}

TEST_CASE("domain elements round trip") {
  auto Z = EuclideanDomain::integers();
  CHECK(Z.equal(jsonio::elemFrom(Z, jsonio::elemJson(Z, Z.fromInt(-7))),
                Z.fromInt(-7)));

  auto P3 = EuclideanDomain::polyOverGF(3);
  Elem poly = gfp::Poly{2, 0, 1};
  CHECK(P3.equal(jsonio::elemFrom(P3, jsonio::elemJson(P3, poly)), poly));

  auto L5 = EuclideanDomain::intLocalizedAt(5);
  Elem frac = mpq_class(10, 3);
  CHECK(L5.equal(jsonio::elemFrom(L5, jsonio::elemJson(L5, frac)), frac));
  CHECK_THROWS_AS(jsonio::elemFrom(L5, json("1/5")), ParseError);
  CHECK_THROWS_AS(jsonio::elemFrom(L5, json("2/10")), ParseError);
}

TEST_CASE("module specs round trip, including product rings") {
  for (const char* spec : {"Z/6", "Z/4 x GF(3)[x]/[0,1]", "GF(2)[x]/[1,1,1]"}) {
    auto ring = parseRingSpec(spec);
    std::vector<std::vector<std::int64_t>> relations{
        {ring->one(), ring->zero()},
        {ring->neg(ring->one()), ring->one()},
    };
    auto module = makeModule(ring, 2, relations);
    auto j = jsonio::moduleJson(*module);
    auto back = jsonio::moduleFrom(j, nullptr);
    CHECK(jsonio::moduleJson(*back) == j);
    CHECK(back->size() == module->size());

    auto sub = submoduleGenerated(module, {module->generatorImages()[0]});
    auto sj = jsonio::submoduleJson(*module, sub);
    auto backSub = jsonio::submoduleFrom(back, sj);
    CHECK(backSub.size() == sub.size());
  }
}

TEST_CASE("ring mismatch between --ring and module spec is rejected") {
  auto j = json::parse(R"({"ring":"Z/6","rank":1,"relations":[]})");
  CHECK_THROWS_AS(jsonio::moduleFrom(j, parseRingSpec("Z/4")), ParseError);
  CHECK(jsonio::moduleFrom(j, parseRingSpec("Z/6"))->size() == 6);
}

TEST_CASE("presented module specs round trip") {
  auto Z = EuclideanDomain::integers();
  PresentedModule m{Z, 2, {{Z.fromInt(4), Z.fromInt(6)}}};
  auto j = jsonio::presentedModuleJson(m);
  auto back = jsonio::presentedModuleFrom(Z, j);
  CHECK(back.rank == 2);
  CHECK(Z.equal(back.relations[0][1], Z.fromInt(6)));
}

TEST_CASE("cell ceiling honors the environment override") {
  CHECK(defaultBounds().maxCells == (1 << 20));
  setenv("MODLATTICE_MAX_CELLS", "4096", 1);
  CHECK(defaultBounds().maxCells == 4096);
  unsetenv("MODLATTICE_MAX_CELLS");
  CHECK(defaultBounds().maxCells == (1 << 20));
}
