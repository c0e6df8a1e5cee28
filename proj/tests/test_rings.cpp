#include <algorithm>
#include <set>

#include "doctest.h"
#include "modlattice/rings.hpp"

using namespace modlattice;

namespace {

RingPtr zmod(std::int64_t n) {
  return makeFiniteRing({RingComponent::cyclic(n)});
}

// Brute-force ideal oracle: every subset of the carrier closed under
// addition, negation, and scalar multiplication. Only feasible for tiny
// rings; used to pin the closure-based enumeration.
std::set<std::vector<std::int64_t>> idealsBySubsetScan(const RingPtr& R) {
  const std::int64_t n = R->size();
  std::set<std::vector<std::int64_t>> out;
  for (std::uint64_t bits = 0; bits < (1ULL << n); ++bits) {
    if (!(bits & 1)) continue;  // must contain 0
    std::vector<std::int64_t> elems;
    for (std::int64_t v = 0; v < n; ++v)
      if (bits & (1ULL << v)) elems.push_back(v);
    auto in = [&](std::int64_t v) {
      return std::binary_search(elems.begin(), elems.end(), v);
    };
    bool closed = true;
    for (std::int64_t a : elems) {
      if (!in(R->neg(a))) closed = false;
      for (std::int64_t b : elems)
        if (!in(R->add(a, b))) closed = false;
      for (std::int64_t r = 0; r < n && closed; ++r)
        if (!in(R->mul(r, a))) closed = false;
      if (!closed) break;
    }
    if (closed) out.insert(elems);
  }
  return out;
}

}  // namespace

TEST_CASE("ring construction sizes and validation") {
  CHECK(zmod(6)->size() == 6);
  auto r49 = makeFiniteRing({RingComponent::cyclic(4), RingComponent::cyclic(9)});
  CHECK(r49->size() == 36);
  auto gf4 = makeFiniteRing({RingComponent::polyQuot(2, {1, 1, 1})});
  CHECK(gf4->size() == 4);
  CHECK(gf4->isField());

  CHECK_THROWS_AS(RingComponent::cyclic(1), InvalidSpec);
  CHECK_THROWS_AS(RingComponent::polyQuot(4, {1, 1}), InvalidSpec);
  CHECK_THROWS_AS(RingComponent::polyQuot(2, {1}), InvalidSpec);
}

TEST_CASE("ring arithmetic laws hold exhaustively on small rings") {
  for (auto R : {zmod(6), makeFiniteRing({RingComponent::polyQuot(2, {0, 0, 1})}),
                 makeFiniteRing({RingComponent::cyclic(2),
                                 RingComponent::polyQuot(3, {1, 1})})}) {
    const std::int64_t n = R->size();
    for (std::int64_t a = 0; a < n; ++a) {
      CHECK(R->add(a, R->neg(a)) == 0);
      CHECK(R->mul(a, R->one()) == a);
      for (std::int64_t b = 0; b < n; ++b) {
        CHECK(R->add(a, b) == R->add(b, a));
        CHECK(R->mul(a, b) == R->mul(b, a));
        for (std::int64_t c = 0; c < n; ++c) {
          CHECK(R->add(R->add(a, b), c) == R->add(a, R->add(b, c)));
          CHECK(R->mul(R->mul(a, b), c) == R->mul(a, R->mul(b, c)));
          CHECK(R->mul(a, R->add(b, c)) == R->add(R->mul(a, b), R->mul(a, c)));
        }
      }
    }
  }
}

TEST_CASE("ideal enumeration matches subset-scan oracle") {
  for (auto R : {zmod(6), zmod(4), zmod(8),
                 makeFiniteRing({RingComponent::polyQuot(2, {0, 0, 1})}),
                 makeFiniteRing({RingComponent::cyclic(2),
                                 RingComponent::cyclic(3)})}) {
    auto oracle = idealsBySubsetScan(R);
    auto ideals = allIdeals(R);
    CHECK(ideals.size() == oracle.size());
    for (const auto& ideal : ideals) CHECK(oracle.count(ideal.elements) == 1);
  }
}

TEST_CASE("ideal counts from worked instances") {
  CHECK(allIdeals(zmod(6)).size() == 4);
  CHECK(allIdeals(zmod(4)).size() == 3);
  auto gf4 = makeFiniteRing({RingComponent::polyQuot(2, {1, 1, 1})});
  CHECK(allIdeals(gf4).size() == 2);
}

TEST_CASE("ideal enumeration is deterministic") {
  auto a = allIdeals(zmod(12));
  auto b = allIdeals(parseRingSpec("Z/12"));
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].elements == b[i].elements);
    CHECK(a[i].generators == b[i].generators);
  }
}

TEST_CASE("prime and maximal ideal predicates") {
  auto z6 = zmod(6);
  auto two = idealGenerated(z6, {2});
  CHECK(two.elements == std::vector<std::int64_t>{0, 2, 4});
  CHECK(isPrimeIdeal(two));
  auto z4 = zmod(4);
  auto zero4 = idealGenerated(z4, {});
  CHECK_FALSE(isPrimeIdeal(zero4));
  auto unit = idealGenerated(z4, {1});
  CHECK_FALSE(isPrimeIdeal(unit));
  CHECK(isMaximalIdeal(idealGenerated(z4, {2})));
  CHECK_FALSE(isMaximalIdeal(zero4));
}

TEST_CASE("zero-dimensionality of finite rings, exhaustively") {
  for (auto spec : {"Z/6", "Z/8", "Z/12", "GF(2)[x]/[0,0,1]", "Z/2 x Z/3"}) {
    auto R = parseRingSpec(spec);
    auto nil = nilradical(R);
    auto jac = jacobsonRadical(R);
    CHECK(jac.containsAll(nil));
    for (const auto& ideal : allIdeals(R)) {
      if (isMaximalIdeal(ideal)) CHECK(isPrimeIdeal(ideal));
      if (isPrimeIdeal(ideal)) CHECK(isMaximalIdeal(ideal));
    }
  }
}

TEST_CASE("nilradical and jacobson radical instances") {
  auto z4 = zmod(4);
  CHECK(nilradical(z4).elements == std::vector<std::int64_t>{0, 2});
  CHECK(jacobsonRadical(z4).elements == std::vector<std::int64_t>{0, 2});
  auto z6 = zmod(6);
  CHECK(jacobsonRadical(z6).elements == std::vector<std::int64_t>{0});
}

TEST_CASE("quotient ring carries a usable surjection") {
  auto z4 = zmod(4);
  auto q = quotientRing(z4, idealGenerated(z4, {2}));
  CHECK(q.ring->size() == 2);
  CHECK(q.project[0] == q.project[2]);
  CHECK(q.project[1] == q.project[3]);
  CHECK(q.project[0] != q.project[1]);

  // Surjection respects the operations.
  for (std::int64_t a = 0; a < 4; ++a)
    for (std::int64_t b = 0; b < 4; ++b) {
      CHECK(q.project[z4->add(a, b)] == q.ring->add(q.project[a], q.project[b]));
      CHECK(q.project[z4->mul(a, b)] == q.ring->mul(q.project[a], q.project[b]));
    }

  CHECK_THROWS_AS(quotientRing(z4, idealGenerated(z4, {1})), NotProper);

  // Quotient by the nilradical is reduced.
  for (auto spec : {"Z/4", "Z/12", "GF(2)[x]/[0,0,1]"}) {
    auto R = parseRingSpec(spec);
    auto qq = quotientRing(R, nilradical(R));
    CHECK(nilradical(qq.ring).elements == std::vector<std::int64_t>{0});
  }
}

TEST_CASE("product rings quotient componentwise") {
  auto R = parseRingSpec("Z/2 x Z/3");
  // Kill the first component.
  auto ideal = idealGenerated(R, {R->packComponents({1, 0})});
  auto q = quotientRing(R, ideal);
  CHECK(q.ring->size() == 3);
  CHECK(renderRingSpec(*q.ring) == "Z/3");
}

TEST_CASE("ring spec grammar round trip") {
  for (auto spec : {"Z/6", "GF(2)[x]/[1,1,1]", "Z/4 x GF(3)[x]/[0,1]",
                    "Z/2 x Z/3"}) {
    auto R = parseRingSpec(spec);
    CHECK(renderRingSpec(*R) == spec);
    auto R2 = parseRingSpec(renderRingSpec(*R));
    CHECK(R->sameAs(*R2));
  }
  CHECK_THROWS_AS(parseRingSpec("Z/1"), UnsupportedRing);
  CHECK_THROWS_AS(parseRingSpec("GF(4)[x]/[1,1]"), UnsupportedRing);
  CHECK_THROWS_AS(parseRingSpec("Q/3"), ParseError);
  CHECK_THROWS_AS(parseRingSpec("GF(2)[x]/[1]"), UnsupportedRing);
}

TEST_CASE("euclidean domain kernels") {
  auto Z = EuclideanDomain::integers();
  CHECK(Z.equal(Z.gcd(Z.fromInt(12), Z.fromInt(-18)), Z.fromInt(6)));
  auto [q, r] = Z.divMod(Z.fromInt(-7), Z.fromInt(3));
  CHECK(Z.equal(Z.add(Z.mul(q, Z.fromInt(3)), r), Z.fromInt(-7)));
  CHECK(Z.euclideanSize(r) < Z.euclideanSize(Z.fromInt(3)));
  CHECK_THROWS_AS(Z.divMod(Z.one(), Z.zero()), DivisionByZero);

  auto P2 = EuclideanDomain::polyOverGF(2);
  Elem x2p1 = gfp::Poly{1, 0, 1};
  Elem xp1 = gfp::Poly{1, 1};
  CHECK(P2.equal(P2.gcd(x2p1, xp1), xp1));  // (x+1)^2 = x^2+1 over GF(2)

  auto L3 = EuclideanDomain::intLocalizedAt(3);
  Elem sixFifths = mpq_class(6, 5);
  CHECK(L3.equal(L3.normalizeUnit(sixFifths), Elem(mpq_class(3))));
  CHECK(L3.isUnit(Elem(mpq_class(2, 5))));
  auto [ql, rl] = L3.divMod(Elem(mpq_class(3, 2)), Elem(mpq_class(3)));
  CHECK(L3.isZero(rl));
  CHECK(L3.equal(ql, Elem(mpq_class(1, 2))));
}

TEST_CASE("divmod invariant holds for sampled inputs across domains") {
  auto Z = EuclideanDomain::integers();
  for (long a = -30; a <= 30; ++a)
    for (long b = -12; b <= 12; ++b) {
      if (b == 0) continue;
      auto [q, r] = Z.divMod(Z.fromInt(a), Z.fromInt(b));
      CHECK(Z.equal(Z.add(Z.mul(q, Z.fromInt(b)), r), Z.fromInt(a)));
      if (!Z.isZero(r))
        CHECK(Z.euclideanSize(r) < Z.euclideanSize(Z.fromInt(b)));
    }
  auto P3 = EuclideanDomain::polyOverGF(3);
  for (long code = 0; code < 81; ++code) {
    gfp::Poly a, b;
    long c = code;
    for (int i = 0; i < 2; ++i) { a.push_back(c % 3); c /= 3; }
    for (int i = 0; i < 2; ++i) { b.push_back(c % 3); c /= 3; }
    a = gfp::normalize(a, 3);
    b = gfp::normalize(b, 3);
    if (b.empty()) continue;
    auto [q, r] = P3.divMod(Elem(a), Elem(b));
    CHECK(P3.equal(P3.add(P3.mul(q, Elem(b)), r), Elem(a)));
  }
}

TEST_CASE("primality and radicals in the domains") {
  auto Z = EuclideanDomain::integers();
  CHECK(Z.isPrime(Z.fromInt(7)));
  CHECK_FALSE(Z.isPrime(Z.fromInt(6)));
  CHECK_FALSE(Z.isPrime(Z.fromInt(1)));
  CHECK(Z.equal(Z.radical(Z.fromInt(12)), Z.fromInt(6)));
  CHECK(Z.equal(Z.radical(Z.fromInt(-8)), Z.fromInt(2)));

  auto P2 = EuclideanDomain::polyOverGF(2);
  CHECK(P2.isPrime(Elem(gfp::Poly{1, 1, 1})));
  CHECK_FALSE(P2.isPrime(Elem(gfp::Poly{1, 0, 1})));

  // Radical of an inseparable power: (x^2)' = 0 over GF(2).
  CHECK(P2.equal(P2.radical(Elem(gfp::Poly{0, 0, 1})), Elem(gfp::Poly{0, 1})));
  CHECK(P2.equal(P2.radical(Elem(gfp::Poly{1, 0, 1})), Elem(gfp::Poly{1, 1})));

  auto L5 = EuclideanDomain::intLocalizedAt(5);
  CHECK(L5.isPrime(Elem(mpq_class(5))));
  CHECK(L5.isPrime(Elem(mpq_class(10, 3))));
  CHECK_FALSE(L5.isPrime(Elem(mpq_class(25))));
  CHECK(L5.equal(L5.radical(Elem(mpq_class(50))), Elem(mpq_class(5))));
}

TEST_CASE("polynomial factorization by trial division") {
  auto P2 = EuclideanDomain::polyOverGF(2);
  // x^2+x = x(x+1)
  auto factors = P2.factor(Elem(gfp::Poly{0, 1, 1}));
  REQUIRE(factors.size() == 2);
  CHECK(std::get<gfp::Poly>(factors[0].first) == gfp::Poly{0, 1});
  CHECK(std::get<gfp::Poly>(factors[1].first) == gfp::Poly{1, 1});

  auto Z = EuclideanDomain::integers();
  auto fz = Z.factor(Z.fromInt(360));
  REQUIRE(fz.size() == 3);
  CHECK(fz[0].second == 3);
  CHECK(fz[1].second == 2);
  CHECK(fz[2].second == 1);
}

TEST_CASE("domain spec grammar") {
  CHECK(parseDomainSpec("Z").kind() == EuclideanDomain::Kind::Int);
  auto g5 = parseDomainSpec("GF(5)[x]");
  CHECK(g5.prime() == 5);
  auto l3 = parseDomainSpec("Zloc(3)");
  CHECK(l3.kind() == EuclideanDomain::Kind::IntLocAt);
  CHECK(renderDomainSpec(l3) == "Zloc(3)");
  CHECK_THROWS_AS(parseDomainSpec("Zloc(4)"), UnsupportedRing);
  CHECK_THROWS_AS(parseDomainSpec("R"), ParseError);
}
