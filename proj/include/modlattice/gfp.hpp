#pragma once

#include <vector>

namespace modlattice::gfp {

// Dense polynomials over the prime field GF(p), coefficients ascending,
// normalized (no zero leading coefficient). The zero polynomial is the empty
// vector. Callers pass p explicitly; coefficients live in [0, p).
using Poly = std::vector<long>;

inline bool isZero(const Poly& a) { return a.empty(); }
inline int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

long modReduce(long c, long p);
long invMod(long a, long p);  // a != 0 mod p

Poly normalize(Poly a, long p);
Poly fromCoeffs(const std::vector<long>& coeffs, long p);
Poly constant(long c, long p);

Poly add(const Poly& a, const Poly& b, long p);
Poly sub(const Poly& a, const Poly& b, long p);
Poly neg(const Poly& a, long p);
Poly mul(const Poly& a, const Poly& b, long p);
Poly scale(const Poly& a, long c, long p);

// b != 0; returns (q, r) with a = q*b + r and deg r < deg b.
std::pair<Poly, Poly> divMod(const Poly& a, const Poly& b, long p);
Poly mod(const Poly& a, const Poly& b, long p);
Poly divExact(const Poly& a, const Poly& b, long p);

Poly gcd(Poly a, Poly b, long p);  // monic (or zero)
Poly makeMonic(const Poly& a, long p);
Poly derivative(const Poly& a, long p);

// x^(p^iterations) mod f, by iterated Frobenius.
Poly frobeniusPower(const Poly& f, long p, int iterations);
Poly powMod(const Poly& base, long exp, const Poly& f, long p);

// Rabin irreducibility test; exact for any prime p.
bool isIrreducible(const Poly& f, long p);

// Product of the distinct monic irreducible divisors of f (deg f >= 1).
// Handles inseparable cases via p-th root extraction.
Poly squarefreePart(const Poly& f, long p);

}  // namespace modlattice::gfp
