#include "modlattice/gfp.hpp"

#include <algorithm>
#include <utility>

#include "modlattice/errors.hpp"

namespace modlattice::gfp {

long modReduce(long c, long p) {
  long r = c % p;
  return r < 0 ? r + p : r;
}

long invMod(long a, long p) {
  // Extended Euclid; p prime and a != 0 mod p.
  long t = 0, newT = 1, r = p, newR = modReduce(a, p);
  while (newR != 0) {
    long q = r / newR;
    t = std::exchange(newT, t - q * newT);
    r = std::exchange(newR, r - q * newR);
  }
  if (r != 1) throw DivisionByZero("invMod: argument not invertible");
  return modReduce(t, p);
}

Poly normalize(Poly a, long p) {
  for (auto& c : a) c = modReduce(c, p);
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

Poly fromCoeffs(const std::vector<long>& coeffs, long p) {
  return normalize(coeffs, p);
}

Poly constant(long c, long p) {
  Poly a{modReduce(c, p)};
  return normalize(std::move(a), p);
}

Poly add(const Poly& a, const Poly& b, long p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = modReduce(r[i] + b[i], p);
  return normalize(std::move(r), p);
}

Poly neg(const Poly& a, long p) {
  Poly r = a;
  for (auto& c : r) c = modReduce(-c, p);
  return r;
}

Poly sub(const Poly& a, const Poly& b, long p) { return add(a, neg(b, p), p); }

Poly mul(const Poly& a, const Poly& b, long p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = modReduce(r[i + j] + a[i] * b[j], p);
  return normalize(std::move(r), p);
}

Poly scale(const Poly& a, long c, long p) {
  Poly r = a;
  for (auto& x : r) x = modReduce(x * modReduce(c, p), p);
  return normalize(std::move(r), p);
}

std::pair<Poly, Poly> divMod(const Poly& a, const Poly& b, long p) {
  if (b.empty()) throw DivisionByZero("gfp::divMod by zero polynomial");
  Poly rem = a;
  if (rem.size() < b.size()) return {Poly{}, rem};
  Poly q(rem.size() - b.size() + 1, 0);
  const long leadInv = invMod(b.back(), p);
  for (int i = static_cast<int>(rem.size()) - 1;
       i >= static_cast<int>(b.size()) - 1; --i) {
    if (rem[i] == 0) continue;
    long c = modReduce(rem[i] * leadInv, p);
    int shift = i - (static_cast<int>(b.size()) - 1);
    q[shift] = c;
    for (size_t j = 0; j < b.size(); ++j)
      rem[shift + j] = modReduce(rem[shift + j] - c * b[j], p);
  }
  return {normalize(std::move(q), p), normalize(std::move(rem), p)};
}

Poly mod(const Poly& a, const Poly& b, long p) { return divMod(a, b, p).second; }

Poly divExact(const Poly& a, const Poly& b, long p) {
  auto [q, r] = divMod(a, b, p);
  if (!r.empty()) throw InternalError("gfp::divExact: division not exact");
  return q;
}

Poly makeMonic(const Poly& a, long p) {
  if (a.empty() || a.back() == 1) return a;
  return scale(a, invMod(a.back(), p), p);
}

Poly gcd(Poly a, Poly b, long p) {
  while (!b.empty()) {
    Poly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return makeMonic(a, p);
}

Poly derivative(const Poly& a, long p) {
  if (a.size() <= 1) return {};
  Poly r(a.size() - 1, 0);
  for (size_t i = 1; i < a.size(); ++i)
    r[i - 1] = modReduce(a[i] * static_cast<long>(i % p), p);
  return normalize(std::move(r), p);
}

Poly powMod(const Poly& base, long exp, const Poly& f, long p) {
  Poly result = constant(1, p);
  Poly b = mod(base, f, p);
  while (exp > 0) {
    if (exp & 1) result = mod(mul(result, b, p), f, p);
    b = mod(mul(b, b, p), f, p);
    exp >>= 1;
  }
  return result;
}

Poly frobeniusPower(const Poly& f, long p, int iterations) {
  Poly x{0, 1};
  Poly y = mod(x, f, p);
  for (int i = 0; i < iterations; ++i) y = powMod(y, p, f, p);
  return y;
}

namespace {
std::vector<int> primeDivisors(int n) {
  std::vector<int> out;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}
}  // namespace

bool isIrreducible(const Poly& f, long p) {
  const int n = degree(f);
  if (n <= 0) return false;
  if (n == 1) return true;
  const Poly x{0, 1};
  // x^(p^n) == x mod f, and x^(p^(n/l)) - x coprime to f for prime l | n.
  for (int l : primeDivisors(n)) {
    Poly y = frobeniusPower(f, p, n / l);
    Poly g = gcd(sub(y, x, p), f, p);
    if (degree(g) != 0) return false;
  }
  Poly y = frobeniusPower(f, p, n);
  return sub(y, x, p).empty();
}

Poly squarefreePart(const Poly& f, long p) {
  Poly a = makeMonic(f, p);
  if (degree(a) <= 1) return a;
  Poly d = derivative(a, p);
  if (d.empty()) {
    // a = h(x^p); in GF(p) the p-th root keeps the same coefficients.
    Poly h;
    for (size_t i = 0; i < a.size(); i += static_cast<size_t>(p))
      h.push_back(a[i]);
    return squarefreePart(normalize(std::move(h), p), p);
  }
  Poly g = gcd(a, d, p);
  if (degree(g) == 0) return a;
  Poly w = divExact(a, g, p);
  Poly s = squarefreePart(g, p);
  Poly overlap = gcd(w, s, p);
  return mul(w, divExact(s, overlap, p), p);
}

}  // namespace modlattice::gfp
