#include "modlattice/euclid.hpp"

#include <algorithm>
#include <cstdlib>
#include <utility>

namespace modlattice {

DMat identityMat(const EuclideanDomain& d, int n) {
  DMat m(n, n, d.zero());
  for (int i = 0; i < n; ++i) m.at(i, i) = d.one();
  return m;
}

DMat matFromRows(const std::vector<Vec>& rows, int width,
                 const EuclideanDomain& d) {
  DMat m(static_cast<int>(rows.size()), width, d.zero());
  for (size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<int>(rows[i].size()) != width)
      throw InvalidSpec("matrix row width mismatch");
    for (int j = 0; j < width; ++j) m.at(static_cast<int>(i), j) = rows[i][j];
  }
  return m;
}

DMat matMul(const EuclideanDomain& d, const DMat& x, const DMat& y) {
  if (x.cols != y.rows) throw InternalError("matMul: shape mismatch");
  DMat out(x.rows, y.cols, d.zero());
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      if (d.isZero(x.at(i, k))) continue;
      for (int j = 0; j < y.cols; ++j)
        out.at(i, j) = d.add(out.at(i, j), d.mul(x.at(i, k), y.at(k, j)));
    }
  return out;
}

bool matEqual(const EuclideanDomain& d, const DMat& x, const DMat& y) {
  if (x.rows != y.rows || x.cols != y.cols) return false;
  for (size_t i = 0; i < x.a.size(); ++i)
    if (!d.equal(x.a[i], y.a[i])) return false;
  return true;
}

Elem determinant(const EuclideanDomain& d, const DMat& input) {
  if (input.rows != input.cols) throw InternalError("determinant: not square");
  const int n = input.rows;
  if (n == 0) return d.one();
  DMat m = input;
  bool negate = false;
  Elem prev = d.one();
  for (int k = 0; k + 1 < n; ++k) {
    if (d.isZero(m.at(k, k))) {
      int swapRow = -1;
      for (int i = k + 1; i < n; ++i)
        if (!d.isZero(m.at(i, k))) {
          swapRow = i;
          break;
        }
      if (swapRow < 0) return d.zero();
      for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(swapRow, j));
      negate = !negate;
    }
    // Bareiss: exact division by the previous pivot.
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m.at(i, j) = d.divExact(
            d.sub(d.mul(m.at(i, j), m.at(k, k)), d.mul(m.at(i, k), m.at(k, j))),
            prev);
    prev = m.at(k, k);
  }
  Elem det = m.at(n - 1, n - 1);
  return negate ? d.neg(det) : det;
}

namespace {

struct SnfWork {
  const EuclideanDomain& d;
  DMat b, u, v, vinv;

  void swapRows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < b.cols; ++c) std::swap(b.at(i, c), b.at(j, c));
    for (int c = 0; c < u.cols; ++c) std::swap(u.at(i, c), u.at(j, c));
  }
  void addRow(int dst, int src, const Elem& factor) {  // row_dst += f*row_src
    for (int c = 0; c < b.cols; ++c)
      b.at(dst, c) = d.add(b.at(dst, c), d.mul(factor, b.at(src, c)));
    for (int c = 0; c < u.cols; ++c)
      u.at(dst, c) = d.add(u.at(dst, c), d.mul(factor, u.at(src, c)));
  }
  void scaleRow(int i, const Elem& unit) {
    for (int c = 0; c < b.cols; ++c) b.at(i, c) = d.mul(unit, b.at(i, c));
    for (int c = 0; c < u.cols; ++c) u.at(i, c) = d.mul(unit, u.at(i, c));
  }
  void swapCols(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < b.rows; ++r) std::swap(b.at(r, i), b.at(r, j));
    for (int r = 0; r < v.rows; ++r) std::swap(v.at(r, i), v.at(r, j));
    for (int c = 0; c < vinv.cols; ++c) std::swap(vinv.at(i, c), vinv.at(j, c));
  }
  void addCol(int dst, int src, const Elem& factor) {  // col_dst += f*col_src
    for (int r = 0; r < b.rows; ++r)
      b.at(r, dst) = d.add(b.at(r, dst), d.mul(factor, b.at(r, src)));
    for (int r = 0; r < v.rows; ++r)
      v.at(r, dst) = d.add(v.at(r, dst), d.mul(factor, v.at(r, src)));
    // Vinv picks up the inverse operation on the left: row_src -= f*row_dst.
    Elem nf = d.neg(factor);
    for (int c = 0; c < vinv.cols; ++c)
      vinv.at(src, c) = d.add(vinv.at(src, c), d.mul(nf, vinv.at(dst, c)));
  }
};

}  // namespace

SnfResult smithNormalForm(const EuclideanDomain& d, const DMat& input) {
  const int m = input.rows, n = input.cols;
  SnfWork w{d, input, identityMat(d, m), identityMat(d, n), identityMat(d, n)};

  const int steps = std::min(m, n);
  int t = 0;
  for (; t < steps; ++t) {
    bool anyPivot = false;
    while (true) {
      // Smallest euclidean size, ties by row-major position.
      int pi = -1, pj = -1;
      mpz_class best;
      for (int i = t; i < m; ++i)
        for (int j = t; j < n; ++j) {
          if (d.isZero(w.b.at(i, j))) continue;
          mpz_class size = d.euclideanSize(w.b.at(i, j));
          if (pi < 0 || size < best) {
            best = size;
            pi = i;
            pj = j;
          }
        }
      if (pi < 0) break;
      anyPivot = true;
      w.swapRows(t, pi);
      w.swapCols(t, pj);

      bool clean = true;
      for (int i = t + 1; i < m; ++i) {
        if (d.isZero(w.b.at(i, t))) continue;
        auto [q, r] = d.divMod(w.b.at(i, t), w.b.at(t, t));
        if (!d.isZero(q)) w.addRow(i, t, d.neg(q));
        if (!d.isZero(w.b.at(i, t))) clean = false;
      }
      for (int j = t + 1; j < n; ++j) {
        if (d.isZero(w.b.at(t, j))) continue;
        auto [q, r] = d.divMod(w.b.at(t, j), w.b.at(t, t));
        if (!d.isZero(q)) w.addCol(j, t, d.neg(q));
        if (!d.isZero(w.b.at(t, j))) clean = false;
      }
      if (!clean) continue;

      // Lone pivot; ensure it divides the remaining submatrix.
      int badRow = -1;
      for (int i = t + 1; i < m && badRow < 0; ++i)
        for (int j = t + 1; j < n; ++j)
          if (!d.divides(w.b.at(t, t), w.b.at(i, j))) {
            badRow = i;
            break;
          }
      if (badRow >= 0) {
        w.addRow(t, badRow, d.one());
        continue;
      }
      break;
    }
    if (!anyPivot) break;
    Elem unit = w.d.unitPart(w.b.at(t, t));
    if (!d.equal(unit, d.one())) w.scaleRow(t, d.inverseOfUnit(unit));
  }

  SnfResult out;
  out.u = std::move(w.u);
  out.d = std::move(w.b);
  out.v = std::move(w.v);
  out.vinv = std::move(w.vinv);
  for (int i = 0; i < std::min(m, n); ++i)
    if (!d.isZero(out.d.at(i, i))) out.diag.push_back(out.d.at(i, i));

  // Test builds set MODLATTICE_VERIFY_SNF to recheck the postcondition on
  // every call.
  static const bool verifyEveryCall =
      std::getenv("MODLATTICE_VERIFY_SNF") != nullptr;
  if (verifyEveryCall) {
    std::string why;
    if (!verifySnf(d, input, out, &why))
      throw InternalError("smith normal form postcondition failed: " + why);
  }
  return out;
}

bool verifySnf(const EuclideanDomain& d, const DMat& input, const SnfResult& snf,
               std::string* why) {
  auto fail = [&](const char* reason) {
    if (why) *why = reason;
    return false;
  };
  if (!matEqual(d, matMul(d, matMul(d, snf.u, input), snf.v), snf.d))
    return fail("U*A*V != D");
  for (int i = 0; i < snf.d.rows; ++i)
    for (int j = 0; j < snf.d.cols; ++j)
      if (i != j && !d.isZero(snf.d.at(i, j))) return fail("D not diagonal");
  if (!d.isUnit(determinant(d, snf.u))) return fail("det U not a unit");
  if (!d.isUnit(determinant(d, snf.v))) return fail("det V not a unit");
  if (!matEqual(d, matMul(d, snf.v, snf.vinv), identityMat(d, snf.v.rows)))
    return fail("Vinv is not the inverse of V");
  for (size_t i = 0; i < snf.diag.size(); ++i) {
    if (!d.equal(snf.diag[i], d.normalizeUnit(snf.diag[i])))
      return fail("diagonal entry not unit-normalized");
    if (i + 1 < snf.diag.size() && !d.divides(snf.diag[i], snf.diag[i + 1]))
      return fail("divisibility chain broken");
  }
  // Nonzero entries occupy a prefix of the diagonal.
  for (size_t i = 0; i < snf.diag.size(); ++i)
    if (d.isZero(snf.d.at(static_cast<int>(i), static_cast<int>(i))))
      return fail("zero inside the nonzero diagonal prefix");
  return true;
}

EchelonResult rowEchelon(const EuclideanDomain& d, const DMat& input) {
  EchelonResult out;
  out.h = input;
  out.u = identityMat(d, input.rows);
  auto addRow = [&](int dst, int src, const Elem& f) {
    for (int c = 0; c < out.h.cols; ++c)
      out.h.at(dst, c) = d.add(out.h.at(dst, c), d.mul(f, out.h.at(src, c)));
    for (int c = 0; c < out.u.cols; ++c)
      out.u.at(dst, c) = d.add(out.u.at(dst, c), d.mul(f, out.u.at(src, c)));
  };
  auto swapRows = [&](int i, int j) {
    if (i == j) return;
    for (int c = 0; c < out.h.cols; ++c) std::swap(out.h.at(i, c), out.h.at(j, c));
    for (int c = 0; c < out.u.cols; ++c) std::swap(out.u.at(i, c), out.u.at(j, c));
  };
  int r = 0;
  for (int j = 0; j < input.cols && r < input.rows; ++j) {
    while (true) {
      int pivot = -1;
      mpz_class best;
      for (int i = r; i < input.rows; ++i) {
        if (d.isZero(out.h.at(i, j))) continue;
        mpz_class size = d.euclideanSize(out.h.at(i, j));
        if (pivot < 0 || size < best) {
          best = size;
          pivot = i;
        }
      }
      if (pivot < 0) break;
      swapRows(r, pivot);
      bool clean = true;
      for (int i = r + 1; i < input.rows; ++i) {
        if (d.isZero(out.h.at(i, j))) continue;
        auto [q, rem] = d.divMod(out.h.at(i, j), out.h.at(r, j));
        if (!d.isZero(q)) addRow(i, r, d.neg(q));
        if (!d.isZero(out.h.at(i, j))) clean = false;
      }
      if (clean) {
        Elem unit = d.unitPart(out.h.at(r, j));
        if (!d.equal(unit, d.one())) {
          Elem inv = d.inverseOfUnit(unit);
          for (int c = 0; c < out.h.cols; ++c)
            out.h.at(r, c) = d.mul(inv, out.h.at(r, c));
          for (int c = 0; c < out.u.cols; ++c)
            out.u.at(r, c) = d.mul(inv, out.u.at(r, c));
        }
        out.pivots.emplace_back(r, j);
        ++r;
        break;
      }
    }
  }
  return out;
}

bool hermiteMembership(const EuclideanDomain& d, const std::vector<Vec>& gens,
                       const Vec& v) {
  if (gens.empty()) {
    for (const auto& e : v)
      if (!d.isZero(e)) return false;
    return true;
  }
  const int width = static_cast<int>(v.size());
  auto ech = rowEchelon(d, matFromRows(gens, width, d));
  Vec w = v;
  for (auto [pr, pc] : ech.pivots) {
    if (d.isZero(w[pc])) continue;
    auto [q, rem] = d.divMod(w[pc], ech.h.at(pr, pc));
    if (!d.isZero(rem)) return false;
    for (int c = 0; c < width; ++c)
      w[c] = d.sub(w[c], d.mul(q, ech.h.at(pr, c)));
  }
  for (const auto& e : w)
    if (!d.isZero(e)) return false;
  return true;
}

std::vector<Vec> leftKernel(const EuclideanDomain& d, const DMat& input) {
  auto ech = rowEchelon(d, input);
  std::vector<Vec> out;
  for (int i = 0; i < input.rows; ++i) {
    bool zeroRow = true;
    for (int j = 0; j < input.cols; ++j)
      if (!d.isZero(ech.h.at(i, j))) {
        zeroRow = false;
        break;
      }
    if (zeroRow) out.push_back(ech.u.row(i));
  }
  return out;
}

std::vector<Vec> intersectSpans(const EuclideanDomain& d,
                                const std::vector<Vec>& gensA,
                                const std::vector<Vec>& gensB, int width) {
  if (gensA.empty() || gensB.empty()) return {};
  std::vector<Vec> stacked = gensA;
  stacked.insert(stacked.end(), gensB.begin(), gensB.end());
  auto kernel = leftKernel(d, matFromRows(stacked, width, d));
  std::vector<Vec> out;
  const int ma = static_cast<int>(gensA.size());
  for (const auto& w : kernel) {
    Vec z(width, d.zero());
    for (int i = 0; i < ma; ++i)
      for (int c = 0; c < width; ++c)
        z[c] = d.add(z[c], d.mul(w[i], gensA[i][c]));
    bool allZero = true;
    for (const auto& e : z)
      if (!d.isZero(e)) allZero = false;
    if (!allZero) out.push_back(std::move(z));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Presented modules
// ---------------------------------------------------------------------------

namespace {

std::vector<Vec> stackWithRelations(const PresentedModule& m,
                                    const SubmodulePres& p) {
  std::vector<Vec> rows = m.relations;
  rows.insert(rows.end(), p.generators.begin(), p.generators.end());
  return rows;
}

QuotientShape shapeFromRows(const EuclideanDomain& d, int rank,
                            const std::vector<Vec>& rows) {
  QuotientShape shape;
  if (rows.empty()) {
    shape.freeRank = rank;
    return shape;
  }
  auto snf = smithNormalForm(d, matFromRows(rows, rank, d));
  shape.freeRank = rank - static_cast<int>(snf.diag.size());
  for (const auto& e : snf.diag)
    if (!d.isUnit(e)) shape.invariantFactors.push_back(e);
  return shape;
}

}  // namespace

QuotientShape quotientShape(const PresentedModule& m, const SubmodulePres& p) {
  return shapeFromRows(m.domain, m.rank, stackWithRelations(m, p));
}

QuotientShape shapeOfModule(const PresentedModule& m) {
  return shapeFromRows(m.domain, m.rank, m.relations);
}

bool isClassicalPrimeFG(const PresentedModule& m, const SubmodulePres& p) {
  auto shape = quotientShape(m, p);
  if (shape.isZeroModule())
    throw NotProper("classical prime test requires a proper submodule");
  if (shape.invariantFactors.empty()) return true;
  const auto& d = m.domain;
  const Elem& first = shape.invariantFactors.front();
  if (!d.equal(first, shape.invariantFactors.back())) return false;
  return d.isPrime(first);
}

bool isPrimeFG(const PresentedModule& m, const SubmodulePres& p) {
  auto shape = quotientShape(m, p);
  if (shape.isZeroModule())
    throw NotProper("prime test requires a proper submodule");
  if (shape.invariantFactors.empty()) return true;  // free, rank >= 1
  if (shape.freeRank > 0) return false;             // mixed free and torsion
  const auto& d = m.domain;
  const Elem& first = shape.invariantFactors.front();
  if (!d.equal(first, shape.invariantFactors.back())) return false;
  return d.isPrime(first);
}

RadicalShapeResult radicalShape(const PresentedModule& m, const SubmodulePres& p) {
  auto shape = quotientShape(m, p);
  const auto& d = m.domain;
  RadicalShapeResult out;
  if (shape.freeRank > 0 && d.kind() == EuclideanDomain::Kind::IntLocAt) {
    out.zero = false;
    out.generator = d.fromInt(d.prime());
    return out;
  }
  for (const auto& factor : shape.invariantFactors) {
    Elem rad = d.radical(factor);
    if (!d.equal(rad, factor)) {  // a repeated prime survives in Rad(D/(d))
      out.zero = false;
      out.generator = rad;
      return out;
    }
  }
  return out;
}

SubmodulePres torsionSubmodule(const PresentedModule& m) {
  SubmodulePres out;
  if (m.relations.empty()) return out;
  const auto& d = m.domain;
  auto snf = smithNormalForm(d, matFromRows(m.relations, m.rank, d));
  for (size_t i = 0; i < snf.diag.size(); ++i) out.generators.push_back(snf.vinv.row(static_cast<int>(i)));
  return out;
}

bool isTorsionFreeQuotient(const PresentedModule& m, const SubmodulePres& n) {
  return quotientShape(m, n).invariantFactors.empty();
}

ClHilbertVerdict isClHilbertFG(const PresentedModule& m) {
  ClHilbertVerdict verdict;
  switch (m.domain.kind()) {
    case EuclideanDomain::Kind::Int:
    case EuclideanDomain::Kind::PolyOverGF:
      verdict.value = Verdict::True;
      verdict.tag = VerdictTag::TheoremBacked;
      return verdict;
    case EuclideanDomain::Kind::IntLocAt: {
      verdict.tag = VerdictTag::Derived;
      auto shape = shapeOfModule(m);
      if (shape.freeRank == 0) {
        verdict.value = Verdict::True;
        return verdict;
      }
      // The torsion preimage is classical prime (free quotient) and the
      // quotient radical is (p), so it is not an intersection of maximals.
      verdict.value = Verdict::False;
      auto witness = torsionSubmodule(m);
      auto rad = radicalShape(m, witness);
      if (rad.zero)
        throw InternalError("isClHilbertFG: expected nonzero radical witness");
      verdict.witness = std::move(witness);
      verdict.radicalGenerator = rad.generator;
      return verdict;
    }
  }
  throw InternalError("unreachable");
}

bool isPureSubmodule(const PresentedModule& m, const SubmodulePres& n) {
  const auto& d = m.domain;
  auto shape = quotientShape(m, n);
  if (shape.invariantFactors.empty()) return true;  // free quotient splits
  const Elem exponent = shape.invariantFactors.back();

  std::vector<Vec> preimN = stackWithRelations(m, n);
  // Prime powers up to the exponent's valuation are necessary and
  // sufficient: a purity failure at pi^k with k above the valuation k0
  // already implies one at k0 (peel pi^(k-k0) off the witness).
  for (const auto& [prime, exp] : d.factor(exponent)) {
    Elem power = d.one();
    for (int k = 1; k <= exp; ++k) {
      power = d.mul(power, prime);
      std::vector<Vec> preimCM = m.relations;
      for (int i = 0; i < m.rank; ++i) {
        Vec row(m.rank, d.zero());
        row[i] = power;
        preimCM.push_back(std::move(row));
      }
      std::vector<Vec> preimCN = m.relations;
      for (const auto& g : n.generators) {
        Vec scaled(g.size());
        for (size_t c = 0; c < g.size(); ++c) scaled[c] = d.mul(power, g[c]);
        preimCN.push_back(std::move(scaled));
      }
      for (const auto& z : intersectSpans(d, preimN, preimCM, m.rank))
        if (!hermiteMembership(d, preimCN, z)) return false;
    }
  }
  return true;
}

SubmodulePres spanOfCoprimePair(const EuclideanDomain& d, const Elem& a,
                                const Elem& b) {
  if (!d.isUnit(d.gcd(a, b)))
    throw InvalidSpec("spanOfCoprimePair requires coprime entries");
  SubmodulePres out;
  out.generators.push_back(Vec{a, b});
  return out;
}

}  // namespace modlattice
