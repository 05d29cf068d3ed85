#pragma once

#include <random>
#include <string>

#include "hitbend/pipeline.hpp"

namespace hitbend::testing {

inline std::string fixture(const std::string& name) { return std::string(HITBEND_FIXTURE_DIR) + "/" + name; }

inline const Genus2Tuple& tuple() {
  static const Genus2Tuple t = load_genus2_tuple(fixture("delta344_genus2.json"));
  return t;
}

inline const SurfaceRep& fuchsian() {
  static const SurfaceRep rep = fuchsian_genus2_rep(tuple());
  return rep;
}

/// Integral tau_n seed: over Z for odd n, over Z[sqrt2] for even n.
inline SurfaceRep integral_seed(int n) {
  SurfaceRep rep = tau_n(fuchsian(), n);
  if (n % 2 == 1) rep = descend_to_rationals(rep);
  return integralize(rep, Integer(1'000'000)).rep;
}

inline FieldPtr qf() { return NumberField::rationals(); }
inline FieldPtr k2() { return NumberField::q_sqrt2(); }

/// Canonical num/den; mpq_class(num, den) alone does not reduce.
inline Rational frac(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline NfElement q(const FieldPtr& f, long num, long den = 1) { return NfElement(f, frac(num, den)); }
/// a + b*w
inline NfElement ab(long a, long b) { return NfElement(k2(), std::vector<Rational>{Rational(a), Rational(b)}); }

inline NfMatrix mat(const FieldPtr& f, const std::vector<std::vector<Rational>>& rows) {
  KRing ring{f};
  NfMatrix m(ring, rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = NfElement(f, rows[i][j]);
  return m;
}

inline KPoly kpoly(const FieldPtr& f, const std::vector<Rational>& coeffs) {
  std::vector<NfElement> c;
  for (const auto& x : coeffs) c.emplace_back(f, x);
  return KPoly(KRing{f}, std::move(c));
}

inline ZPoly zpoly(const std::vector<long>& coeffs) {
  std::vector<Integer> c;
  for (long x : coeffs) c.emplace_back(x);
  return ZPoly(std::move(c));
}

/// Random element of SL(2, Z[sqrt2]) as a product of elementary matrices.
inline NfMatrix random_sl2(std::mt19937& rng, int factors = 4) {
  KRing ring{k2()};
  std::uniform_int_distribution<long> coef(-2, 2);
  NfMatrix m = NfMatrix::identity(ring, 2);
  for (int i = 0; i < factors; ++i) {
    NfMatrix e = NfMatrix::identity(ring, 2);
    e(i % 2 == 0 ? 0 : 1, i % 2 == 0 ? 1 : 0) = ab(coef(rng), coef(rng));
    m = m * e;
  }
  return m;
}

}  // namespace hitbend::testing
