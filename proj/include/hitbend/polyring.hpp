#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hitbend/matrix.hpp"
#include "hitbend/poly.hpp"

namespace hitbend {

/// Interval endpoint for Sturm counting: a rational or +-infinity.
struct Endpoint {
  int infinity = 0;  // -1, 0 (finite), +1
  Rational value;

  static Endpoint neg_inf() { return {-1, Rational(0)}; }
  static Endpoint pos_inf() { return {+1, Rational(0)}; }
  static Endpoint at(Rational v) { return {0, std::move(v)}; }
};

/// Number of distinct real roots of a squarefree f in (lo, hi] under the
/// fixed embedding of its coefficient field.
int sturm_count(const KPoly& f, const Endpoint& lo, const Endpoint& hi);
bool is_real_rooted_distinct_positive(const KPoly& f);
bool has_distinct_absolute_values(const KPoly& f);

struct ZFactorization {
  Integer content;
  /// Primitive irreducible factors with positive leading coefficient, sorted
  /// by (degree, coefficients from the constant term).
  std::vector<std::pair<ZPoly, int>> factors;

  ZPoly product() const;
};

ZFactorization factor_over_int(const ZPoly& f);

/// Monic irreducible factors over a quadratic field (Trager's norm method).
std::vector<std::pair<KPoly, int>> factor_over_quadratic_field(const KPoly& f);
/// Dispatch: degree-1 fields go through the integer factorizer.
std::vector<std::pair<KPoly, int>> factor_over_field(const KPoly& f);

bool is_irreducible_mod_p(const FpPoly& f);
bool is_reciprocal(const KPoly& f);

// ------------------------------------------------------------- conversions

Integer content(const ZPoly& f);
ZPoly primitive_part(const ZPoly& f);
QPoly to_q(const ZPoly& f);
/// Scale by the lcm of denominators and take the primitive part.
ZPoly clear_denominators(const QPoly& f);
KPoly to_k(const ZPoly& f, const FieldPtr& field);
KPoly to_k(const QPoly& f, const FieldPtr& field);
/// Exact conversion; nullopt if some coefficient is not a rational integer.
std::optional<ZPoly> to_z(const KPoly& f);
std::optional<QPoly> to_q(const KPoly& f);
FpPoly to_fp(const ZPoly& f, std::uint64_t p);

/// Square-free decomposition over a field of characteristic zero:
/// monic pairs (g_i, i) with f = lc * prod g_i^i.
template <class T>
std::vector<std::pair<Poly<T>, int>> squarefree_decomposition(const Poly<T>& f) {
  std::vector<std::pair<Poly<T>, int>> out;
  if (f.degree() <= 0) return out;
  const Poly<T> fm = make_monic(f);
  const Poly<T> d = fm.derivative();
  Poly<T> a = gcd(fm, d);
  Poly<T> b = divmod(fm, a).first;
  Poly<T> c = divmod(d, a).first;
  Poly<T> e = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    Poly<T> g = gcd(b, e);
    Poly<T> nb = divmod(b, g).first;
    Poly<T> nc = divmod(e, g).first;
    if (g.degree() > 0) out.emplace_back(make_monic(g), i);
    b = std::move(nb);
    e = nc - b.derivative();
    ++i;
  }
  return out;
}

}  // namespace hitbend
