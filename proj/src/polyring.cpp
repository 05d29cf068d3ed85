#include "hitbend/polyring.hpp"

#include <algorithm>
#include <numeric>

namespace hitbend {

namespace {

int sign_at(const KPoly& f, const Endpoint& x) {
  if (f.is_zero()) return 0;
  if (x.infinity != 0) {
    int s = f.lc().sign();
    if (x.infinity < 0 && f.degree() % 2 == 1) s = -s;
    return s;
  }
  return f.eval(f.ring().from_rational(x.value)).sign();
}

std::vector<KPoly> sturm_sequence(const KPoly& f) {
  std::vector<KPoly> seq{f};
  KPoly d = f.derivative();
  if (d.is_zero()) return seq;
  seq.push_back(d);
  while (seq.back().degree() > 0) {
    KPoly r = rem(seq[seq.size() - 2], seq.back());
    if (r.is_zero()) break;
    seq.push_back(-r);
  }
  return seq;
}

int variations(const std::vector<KPoly>& seq, const Endpoint& x) {
  int count = 0, last = 0;
  for (const auto& s : seq) {
    int v = sign_at(s, x);
    if (v == 0) continue;
    if (last != 0 && v != last) ++count;
    last = v;
  }
  return count;
}

// ------------------------------------------------------ integer polynomials

ZPoly reduce_mod(const ZPoly& f, const Integer& m) {
  std::vector<Integer> c = f.coeffs();
  for (auto& x : c) {
    x %= m;
    if (x < 0) x += m;
  }
  return ZPoly(std::move(c));
}

ZPoly symmetric_mod(const ZPoly& f, const Integer& m) {
  std::vector<Integer> c = f.coeffs();
  const Integer half = m / 2;
  for (auto& x : c) {
    x %= m;
    if (x < 0) x += m;
    if (x > half) x -= m;
  }
  return ZPoly(std::move(c));
}

ZPoly from_fp(const FpPoly& f) {
  std::vector<Integer> c;
  for (const auto& x : f.coeffs()) c.emplace_back(static_cast<unsigned long>(x.value()));
  return ZPoly(std::move(c));
}

/// Exact quotient a / b over Z, or nullopt.
std::optional<ZPoly> exact_divide(const ZPoly& a, const ZPoly& b) {
  if (b.degree() > a.degree()) return std::nullopt;
  std::vector<Integer> r = a.coeffs();
  std::vector<Integer> q(static_cast<size_t>(a.degree() - b.degree() + 1));
  const int db = b.degree();
  for (int k = a.degree(); k >= db; --k) {
    const Integer& top = r[static_cast<size_t>(k)];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), b.lc().get_mpz_t())) return std::nullopt;
    Integer f = top / b.lc();
    q[static_cast<size_t>(k - db)] = f;
    for (int i = 0; i <= db; ++i) r[static_cast<size_t>(k - db + i)] -= f * b.coeffs()[static_cast<size_t>(i)];
  }
  for (int i = 0; i < db; ++i)
    if (r[static_cast<size_t>(i)] != 0) return std::nullopt;
  return ZPoly(std::move(q));
}

/// Berlekamp: monic squarefree f over F_p -> monic irreducible factors.
std::vector<FpPoly> berlekamp(const FpPoly& f) {
  const FpRing ring = f.ring();
  const int n = f.degree();
  if (n <= 1) return {f};
  const auto un = static_cast<size_t>(n);
  Matrix<Fp> q(ring, un, un);
  const FpPoly x = FpPoly::x(ring);
  const FpPoly xp = powmod(x, Integer(static_cast<unsigned long>(ring.p)), f);
  FpPoly row = FpPoly::constant(ring, ring.one());
  for (size_t i = 0; i < un; ++i) {
    for (size_t j = 0; j < un; ++j) q(i, j) = row.coeff(static_cast<int>(j));
    q(i, i) -= ring.one();
    row = rem(row * xp, f);
  }
  const auto kernel = nullspace(q.transpose());
  std::vector<FpPoly> factors{f};
  if (kernel.size() == 1) return factors;
  for (const auto& v : kernel) {
    FpPoly h(ring, v);
    if (h.degree() <= 0) continue;
    for (std::uint64_t s = 0; s < ring.p && factors.size() < kernel.size(); ++s) {
      std::vector<FpPoly> next;
      for (const auto& u : factors) {
        if (u.degree() <= 1) {
          next.push_back(u);
          continue;
        }
        FpPoly g = gcd(u, h - FpPoly::constant(ring, Fp::raw(s, ring.p)));
        if (g.degree() > 0 && g.degree() < u.degree()) {
          next.push_back(g);
          next.push_back(divmod(u, g).first);
        } else {
          next.push_back(u);
        }
      }
      factors = std::move(next);
    }
    if (factors.size() == kernel.size()) break;
  }
  require(factors.size() == kernel.size(), ErrorCode::PreconditionViolated,
          "Berlekamp splitting incomplete");
  return factors;
}

/// Lift g = a * b (mod p), a monic, to g = A * B (mod p^k); returns A.
ZPoly hensel_lift(const ZPoly& g, const FpPoly& a_bar, const FpPoly& b_bar, unsigned long p,
                  unsigned k) {
  const FpRing ring{p};
  auto [one, s, t] = ext_gcd(a_bar, b_bar);
  require(one.degree() == 0, ErrorCode::PreconditionViolated, "Hensel factors not coprime");
  ZPoly a = from_fp(a_bar), b = from_fp(b_bar);
  Integer pj = p;
  for (unsigned j = 1; j < k; ++j) {
    ZPoly e = g - a * b;
    std::vector<Integer> ec = e.coeffs();
    for (auto& c : ec) c /= pj;
    FpPoly e_bar = to_fp(ZPoly(std::move(ec)), p);
    FpPoly tau = rem(t * e_bar, a_bar);
    FpPoly sigma = divmod(e_bar - tau * b_bar, a_bar).first;
    a += from_fp(tau).scaled(pj);
    b += from_fp(sigma).scaled(pj);
    pj *= p;
    a = reduce_mod(a, pj);
    b = reduce_mod(b, pj);
  }
  (void)ring;
  return a;
}

Integer mignotte_style_bound(const ZPoly& g) {
  Integer sq = 0;
  for (const auto& c : g.coeffs()) sq += c * c;
  Integer root;
  mpz_sqrt(root.get_mpz_t(), sq.get_mpz_t());
  if (root * root < sq) root += 1;
  Integer lc = abs(g.lc());
  return lc * (Integer(1) << g.degree()) * root;
}

/// Zassenhaus factorization of a primitive squarefree polynomial with
/// positive leading coefficient.
std::vector<ZPoly> zassenhaus(const ZPoly& g) {
  if (g.degree() <= 1) return {g};
  unsigned long p = 5;
  for (;; p += 2) {
    if (!is_probable_prime(p)) continue;
    if (mpz_divisible_ui_p(g.lc().get_mpz_t(), p)) continue;
    if (is_squarefree(to_fp(g, p))) break;
  }
  FpPoly g_bar = to_fp(g, p);
  const Fp lc_bar = g_bar.lc();
  std::vector<FpPoly> modular = berlekamp(make_monic(g_bar));
  if (modular.size() == 1) return {g};

  const Integer bound = mignotte_style_bound(g);
  unsigned k = 1;
  Integer m = p;
  while (m <= 2 * bound) {
    m *= p;
    ++k;
  }
  std::vector<ZPoly> lifted;
  for (size_t i = 0; i < modular.size(); ++i) {
    FpPoly rest = FpPoly::constant(g_bar.ring(), lc_bar);
    for (size_t j = 0; j < modular.size(); ++j)
      if (j != i) rest = rest * modular[j];
    lifted.push_back(hensel_lift(g, modular[i], rest, p, k));
  }

  std::vector<ZPoly> found;
  ZPoly remaining = g;
  size_t s = 1;
  while (2 * s <= lifted.size()) {
    bool progress = false;
    std::vector<size_t> idx(s);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      ZPoly h = ZPoly::constant(IntRing{}, remaining.lc());
      for (auto i : idx) h = reduce_mod(h * lifted[i], m);
      h = primitive_part(symmetric_mod(h, m));
      if (h.degree() > 0) {
        if (auto q = exact_divide(remaining, h)) {
          found.push_back(h);
          remaining = *q;
          for (auto it = idx.rbegin(); it != idx.rend(); ++it)
            lifted.erase(lifted.begin() + static_cast<long>(*it));
          progress = true;
          break;
        }
      }
      // next combination in lexicographic order
      long i = static_cast<long>(s) - 1;
      while (i >= 0 && idx[static_cast<size_t>(i)] == lifted.size() - s + static_cast<size_t>(i)) --i;
      if (i < 0) break;
      ++idx[static_cast<size_t>(i)];
      for (size_t j = static_cast<size_t>(i) + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!progress) ++s;
  }
  if (remaining.degree() > 0) found.push_back(primitive_part(remaining));
  return found;
}

bool z_less(const ZPoly& a, const ZPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return std::lexicographical_compare(a.coeffs().begin(), a.coeffs().end(), b.coeffs().begin(),
                                      b.coeffs().end());
}

bool k_less(const KPoly& a, const KPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = 0; i <= a.degree(); ++i) {
    if (lex_less(a.coeff(i), b.coeff(i))) return true;
    if (lex_less(b.coeff(i), a.coeff(i))) return false;
  }
  return false;
}

std::vector<KPoly> trager_squarefree(const KPoly& g) {
  if (g.degree() <= 1) return {g};
  const KRing& ring = g.ring();
  const NfElement w = NfElement::generator(ring.field);
  for (long k = 0;; k = (k > 0) ? -k : 1 - k) {
    const NfElement shift = w * Rational(k);
    KPoly gk = g.compose(KPoly(ring, {-shift, ring.one()}));
    std::vector<NfElement> conj;
    for (const auto& c : gk.coeffs()) conj.push_back(c.conjugate());
    KPoly norm_k = gk * KPoly(ring, conj);
    auto nq = to_q(norm_k);
    require(nq.has_value(), ErrorCode::PreconditionViolated, "norm polynomial not rational");
    if (!is_squarefree(*nq)) continue;
    std::vector<KPoly> out;
    for (const auto& [factor, mult] : factor_over_int(clear_denominators(*nq)).factors) {
      KPoly h = gcd(gk, to_k(factor, ring.field));
      if (h.degree() > 0) out.push_back(h.compose(KPoly(ring, {shift, ring.one()})));
    }
    return out;
  }
}

}  // namespace

// -------------------------------------------------------------- Sturm tools

int sturm_count(const KPoly& f, const Endpoint& lo, const Endpoint& hi) {
  require(!f.is_zero(), ErrorCode::PreconditionViolated, "sturm_count of zero polynomial");
  require(is_squarefree(f), ErrorCode::NotSquarefree, "sturm_count needs a squarefree polynomial");
  if (f.degree() == 0) return 0;
  const auto seq = sturm_sequence(f);
  return variations(seq, lo) - variations(seq, hi);
}

bool is_real_rooted_distinct_positive(const KPoly& f) {
  if (f.degree() <= 0 || !is_squarefree(f)) return false;
  return sturm_count(f, Endpoint::neg_inf(), Endpoint::pos_inf()) == f.degree() &&
         sturm_count(f, Endpoint::at(0), Endpoint::pos_inf()) == f.degree();
}

bool has_distinct_absolute_values(const KPoly& f) {
  require(f.degree() >= 0 && !f.coeff(0).is_zero(), ErrorCode::ZeroConstantTerm,
          "has_distinct_absolute_values needs f(0) != 0");
  if (!is_squarefree(f)) return false;
  if (sturm_count(f, Endpoint::neg_inf(), Endpoint::pos_inf()) != f.degree()) return false;
  return gcd(f, f.negated_variable()).degree() == 0;
}

// ------------------------------------------------------------ factorization

ZPoly ZFactorization::product() const {
  ZPoly out = ZPoly::constant(IntRing{}, content);
  for (const auto& [p, m] : factors)
    for (int i = 0; i < m; ++i) out = out * p;
  return out;
}

ZFactorization factor_over_int(const ZPoly& f) {
  require(!f.is_zero(), ErrorCode::PreconditionViolated, "cannot factor the zero polynomial");
  ZFactorization out;
  out.content = content(f);
  if (f.degree() == 0) return out;
  const ZPoly pp = primitive_part(f);
  for (const auto& [part, mult] : squarefree_decomposition(to_q(pp))) {
    for (auto& factor : zassenhaus(clear_denominators(part))) out.factors.emplace_back(factor, mult);
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& a, const auto& b) { return z_less(a.first, b.first); });
  return out;
}

std::vector<std::pair<KPoly, int>> factor_over_quadratic_field(const KPoly& f) {
  require(!f.is_zero(), ErrorCode::PreconditionViolated, "cannot factor the zero polynomial");
  require(f.ring().field->degree() == 2, ErrorCode::UnsupportedDegree,
          "Trager factorization implemented for quadratic fields only");
  std::vector<std::pair<KPoly, int>> out;
  for (const auto& [part, mult] : squarefree_decomposition(f))
    for (auto& factor : trager_squarefree(part)) out.emplace_back(make_monic(factor), mult);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return k_less(a.first, b.first); });
  return out;
}

std::vector<std::pair<KPoly, int>> factor_over_field(const KPoly& f) {
  const int d = f.ring().field->degree();
  if (d == 2) return factor_over_quadratic_field(f);
  require(d == 1, ErrorCode::UnsupportedDegree, "factorization over fields of degree > 2");
  auto q = to_q(f);
  std::vector<std::pair<KPoly, int>> out;
  for (const auto& [factor, mult] : factor_over_int(clear_denominators(*q)).factors)
    out.emplace_back(make_monic(to_k(factor, f.ring().field)), mult);
  return out;
}

bool is_irreducible_mod_p(const FpPoly& f) {
  require(f.is_monic() && f.degree() >= 1, ErrorCode::PreconditionViolated,
          "is_irreducible_mod_p needs a monic polynomial of degree >= 1");
  if (f.degree() == 1) return true;
  if (!is_squarefree(f)) return false;
  const FpPoly x = FpPoly::x(f.ring());
  const Integer p(static_cast<unsigned long>(f.ring().p));
  FpPoly h = rem(x, f);
  for (int i = 1; 2 * i <= f.degree(); ++i) {
    h = powmod(h, p, f);
    if (gcd(f, h - x).degree() != 0) return false;
  }
  return true;
}

bool is_reciprocal(const KPoly& f) {
  require(f.is_monic(), ErrorCode::PreconditionViolated, "is_reciprocal needs a monic polynomial");
  const NfElement c0 = f.coeff(0);
  require(c0.is_one() || (-c0).is_one(), ErrorCode::PreconditionViolated,
          "is_reciprocal needs f(0) = +-1");
  const KPoly r = f.reversed();
  return r == f || r == -f;
}

// ------------------------------------------------------------- conversions

Integer content(const ZPoly& f) {
  Integer g = 0;
  for (const auto& c : f.coeffs()) g = gcd(g, c);
  if (!f.is_zero() && f.lc() < 0) g = -g;
  return g;
}

ZPoly primitive_part(const ZPoly& f) {
  if (f.is_zero()) return f;
  const Integer c = content(f);
  std::vector<Integer> out;
  for (const auto& x : f.coeffs()) out.push_back(x / c);
  return ZPoly(std::move(out));
}

QPoly to_q(const ZPoly& f) {
  return QPoly(std::vector<Rational>(f.coeffs().begin(), f.coeffs().end()));
}

ZPoly clear_denominators(const QPoly& f) {
  Integer l = 1;
  for (const auto& c : f.coeffs()) l = lcm_denominator(l, c);
  std::vector<Integer> out;
  for (const auto& c : f.coeffs()) {
    Rational s = c * l;
    out.push_back(s.get_num());
  }
  return primitive_part(ZPoly(std::move(out)));
}

KPoly to_k(const ZPoly& f, const FieldPtr& field) {
  KRing ring{field};
  std::vector<NfElement> c;
  for (const auto& x : f.coeffs()) c.emplace_back(field, Rational(x));
  return KPoly(ring, std::move(c));
}

KPoly to_k(const QPoly& f, const FieldPtr& field) {
  KRing ring{field};
  std::vector<NfElement> c;
  for (const auto& x : f.coeffs()) c.emplace_back(field, x);
  return KPoly(ring, std::move(c));
}

std::optional<ZPoly> to_z(const KPoly& f) {
  std::vector<Integer> out;
  for (const auto& c : f.coeffs()) {
    if (!c.is_rational() || c.coeff(0).get_den() != 1) return std::nullopt;
    out.push_back(c.coeff(0).get_num());
  }
  return ZPoly(std::move(out));
}

std::optional<QPoly> to_q(const KPoly& f) {
  std::vector<Rational> out;
  for (const auto& c : f.coeffs()) {
    if (!c.is_rational()) return std::nullopt;
    out.push_back(c.coeff(0));
  }
  return QPoly(std::move(out));
}

FpPoly to_fp(const ZPoly& f, std::uint64_t p) {
  FpRing ring{p};
  std::vector<Fp> c;
  const Integer pz(static_cast<unsigned long>(p));
  for (const auto& x : f.coeffs()) {
    Integer r = x % pz;
    if (r < 0) r += pz;
    c.push_back(Fp::raw(r.get_ui(), p));
  }
  return FpPoly(ring, std::move(c));
}

}  // namespace hitbend
