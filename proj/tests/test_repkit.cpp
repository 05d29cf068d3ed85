#include <doctest.h>

#include <random>

#include "support.hpp"

using namespace hitbend;
using namespace hitbend::testing;

namespace {

// Row i of the symmetric power holds (a + b y)^{n-1-i} (c + d y)^i in powers of y.
NfMatrix sym_power_oracle(const NfMatrix& g, int n) {
  const KRing ring = g.ring();
  const KPoly r0(ring, {g(0, 0), g(0, 1)}), r1(ring, {g(1, 0), g(1, 1)});
  NfMatrix out(ring, static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    KPoly p = KPoly::constant(ring, ring.one());
    for (int k = 0; k < n - 1 - i; ++k) p *= r0;
    for (int k = 0; k < i; ++k) p *= r1;
    for (int j = 0; j < n; ++j) out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = p.coeff(j);
  }
  return out;
}

}  // namespace

TEST_CASE("triangle seed entries") {
  const auto s = triangle_seed();
  CHECK(s[0] == mat(k2(), {{0, -1}, {1, 1}}));
  CHECK(det(s[1]) == ab(1, 0));
  const NfMatrix id = NfMatrix::identity(s[0].ring(), 2);
  CHECK(s[0].pow(3) == -id);
  CHECK(s[1].pow(4) == -id);
  CHECK(s[2].pow(4) == -id);
  const auto chk = verify_triangle_seed(s);
  CHECK(chk.alpha_cubed_minus_identity);
  CHECK(chk.beta_fourth_minus_identity);
  CHECK(chk.gamma_fourth_minus_identity);
  // the displayed gamma is alpha*beta, so the literal product alpha*beta*gamma is gamma^2
  CHECK(s[0] * s[1] == s[2]);
  CHECK_FALSE(chk.product_plus_minus_identity);
}

TEST_CASE("symmetric powers") {
  const NfMatrix u = mat(qf(), {{1, 1}, {0, 1}});
  CHECK(tau_n(u, 3) == mat(qf(), {{1, 2, 1}, {0, 1, 1}, {0, 0, 1}}));
  CHECK(tau_n(u, 2) == u);
  const NfMatrix d = mat(qf(), {{2, 0}, {0, Rational(1, 2)}});
  for (int n = 2; n <= 6; ++n) {
    const NfMatrix t = tau_n(d, n);
    for (int i = 0; i < n; ++i) {
      CHECK(t(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) == q(qf(), 2).pow(n - 2 * i - 1));
    }
  }
}

TEST_CASE("tau_n is a homomorphism and matches the expansion oracle") {
  std::mt19937 rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const NfMatrix g = random_sl2(rng), h = random_sl2(rng);
    for (int n = 2; n <= 6; ++n) {
      CHECK(tau_n(g * h, n) == tau_n(g, n) * tau_n(h, n));
      if (trial < 20) CHECK(tau_n(g, n) == sym_power_oracle(g, n));
    }
  }
}

TEST_CASE("Fuchsian rep and its symmetric powers satisfy the relator") {
  const SurfaceRep& rep = fuchsian();
  CHECK(rep.relator_holds());
  CHECK(rep.determinants_one());
  CHECK(rep.images[0].trace().sign() > 0);
  for (int n = 2; n <= 6; ++n) CHECK_NOTHROW(tau_n(rep, n).verify());
}

TEST_CASE("twisting by a sign character") {
  const SurfaceRep r4 = tau_n(fuchsian(), 4);
  const SurfaceRep same = twist_by_character(r4, {1, 1, 1, 1});
  CHECK(same.images == r4.images);
  const SurfaceRep flipped = twist_by_character(r4, {-1, 1, 1, 1});
  CHECK(flipped.relator_holds());
  CHECK(flipped.images[0] == -r4.images[0]);
  try {
    twist_by_character(tau_n(fuchsian(), 3), {-1, 1, 1, 1});
    FAIL("expected a sign-flip error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OddDimensionSignFlip);
  }
}

TEST_CASE("integralization") {
  for (int n = 3; n <= 6; ++n) {
    const SurfaceRep rep = integral_seed(n);
    CHECK(rep.integral());
    CHECK(rep.relator_holds());
    CHECK(rep.determinants_one());
    CHECK(rep.field->is_rationals() == (n % 2 == 1));
  }
  // integral input is left alone
  const SurfaceRep z3 = integral_seed(3);
  const auto again = integralize(z3, Integer(1000));
  CHECK(again.p.is_identity());
  // conjugating by diag(1, 2, 4) and integralizing recovers an integral form
  NfMatrix d = NfMatrix::identity(z3.images[0].ring(), 3);
  d(1, 1) = q(qf(), 2);
  d(2, 2) = q(qf(), 4);
  std::vector<NfMatrix> conj;
  for (const auto& g : z3.images) conj.push_back(d * g * inverse(d));
  const SurfaceRep bad = z3.derived("conjugate", Json::object(), conj);
  REQUIRE_FALSE(bad.integral());
  const auto fixed = integralize(bad, Integer(1000));
  CHECK(fixed.rep.integral());
  CHECK(fixed.rep.relator_holds());
  for (std::size_t i = 0; i < conj.size(); ++i)
    CHECK(fixed.p * conj[i] * inverse(fixed.p) == fixed.rep.images[i]);
}

TEST_CASE("descent to rational entries") {
  const SurfaceRep r3 = descend_to_rationals(tau_n(fuchsian(), 3));
  CHECK(r3.field->is_rationals());
  CHECK(r3.relator_holds());
  // traces are conjugation invariant
  const SurfaceRep orig = tau_n(fuchsian(), 3);
  for (std::size_t i = 0; i < 4; ++i) CHECK(r3.images[i].trace().coeff(0) == orig.images[i].trace().coeff(0));
}

TEST_CASE("loxodromy") {
  CHECK(loxodromy_check(tau_n(fuchsian(), 3), 2).pass);
  CHECK(loxodromy_check(fuchsian(), 0).pass);
  const auto s = triangle_seed();
  const auto rep = loxodromy_check(Presentation::triangle(3, 4, 4), {s[0], s[1]}, 2);
  CHECK_FALSE(rep.pass);
  REQUIRE(rep.violator.has_value());
  CHECK(rep.violator->size() == 1);
  CHECK(rep.violator->at(0).gen == 0);
}

TEST_CASE("reduced words in shortlex order") {
  const auto w = reduced_words(4, 2);
  CHECK(w.size() == 8 + 8 * 7);
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    CHECK((w[i].size() < w[i + 1].size() || (w[i].size() == w[i + 1].size() && word_less(w[i], w[i + 1]))));
  for (const auto& x : w) CHECK(free_reduce(x) == x);
}

TEST_CASE("rep serialization round trip") {
  const SurfaceRep r = integral_seed(4);
  const SurfaceRep back = surface_rep_from_json(to_json(r));
  CHECK(back.images == r.images);
  CHECK(rep_hash(back) == rep_hash(r));
}

TEST_CASE("HNN relation holds on matrix images") {
  const SurfaceRep& rep = fuchsian();
  const auto h = HnnSplitting::along_a1(2);
  const NfMatrix lhs = rep.image(concat(concat(h.stable_letter, h.curve), inverse(h.stable_letter)));
  CHECK(lhs == rep.image(h.gamma1));
}

TEST_CASE("trace of a symmetric power of a diagonal matrix") {
  for (long lam : {2L, 3L, 5L}) {
    const NfMatrix d = mat(qf(), {{lam, 0}, {0, Rational(1, lam)}});
    for (int n = 2; n <= 6; ++n) {
      Rational sum = 0;
      for (int i = 0; i < n; ++i) {
        const int e = n - 1 - 2 * i;
        Rational term = 1;
        for (int k = 0; k < std::abs(e); ++k) term *= e > 0 ? Rational(lam) : Rational(1, lam);
        sum += term;
      }
      CHECK(tau_n(d, n).trace() == NfElement(qf(), sum));
    }
  }
}
