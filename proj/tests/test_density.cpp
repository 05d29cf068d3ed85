#include <doctest.h>

#include "support.hpp"

using namespace hitbend;
using namespace hitbend::testing;

namespace {

NfMatrix diag_q(const std::vector<Rational>& d) {
  NfMatrix m(KRing{qf()}, d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = NfElement(qf(), d[i]);
  return m;
}

ClosureCertificate cert_of(ClosureClass c) {
  ClosureCertificate x;
  x.cls = c;
  return x;
}

SurfaceRep bent_rank4() {
  const SurfaceRep rep = integral_seed(4);
  const auto split = unit_normalized_split(rep.images[0].charpoly());
  return apply_bend(rep, bend_matrix_unit_blocks(rep.images[0], ab(1, 1), split->first, split->second));
}

}  // namespace

TEST_CASE("principal SL2 spectral test") {
  const auto t = principal_sl2_test(diag_q({8, 2, Rational(1, 2), Rational(1, 8)}));
  CHECK(t.consistent);
  REQUIRE(t.s.has_value());
  CHECK(*t.s == q(qf(), 5, 2));
  CHECK_FALSE(t.squared);

  CHECK_FALSE(principal_sl2_test(diag_q({4, 2, Rational(1, 2), Rational(1, 4)})).consistent);
  CHECK_FALSE(principal_sl2_test(diag_q({1, 1, 2, Rational(1, 2)})).consistent);

  // odd rank: only s^2 is determined
  // lambda = sqrt3 gives exponents 4, 2, 0, -2, -4 on lambda; s^2 = (sqrt3 + 1/sqrt3)^2 = 16/3
  const auto odd = principal_sl2_test(diag_q({9, 3, 1, Rational(1, 3), Rational(1, 9)}));
  CHECK(odd.consistent);
  CHECK(odd.squared);
  REQUIRE(odd.s.has_value());
  CHECK(*odd.s == q(qf(), 16, 3));
}

TEST_CASE("principal charpoly model matches symmetric powers") {
  for (int n = 2; n <= 6; ++n) {
    const auto model = principal_charpoly_in_s(n);
    REQUIRE(model.size() == static_cast<std::size_t>(n + 1));
    for (long lam : {2L, 3L, 7L}) {
      const NfMatrix d = mat(qf(), {{lam, 0}, {0, Rational(1, lam)}});
      const KPoly cp = tau_n(d, n).charpoly();
      const Rational s = Rational(lam) + Rational(1, lam);
      for (int k = 0; k <= n; ++k) CHECK(NfElement(qf(), model[static_cast<std::size_t>(k)].eval(s)) == cp.coeff(k));
    }
  }
}

TEST_CASE("closure of symmetric-power seeds") {
  const ClosureCertificate c4 = certify_closure(integral_seed(4), 2);
  CHECK(c4.cls == ClosureClass::PrincipalSL2);
  CHECK(c4.form_space_dim == 1);
  REQUIRE(c4.form.has_value());
  CHECK(c4.form->transpose() == -*c4.form);
  CHECK(form_preserved(integral_seed(4).images, *c4.form));
  CHECK_FALSE(c4.refutation.has_value());

  const ClosureCertificate c3 = certify_closure(integral_seed(3), 2);
  CHECK(c3.cls == ClosureClass::PrincipalSL2);
  REQUIRE(c3.form.has_value());
  CHECK(c3.form->transpose() == *c3.form);

  CHECK(certify_closure(fuchsian(), 2).cls == ClosureClass::FullSL);
  CHECK_THROWS_AS(certify_closure(tau_n(fuchsian(), 7), 2), Error);
  try {
    certify_closure(tau_n(fuchsian(), 7), 2);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::G2Unsupported);
  }
}

TEST_CASE("closure of the bent rank-4 rep") {
  const SurfaceRep bent = bent_rank4();
  const ClosureCertificate c = certify_closure(bent, 2);
  CHECK(c.cls == ClosureClass::FullSL);
  CHECK(c.form_space_dim == 0);
  REQUIRE(c.refutation.has_value());
  CHECK_FALSE(principal_sl2_test(bent.image(*c.refutation)).consistent);
  CHECK(invariant_form_space(bent.images).dim() == 0);
  // the bend does not preserve the old symplectic form
  const auto old = certify_closure(integral_seed(4), 2);
  CHECK_FALSE(form_preserved(bent.images, *old.form));
  CHECK(closure_strictly_increased(old, c));
}

TEST_CASE("closure order") {
  using C = ClosureClass;
  CHECK(closure_strictly_increased(cert_of(C::PrincipalSL2), cert_of(C::FullSL)));
  CHECK_FALSE(closure_strictly_increased(cert_of(C::Symplectic), cert_of(C::Symplectic)));
  CHECK_FALSE(closure_strictly_increased(cert_of(C::FullSL), cert_of(C::Symplectic)));
  CHECK(closure_strictly_increased(cert_of(C::PrincipalSL2), cert_of(C::SplitOrthogonal)));
  CHECK_THROWS_AS(closure_strictly_increased(cert_of(C::Symplectic), cert_of(C::SplitOrthogonal)), Error);
}

TEST_CASE("non-reciprocal element forces an empty form space") {
  const SurfaceRep bent = bent_rank4();
  bool any_nonreciprocal = false;
  for (const Word& w : reduced_words(4, 2)) {
    const KPoly cp = bent.image(w).charpoly();
    if (!is_reciprocal(cp)) any_nonreciprocal = true;
  }
  CHECK(any_nonreciprocal);
  CHECK(invariant_form_space(bent.images).dim() == 0);
}
