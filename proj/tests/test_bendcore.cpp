#include <doctest.h>

#include <functional>
#include <random>

#include "support.hpp"

using namespace hitbend;
using namespace hitbend::testing;

namespace {

bool integral_by_entries(const NfMatrix& m) {
  for (const auto& x : m.data())
    for (const auto& c : x.coeffs())
      if (c.get_den() != 1) return false;
  return true;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::ParseError;
}

// t - 1 over the ring of m
KPoly t_minus_one(const NfMatrix& m) { return KPoly::linear(m.ring(), m.ring().one()); }

}  // namespace

TEST_CASE("integral power worked instance") {
  const NfMatrix m = mat(qf(), {{0, Rational(-1, 2)}, {2, 3}});
  const IntegralPower ip = integral_power(m);
  CHECK(ip.j == 3);
  CHECK(ip.power == mat(qf(), {{-3, -4}, {16, 21}}));
  CHECK(m * m * m == ip.power);
  CHECK(integral_power(mat(qf(), {{2, 1}, {1, 1}})).j == 1);
  // diag(2, 1/2) has a non-integral charpoly, so integral_power refuses it
  CHECK(code_of([] { integral_power(mat(qf(), {{2, 0}, {0, Rational(1, 2)}})); }) ==
        ErrorCode::PreconditionViolated);
}

TEST_CASE("integral power on random conjugates of companions") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<long> c(-4, 4), den(1, 3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 2;
    std::vector<Rational> co;
    for (std::size_t i = 0; i + 1 < n; ++i) co.emplace_back(c(rng));
    co.insert(co.begin(), Rational(n % 2 == 0 ? 1 : -1));  // det C = 1
    co.emplace_back(1);
    const NfMatrix comp = NfMatrix::companion(kpoly(qf(), co));
    // P = D * U with D diagonal of small rationals and U unimodular
    NfMatrix p = NfMatrix::identity(KRing{qf()}, n);
    for (int k = 0; k < 6; ++k) {
      NfMatrix e = NfMatrix::identity(KRing{qf()}, n);
      const std::size_t i = rng() % n, j = (i + 1 + rng() % (n - 1)) % n;
      e(i, j) = q(qf(), c(rng));
      p = p * e;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const long a = den(rng), b = den(rng);
      for (std::size_t j = 0; j < n; ++j) p(i, j) = p(i, j) * frac(a, b);
    }
    const NfMatrix m = p * comp * inverse(p);
    const IntegralPower ip = integral_power(m);
    NfMatrix acc = m;
    for (unsigned long k = 1; k < ip.j; ++k) {
      CHECK_FALSE(integral_by_entries(acc));
      acc = acc * m;
    }
    CHECK(acc == ip.power);
    CHECK(integral_by_entries(acc));
  }
}

TEST_CASE("unit-block bend on the Z[sqrt2] rank-4 instance") {
  const SurfaceRep rep = integral_seed(4);
  const NfMatrix& g = rep.images[0];
  const auto split = unit_normalized_split(g.charpoly());
  REQUIRE(split.has_value());
  const NfElement u = ab(1, 1);
  const BendCertificate cert = bend_matrix_unit_blocks(g, u, split->first, split->second);
  CHECK(cert.valid());
  CHECK(cert.construction == BendConstruction::UnitBlocks);
  CHECK(det(cert.a_prime) == ab(1, 0));
  CHECK(cert.a * g == g * cert.a);
  CHECK(is_integral(cert.a));

  // A' has u^2 twice and u^-2 * roots of f2
  const KPoly& f2 = split->second;
  const NfElement u2 = u * u, um2 = u2.inverse();
  const KPoly lin = KPoly::linear(g.ring(), u2);
  const KPoly scaled(g.ring(), {f2.coeff(0) * um2 * um2, f2.coeff(1) * um2, ab(1, 0)});
  CHECK(cert.a_prime.charpoly() == lin * lin * scaled);
  CHECK_FALSE(is_reciprocal(cert.a.charpoly()));

  const BendChecks again = recheck(cert.a, g);
  CHECK(again.centralizes);
  CHECK(again.integral);
  CHECK(again.det_one);
  CHECK(again.positive_distinct_spectrum);
  CHECK(again.non_reciprocal_charpoly);

  const BendCertificate back = bend_certificate_from_json(to_json(cert));
  CHECK(back.a == cert.a);
  CHECK(back.valid());

  CHECK(code_of([&] { bend_matrix_unit_blocks(g, ab(1, 0), split->first, split->second); }) ==
        ErrorCode::PreconditionViolated);
}

TEST_CASE("non-reciprocity is stable under powers") {
  const SurfaceRep rep = integral_seed(4);
  const NfMatrix& g = rep.images[0];
  const auto split = unit_normalized_split(g.charpoly());
  REQUIRE(split.has_value());
  const BendCertificate cert = bend_matrix_unit_blocks(g, ab(1, 1), split->first, split->second);
  for (const NfMatrix& base : {cert.a, g}) {
    const bool r = is_reciprocal(base.charpoly());
    NfMatrix acc = base;
    for (int j = 2; j <= 5; ++j) {
      acc = acc * base;
      CHECK(is_reciprocal(acc.charpoly()) == r);
    }
  }
  std::mt19937 rng(9);
  std::uniform_int_distribution<long> c(1, 6);
  for (int trial = 0; trial < 50; ++trial) {
    const Rational a = frac(c(rng), c(rng)), b = frac(c(rng), c(rng));
    const Rational third = 1 / (a * b);
    const NfMatrix d = mat(qf(), {{a, 0, 0}, {0, b, 0}, {0, 0, third}});
    const bool r = is_reciprocal(d.charpoly());
    NfMatrix acc = d;
    for (int j = 2; j <= 5; ++j) {
      acc = acc * d;
      CHECK(is_reciprocal(acc.charpoly()) == r);
    }
  }
}

TEST_CASE("identity-block bend over Q in rank 5") {
  const SurfaceRep rep = integral_seed(5);
  const NfMatrix& g = rep.images[0];
  const KPoly f = divmod(g.charpoly(), t_minus_one(g)).first;
  const auto split = unit_normalized_split(f);
  REQUIRE(split.has_value());
  const BendCertificate cert = bend_matrix_identity_blocks(g, split->first, split->second);
  CHECK(cert.valid());
  CHECK(cert.a_prime * g == g * cert.a_prime);
  const int g1 = split->first.degree() + 1;
  CHECK(cert.a_prime.trace() == q(qf(), g1) - split->second.coeff(split->second.degree() - 1));
  CHECK(eigenvalue_one_multiplicity(cert.a) == g1);
  CHECK(cert.one_multiplicity > 1);
  CHECK(code_of([&] { bend_matrix_identity_blocks(integral_seed(4).images[0], split->first, split->second); }) ==
        ErrorCode::PreconditionViolated);
}

TEST_CASE("irreducible route") {
  const SurfaceRep rep = integral_seed(4);
  const NfMatrix& g = rep.images[0];
  CHECK_FALSE(recheck(g, g).non_reciprocal_charpoly);
  // rank 3 over Q: charpoly (t - 1)(t^2 - ct + 1)
  const NfMatrix g3 = integral_seed(3).images[0];
  CHECK(code_of([&] { bend_matrix_irreducible(g3, 0); }) == ErrorCode::NotFoundWithinBound);
}

TEST_CASE("applying a bend") {
  const SurfaceRep rep = integral_seed(4);
  const auto split = unit_normalized_split(rep.images[0].charpoly());
  REQUIRE(split.has_value());
  const BendCertificate cert = bend_matrix_unit_blocks(rep.images[0], ab(1, 1), split->first, split->second);
  const SurfaceRep bent = apply_bend(rep, cert);
  CHECK(bent.relator_holds());
  CHECK(bent.integral());
  CHECK(bent.determinants_one());
  CHECK(bent.images[1] == rep.images[1] * cert.a);
  CHECK(bent.images[0] == rep.images[0]);
  CHECK(bent.images[2] == rep.images[2]);

  BendCertificate sq = cert;
  sq.a = cert.a * cert.a;
  sq.checks = recheck(sq.a, rep.images[0]);
  const SurfaceRep bent2 = apply_bend(rep, sq);
  CHECK(bent2.relator_holds());
  CHECK(bent2.images[1] != bent.images[1]);

  // the identity centralizes but certifies nothing, so it is refused
  BendCertificate id = cert;
  id.a = NfMatrix::identity(cert.a.ring(), 4);
  id.checks = recheck(id.a, rep.images[0]);
  CHECK_FALSE(id.valid());
  CHECK_THROWS_AS(apply_bend(rep, id), Error);
}
