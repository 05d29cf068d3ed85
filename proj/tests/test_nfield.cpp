#include <doctest.h>

#include <cmath>
#include <random>

#include "support.hpp"

using namespace hitbend;
using namespace hitbend::testing;

TEST_CASE("unit arithmetic in Q(sqrt2)") {
  const NfElement u = ab(1, 1);
  CHECK(u * ab(-1, 1) == ab(1, 0));
  CHECK(u.inverse() == ab(-1, 1));
  CHECK(ab(1, -1).sign() == -1);
  CHECK(u.norm() == Rational(-1));
  CHECK(ab(0, 1).norm() == Rational(-2));
  CHECK(ab(0, 1) * ab(0, 1) == ab(2, 0));
}

TEST_CASE("inverse of zero is an error") {
  CHECK_THROWS_AS(NfElement(k2()).inverse(), Error);
}

TEST_CASE("fundamental unit search") {
  CHECK(fundamental_unit_search(k2(), 10) == ab(1, 1));
  try {
    fundamental_unit_search(k2(), 0);
    FAIL("expected NotFoundWithinBound");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotFoundWithinBound);
  }
  CHECK_THROWS_AS(fundamental_unit_search(qf(), 10), Error);
}

TEST_CASE("field axioms and embedding on random elements") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> c(-20, 20), d(1, 9);
  const double r2 = std::sqrt(2.0);
  for (int i = 0; i < 300; ++i) {
    const NfElement x(k2(), std::vector<Rational>{frac(c(rng), d(rng)), frac(c(rng), d(rng))});
    const NfElement y(k2(), std::vector<Rational>{frac(c(rng), d(rng)), frac(c(rng), d(rng))});
    CHECK(x * y == y * x);
    CHECK((x + y) * x == x * x + y * x);
    // norm is a^2 - 2 b^2, multiplicative
    const Rational a = x.coeff(0), b = x.coeff(1);
    CHECK(x.norm() == a * a - 2 * b * b);
    CHECK((x * y).norm() == x.norm() * y.norm());
    CHECK(x.trace() == 2 * a);
    if (!x.is_zero()) {
      CHECK(x * x.inverse() == ab(1, 0));
      const double v = a.get_d() + b.get_d() * r2;
      if (std::abs(v) > 1e-9) CHECK(x.sign() == (v > 0 ? 1 : -1));
      CHECK(std::abs(x.to_double() - v) < 1e-9 * (1 + std::abs(v)));
    } else {
      CHECK(x.sign() == 0);
    }
    CHECK(x.conjugate() * x == NfElement(k2(), x.norm()));
  }
}

TEST_CASE("denominator and integrality") {
  const NfElement x(k2(), std::vector<Rational>{Rational(1, 6), Rational(3, 4)});
  CHECK(x.denominator() == Integer(12));
  CHECK_FALSE(x.is_integral());
  CHECK((x * Rational(12)).is_integral());
}

TEST_CASE("rational_det against cofactor expansion") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<long> c(-5, 5);
  for (int i = 0; i < 50; ++i) {
    std::vector<std::vector<Rational>> m(3, std::vector<Rational>(3));
    for (auto& row : m)
      for (auto& x : row) x = frac(c(rng), 1 + (c(rng) + 5) % 3);
    const Rational cof = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    CHECK(rational_det(m) == cof);
  }
}
