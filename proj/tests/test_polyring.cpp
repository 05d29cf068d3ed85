#include <doctest.h>

#include <algorithm>
#include <random>

#include "support.hpp"

using namespace hitbend;
using namespace hitbend::testing;

namespace {

KPoly kz(const std::vector<long>& c, const FieldPtr& f = qf()) { return to_k(zpoly(c), f); }

// t^2 - c t + 1 over Q(sqrt2) with c = a + b w
KPoly quad(long a, long b) { return KPoly(KRing{k2()}, {ab(1, 0), -ab(a, b), ab(1, 0)}); }

}  // namespace

TEST_CASE("Sturm counts") {
  CHECK(sturm_count(kz({-2, 0, 1}), Endpoint::neg_inf(), Endpoint::pos_inf()) == 2);
  CHECK(sturm_count(kz({1, 0, 1}), Endpoint::neg_inf(), Endpoint::pos_inf()) == 0);
  CHECK(sturm_count(kz({-2, 0, 1}), Endpoint::at(0), Endpoint::pos_inf()) == 1);
  // t^2 - 2 w t + 1 has roots w +- 1, both positive
  CHECK(sturm_count(quad(0, 2), Endpoint::at(0), Endpoint::pos_inf()) == 2);
}

TEST_CASE("Sturm count matches constructed roots") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<long> r(-12, 12);
  for (int i = 0; i < 100; ++i) {
    std::vector<long> roots;
    while (roots.size() < 4) {
      long x = r(rng);
      if (std::find(roots.begin(), roots.end(), x) == roots.end()) roots.push_back(x);
    }
    KPoly f = kz({1});
    for (long x : roots) f *= kz({-x, 1});
    const long lo = r(rng), hi = lo + 6;
    const auto expected = std::count_if(roots.begin(), roots.end(), [&](long x) { return x > lo && x <= hi; });
    CHECK(sturm_count(f, Endpoint::at(lo), Endpoint::at(hi)) == expected);
  }
}

TEST_CASE("real-rooted positive spectrum") {
  CHECK(is_real_rooted_distinct_positive(kz({1, -3, 1})));
  CHECK_FALSE(is_real_rooted_distinct_positive(kz({-2, 0, 1})));
  CHECK_FALSE(is_real_rooted_distinct_positive(kz({1, -2, 1})));
  CHECK(is_real_rooted_distinct_positive(quad(0, 2)));
  CHECK_FALSE(is_real_rooted_distinct_positive(quad(0, 1)));
}

TEST_CASE("distinct absolute values") {
  CHECK(has_distinct_absolute_values(kz({-6, 11, -6, 1})));
  CHECK_FALSE(has_distinct_absolute_values(kz({-1, 0, 1})));
  CHECK_FALSE(has_distinct_absolute_values(kz({1, -1, 1})));
}

TEST_CASE("factor over the integers") {
  const auto f = factor_over_int(zpoly({-1, 0, 0, 0, 1}));
  REQUIRE(f.factors.size() == 3);
  CHECK(f.factors[0].first == zpoly({-1, 1}));
  CHECK(f.factors[1].first == zpoly({1, 1}));
  CHECK(f.factors[2].first == zpoly({1, 0, 1}));
  CHECK(f.product() == zpoly({-1, 0, 0, 0, 1}));

  const ZPoly g = zpoly({1, -3, 1}) * zpoly({1, -7, 1});
  const auto gf = factor_over_int(g);
  CHECK(gf.factors.size() == 2);
  CHECK(gf.product() == g);
  const auto sq = factor_over_int(zpoly({-2, 1}) * zpoly({-2, 1}) * zpoly({3}));
  REQUIRE(sq.factors.size() == 1);
  CHECK(sq.factors[0].second == 2);
  CHECK(sq.content == Integer(3));
}

TEST_CASE("factor over Q(sqrt2)") {
  const auto f = factor_over_field(kz({-2, 0, 1}, k2()));
  REQUIRE(f.size() == 2);
  for (const auto& [g, m] : f) {
    CHECK(g.degree() == 1);
    CHECK(m == 1);
  }
  CHECK(factor_over_field(kz({-3, 0, 1}, k2())).size() == 1);
  // t^2 - 2w t + 1 = (t - w - 1)(t - w + 1); t^2 - 10w t + 1 has discriminant 14^2
  const auto h = factor_over_field(quad(0, 2) * quad(0, 10));
  REQUIRE(h.size() == 4);
  for (const auto& [g, m] : h) CHECK(g.degree() == 1);
  // t^2 - w t + 1 has negative discriminant and stays irreducible
  CHECK(factor_over_field(quad(0, 1)).size() == 1);
  KPoly prod = kz({1}, k2());
  for (const auto& [g, m] : h) prod *= g;
  CHECK(prod == quad(0, 2) * quad(0, 10));
  // roots +-sqrt2 +-sqrt3: (t^2 - 2wt - 1)(t^2 + 2wt - 1) over Q(sqrt2), irreducible over Q
  CHECK(factor_over_field(kz({1, 0, -10, 0, 1}, k2())).size() == 2);
  CHECK(factor_over_field(kz({1, 0, -10, 0, 1})).size() == 1);
}

TEST_CASE("irreducible mod p by root scan") {
  CHECK(is_irreducible_mod_p(to_fp(zpoly({1, -1, 1}), 5)));
  CHECK_FALSE(is_irreducible_mod_p(to_fp(zpoly({1, -3, 1}), 5)));
  std::mt19937 rng(7);
  for (std::uint64_t p : {5ULL, 7ULL, 11ULL, 13ULL}) {
    std::uniform_int_distribution<long> c(0, static_cast<long>(p) - 1);
    for (int i = 0; i < 100; ++i) {
      const ZPoly f = zpoly({c(rng), c(rng), c(rng), 1});
      bool has_root = false;
      for (long x = 0; x < static_cast<long>(p); ++x) {
        Integer v = f.eval(Integer(x));
        if (mpz_divisible_ui_p(v.get_mpz_t(), p)) has_root = true;
      }
      CHECK(is_irreducible_mod_p(to_fp(f, p)) == !has_root);
    }
  }
}

TEST_CASE("reciprocal polynomials") {
  CHECK_FALSE(is_reciprocal(kz({-1, 5, -4, 1})));
  CHECK(is_reciprocal(kz({1, -3, 1})));
  CHECK(is_reciprocal(kz({-1, 3, -3, 1})));
  CHECK(is_reciprocal(quad(0, 2) * quad(0, 10)));
}

TEST_CASE("factor round trip on random products") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<long> c(-6, 6);
  std::uniform_int_distribution<int> deg(1, 3), count(1, 3);
  for (int i = 0; i < 500; ++i) {
    ZPoly f = zpoly({1});
    const int k = count(rng);
    for (int j = 0; j < k; ++j) {
      std::vector<long> co;
      const int d = deg(rng);
      for (int e = 0; e < d; ++e) co.push_back(c(rng));
      co.push_back(1 + (c(rng) + 6) % 2);
      f *= zpoly(co);
    }
    if (f.is_zero()) continue;
    const auto fac = factor_over_int(f);
    CHECK(fac.product() == f);
    for (const auto& [g, m] : fac.factors) {
      CHECK(m >= 1);
      CHECK(content(g) == Integer(1));
      if (g.degree() <= 3 && g.degree() >= 2) {
        // no rational root: any root r/s has r | g(0), s | lc
        bool rational_root = false;
        const long c0 = std::abs(g.coeff(0).get_si()), lc = std::abs(g.lc().get_si());
        for (long r = 0; r <= c0 && !rational_root; ++r)
          for (long s = 1; s <= lc && !rational_root; ++s)
            for (long sign : {1L, -1L}) {
              QPoly q = to_q(g);
              if (q.eval(Rational(sign * r, s)) == 0) rational_root = true;
            }
        CHECK_FALSE(rational_root);
      }
    }
  }
}

TEST_CASE("squarefree decomposition") {
  const KPoly f = kz({-1, 1}) * kz({-1, 1}) * kz({-1, 1}) * kz({1, 0, 1});
  const auto d = squarefree_decomposition(f);
  REQUIRE(d.size() == 2);
  CHECK(d[0].first == kz({1, 0, 1}));
  CHECK(d[0].second == 1);
  CHECK(d[1].first == kz({-1, 1}));
  CHECK(d[1].second == 3);
}
