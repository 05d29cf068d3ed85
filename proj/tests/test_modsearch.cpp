#include <doctest.h>

#include <functional>
#include <random>

#include "support.hpp"

using namespace hitbend;
using namespace hitbend::testing;

namespace {

FpMatrix random_fp(std::mt19937& rng, std::size_t n, std::uint32_t p) {
  std::uniform_int_distribution<std::uint32_t> d(0, p - 1);
  FpMatrix m(n, p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = d(rng);
  return m;
}

FpMatrix naive_product(const FpMatrix& a, const FpMatrix& b) {
  FpMatrix c(a.n(), a.p());
  for (std::size_t i = 0; i < a.n(); ++i)
    for (std::size_t j = 0; j < a.n(); ++j) {
      unsigned __int128 acc = 0;
      for (std::size_t k = 0; k < a.n(); ++k) acc += static_cast<std::uint64_t>(a.at(i, k)) * b.at(k, j);
      c.at(i, j) = static_cast<std::uint32_t>(acc % a.p());
    }
  return c;
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

}  // namespace

TEST_CASE("matmul kernels agree with a naive product") {
  std::mt19937 rng(77);
  for (std::uint32_t p : {5u, 7u, 47u, 65521u}) {
    for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 17u}) {
      const FpMatrix a = random_fp(rng, n, p), b = random_fp(rng, n, p);
      const FpMatrix ref = naive_product(a, b);
      CHECK(a.multiply_with(b, kernels::matmul_scalar) == ref);
#if defined(HITBEND_HAVE_AVX2)
      if (__builtin_cpu_supports("avx2")) CHECK(a.multiply_with(b, kernels::matmul_avx2) == ref);
#endif
#if defined(HITBEND_HAVE_NEON)
      CHECK(a.multiply_with(b, kernels::matmul_neon) == ref);
#endif
      CHECK(a * b == ref);
    }
  }
  // large moduli always take the scalar path
  const FpMatrix a = random_fp(rng, 6, 4294967291u), b = random_fp(rng, 6, 4294967291u);
  CHECK(a * b == naive_product(a, b));
  CHECK_FALSE(kernels::kernel_name(kernels::select_matmul(5)).empty());
}

TEST_CASE("F_p matrix algebra") {
  std::mt19937 rng(78);
  for (int t = 0; t < 50; ++t) {
    FpMatrix m = random_fp(rng, 4, 13);
    if (m.det() == 0) continue;
    CHECK(m * m.inverse() == FpMatrix::identity(4, 13));
    CHECK((m * m).det() == (m.det() * m.det()) % 13);
    CHECK(m.transpose().det() == m.det());
    CHECK(m.charpoly().degree() == 4);
  }
}

TEST_CASE("reduction mod p") {
  const SurfaceRep r4 = integral_seed(4);
  const ModPReduction red = reduce_mod_p(r4, 7, 3u);
  CHECK(red.gens.size() == 4);
  auto comm = [](const FpMatrix& x, const FpMatrix& y) { return x * y * x.inverse() * y.inverse(); };
  CHECK(comm(red.gens[0], red.gens[1]) * comm(red.gens[2], red.gens[3]) == FpMatrix::identity(4, 7));
  CHECK(field_residue(k2(), 7) == std::optional<std::uint32_t>(3u));
  CHECK_FALSE(field_residue(k2(), 5).has_value());
  CHECK(code_of([&] { reduce_mod_p(r4, 2, 0u); }) == ErrorCode::BadPrime);
  CHECK(code_of([&] { reduce_mod_p(r4, 7, 2u); }) == ErrorCode::InvalidResidue);
  CHECK(code_of([&] { reduce_mod_p(r4, 5, 1u); }) == ErrorCode::BadPrime);

  // reduction is a ring homomorphism on products and on words
  std::mt19937 rng(5);
  const auto words = reduced_words(4, 3);
  for (int t = 0; t < 40; ++t) {
    const Word& w = words[rng() % words.size()];
    const NfMatrix g = r4.image(w);
    FpMatrix acc = FpMatrix::identity(4, 7);
    for (const Letter& l : w) acc = acc * (l.exp > 0 ? red.gens[l.gen] : red.gens[l.gen].inverse());
    CHECK(reduce_mod_p(g, 7, 3u) == acc);
  }
  const ModPReduction z = reduce_mod_p(integral_seed(3), 11, std::nullopt);
  CHECK(z.gens[0].n() == 3);
}

TEST_CASE("irreducible word search in SL(2, F_5)") {
  FpMatrix x = FpMatrix::identity(2, 5), y = FpMatrix::identity(2, 5);
  x.at(0, 1) = 1;
  y.at(1, 0) = 1;
  const WordHit hit = search_irreducible_word({x, y}, SearchMode::Full, 4);
  FpMatrix g = FpMatrix::identity(2, 5);
  for (const Letter& l : hit.word) g = g * (l.exp > 0 ? (l.gen == 0 ? x : y) : (l.gen == 0 ? x : y).inverse());
  const std::uint32_t tr = (g.at(0, 0) + g.at(1, 1)) % 5;
  CHECK((tr == 1 || tr == 4));
  // discriminant tr^2 - 4 is a non-residue mod 5
  const std::uint32_t disc = (tr * tr + 5 - 4) % 5;
  CHECK((disc == 2 || disc == 3));
  CHECK(code_of([&] { search_irreducible_word({x, y}, SearchMode::Full, 0); }) == ErrorCode::NotFoundWithinBound);
}

TEST_CASE("one-split search accepts (t - 1) times an irreducible quadratic") {
  const ModPReduction z = reduce_mod_p(integral_seed(3), 7, std::nullopt);
  const WordHit hit = search_irreducible_word(z.gens, SearchMode::OneSplit, 3);
  const FpPoly& f = hit.charpoly;
  CHECK(f.degree() == 3);
  const FpRing r{7};
  CHECK(f.eval(r.one()).is_zero());
  const FpPoly cof = divmod(f, FpPoly::linear(r, r.one())).first;
  CHECK_FALSE(cof.eval(r.one()).is_zero());
  CHECK(is_irreducible_mod_p(cof));
}

TEST_CASE("Borel fraction bound") {
  CHECK(symplectic_order(1, 5) == 120);
  CHECK(symplectic_order(2, 3) == 51840);
  const BorelCount b = borel_fraction_check(1, 5);
  CHECK(b.reducible == 80);
  CHECK(b.total == 120);
  CHECK(b.bound_holds);
  for (std::uint32_t p : {7u, 11u}) {
    const BorelCount c = borel_fraction_check(1, p);
    CHECK(c.total == symplectic_order(1, p));
    CHECK(c.bound_holds);
  }
  CHECK(code_of([] { borel_fraction_check(3, 5, 1000); }) == ErrorCode::TooLarge);
}
