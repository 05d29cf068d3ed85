#include <doctest.h>

#include <random>

#include "support.hpp"

using namespace hitbend;
using namespace hitbend::testing;

namespace {

NfMatrix random_invertible(std::mt19937& rng, const FieldPtr& f, std::size_t n) {
  std::uniform_int_distribution<long> c(-3, 3), d(1, 3);
  KRing ring{f};
  for (;;) {
    NfMatrix p(ring, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) p(i, j) = NfElement(f, frac(c(rng), d(rng)));
    if (!det(p).is_zero()) return p;
  }
}

bool is_blockdiag_companion(const NfMatrix& m, const std::vector<KPoly>& blocks) {
  std::vector<NfMatrix> comps;
  for (const auto& b : blocks) comps.push_back(NfMatrix::companion(b));
  return m == NfMatrix::block_diag(m.ring(), comps);
}

}  // namespace

TEST_CASE("charpoly examples") {
  const auto seed = triangle_seed();
  const KPoly cp = seed[1].charpoly();
  CHECK(cp == KPoly(KRing{k2()}, {ab(1, 0), ab(0, -1), ab(1, 0)}));
  CHECK(det(NfMatrix::identity(KRing{qf()}, 3)) == q(qf(), 1));
  CHECK(mat(qf(), {{2, 0}, {0, Rational(1, 2)}}).charpoly() == kpoly(qf(), {1, Rational(-5, 2), 1}));
}

TEST_CASE("Frobenius form examples") {
  const NfMatrix m = mat(qf(), {{0, Rational(-1, 2)}, {2, 3}});
  const auto ff = frobenius_form(m);
  REQUIRE(ff.blocks.size() == 1);
  CHECK(ff.blocks[0] == kpoly(qf(), {1, -3, 1}));
  CHECK(ff.p * m * inverse(ff.p) == NfMatrix::companion(ff.blocks[0]));

  const auto id = frobenius_form(NfMatrix::identity(KRing{qf()}, 2));
  REQUIRE(id.blocks.size() == 2);
  CHECK(id.blocks[0] == kpoly(qf(), {-1, 1}));
  CHECK(id.blocks[1] == kpoly(qf(), {-1, 1}));

  // three distinct eigenvalues: one invariant factor; the two-block split is a coprime split
  const NfMatrix d = mat(qf(), {{1, 0, 0}, {0, 2, 0}, {0, 0, Rational(1, 2)}});
  const auto fd = frobenius_form(d);
  REQUIRE(fd.blocks.size() == 1);
  CHECK(fd.blocks[0] == kpoly(qf(), {-1, 1}) * kpoly(qf(), {1, Rational(-5, 2), 1}));
  const auto split = split_by_coprime_factors(d, {kpoly(qf(), {-1, 1}), kpoly(qf(), {1, Rational(-5, 2), 1})});
  REQUIRE(split.blocks.size() == 2);
  CHECK(split.blocks[0].rows() == 1);
  CHECK(split.blocks[1].charpoly() == kpoly(qf(), {1, Rational(-5, 2), 1}));
  CHECK(block_assemble(split.p, split.blocks) == d);
}

TEST_CASE("Frobenius form round trip on random conjugates") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<long> c(-3, 3);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const FieldPtr f = trial % 2 ? k2() : qf();
    // block diagonal with a repeated block sometimes, so several invariant factors occur
    NfMatrix base(KRing{f}, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) base(i, j) = q(f, c(rng));
    if (trial % 4 == 0) base = NfMatrix::scalar(KRing{f}, n, q(f, c(rng)));
    const NfMatrix p = random_invertible(rng, f, n);
    const NfMatrix m = inverse(p) * base * p;
    const auto ff = frobenius_form(m);
    CHECK(is_blockdiag_companion(ff.p * m * inverse(ff.p), ff.blocks));
    for (std::size_t i = 0; i + 1 < ff.blocks.size(); ++i) CHECK(rem(ff.blocks[i + 1], ff.blocks[i]).is_zero());
    KPoly prod = kpoly(f, {1});
    for (const auto& b : ff.blocks) prod *= b;
    CHECK(prod == m.charpoly());
    CHECK(m.charpoly() == base.charpoly());
  }
}

TEST_CASE("centralizer dimensions") {
  CHECK(centralizer_space(NfMatrix::identity(KRing{qf()}, 3)).size() == 9);
  const NfMatrix c = NfMatrix::companion(kpoly(qf(), {1, -3, 1}));
  const auto basis = centralizer_space(c);
  CHECK(basis.size() == 2);
  for (const auto& x : basis) CHECK(x * c == c * x);

  // distinct eigenvalues: centralizer is span{I, M, M^2}
  const NfMatrix m = mat(qf(), {{1, 2, 0}, {0, 3, 1}, {1, 0, 5}});
  REQUIRE(is_squarefree(m.charpoly()));
  const auto cm = centralizer_space(m);
  CHECK(cm.size() == 3);
  const NfMatrix m2 = m * m;
  for (const auto& x : cm) {
    // x lies in span{I, M, M^2}: the 10 x 9 system has rank 3
    QMatrix stacked(QRing{}, 4, 9);
    const std::array<NfMatrix, 4> rows{NfMatrix::identity(m.ring(), 3), m, m2, x};
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t k = 0; k < 9; ++k) stacked(r, k) = rows[r](k / 3, k % 3).coeff(0);
    CHECK(rank(stacked) == 3);
  }
}

TEST_CASE("invariant forms of tau_3 on SL(2,Z)") {
  const NfMatrix x = mat(qf(), {{1, 1}, {0, 1}});
  const NfMatrix y = mat(qf(), {{1, 0}, {1, 1}});
  const auto fs = invariant_form_space({tau_n(x, 3), tau_n(y, 3)});
  CHECK(fs.dim() == 1);
  CHECK(fs.symmetric.size() == 1);
  const NfMatrix j = fs.symmetric[0];
  CHECK(j == j.transpose());
  for (const auto& g : {tau_n(x, 3), tau_n(y, 3)}) CHECK(g.transpose() * j * g == j);

  const auto f4 = invariant_form_space({tau_n(x, 4), tau_n(y, 4)});
  CHECK(f4.alternating.size() == 1);
  CHECK(f4.symmetric.empty());
  CHECK(invariant_form_space({NfMatrix::identity(KRing{qf()}, 3)}).dim() == 9);
}

TEST_CASE("block assembly") {
  KRing r{qf()};
  const NfMatrix c = NfMatrix::companion(kpoly(qf(), {1, -3, 1}));
  const NfMatrix one = NfMatrix::identity(r, 1);
  const NfMatrix bd = NfMatrix::block_diag(r, {one, c});
  CHECK(block_assemble(NfMatrix::identity(r, 3), {one, c}) == bd);

  std::mt19937 rng(31);
  const NfMatrix p = random_invertible(rng, qf(), 3);
  const NfMatrix two = NfMatrix::scalar(r, 1, q(qf(), 2));
  const NfMatrix pc = c * c + c.scaled(q(qf(), 2));  // polynomial in C
  const NfMatrix a = block_assemble(p, {two, pc});
  CHECK(det(a) == det(two) * det(pc));
  const NfMatrix g = block_assemble(p, {one, c});
  CHECK(a * g == g * a);
}

TEST_CASE("charpoly is a similarity invariant") {
  std::mt19937 rng(41);
  std::uniform_int_distribution<long> c(-4, 4);
  for (int t = 0; t < 50; ++t) {
    NfMatrix m(KRing{k2()}, 4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) m(i, j) = ab(c(rng), c(rng));
    const NfMatrix p = random_invertible(rng, k2(), 4);
    CHECK((p * m * inverse(p)).charpoly() == m.charpoly());
    CHECK(m.charpoly().coeff(0) == det(m));  // det(tI - M) at 0 = det(-M) = det M for n = 4
  }
}

TEST_CASE("integrality and denominators") {
  const NfMatrix m = mat(qf(), {{0, Rational(-1, 2)}, {2, Rational(1, 3)}});
  CHECK_FALSE(is_integral(m));
  CHECK(denominator(m) == Integer(6));
  CHECK(is_integral(from_ints(k2(), {{1, 2}, {3, 4}})));
}
