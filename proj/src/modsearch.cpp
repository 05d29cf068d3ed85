#include "hitbend/modsearch.hpp"

#include <deque>
#include <unordered_set>

namespace hitbend {

namespace {

std::uint32_t mod_of(const Integer& z, std::uint32_t p) {
  Integer r = z % p;
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r.get_ui());
}

std::uint32_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint32_t p) {
  std::uint64_t r = 1 % p;
  b %= p;
  while (e) {
    if (e & 1U) r = r * b % p;
    b = b * b % p;
    e >>= 1U;
  }
  return static_cast<std::uint32_t>(r);
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  require(a % p != 0, ErrorCode::DivisionByZero, "inverse of 0 mod p");
  return pow_mod(a, p - 2, p);
}

FpMatrix symplectic_form(int k, std::uint32_t p) {
  const auto n = static_cast<std::size_t>(2 * k);
  FpMatrix j(n, p);
  for (std::size_t i = 0; i < static_cast<std::size_t>(k); ++i) {
    j.at(i, i + static_cast<std::size_t>(k)) = 1;
    j.at(i + static_cast<std::size_t>(k), i) = p - 1;
  }
  return j;
}

}  // namespace

// ------------------------------------------------------------------ FpMatrix

FpMatrix::FpMatrix(std::size_t n, std::uint32_t p) : n_(n), p_(p), e_(n * n, 0) {}

FpMatrix FpMatrix::identity(std::size_t n, std::uint32_t p) {
  FpMatrix m(n, p);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1 % p;
  return m;
}

FpMatrix FpMatrix::multiply_with(const FpMatrix& o, kernels::MatmulFn fn) const {
  require(n_ == o.n_ && p_ == o.p_, ErrorCode::SizeMismatch, "FpMatrix shapes or moduli differ");
  FpMatrix c(n_, p_);
  fn(e_.data(), o.e_.data(), c.e_.data(), n_, p_);
  return c;
}

FpMatrix FpMatrix::operator*(const FpMatrix& o) const { return multiply_with(o, kernels::select_matmul(p_)); }

FpMatrix FpMatrix::transpose() const {
  FpMatrix t(n_, p_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t.at(j, i) = at(i, j);
  return t;
}

FpMatrix FpMatrix::inverse() const {
  const std::size_t n = n_;
  std::vector<std::uint64_t> a(n * 2 * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i * 2 * n + j] = at(i, j);
    a[i * 2 * n + n + i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv * 2 * n + col] == 0) ++piv;
    require(piv < n, ErrorCode::Singular, "singular matrix mod p");
    for (std::size_t j = 0; j < 2 * n; ++j) std::swap(a[col * 2 * n + j], a[piv * 2 * n + j]);
    const std::uint64_t inv = inv_mod(static_cast<std::uint32_t>(a[col * 2 * n + col]), p_);
    for (std::size_t j = 0; j < 2 * n; ++j) a[col * 2 * n + j] = a[col * 2 * n + j] * inv % p_;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r * 2 * n + col] == 0) continue;
      const std::uint64_t f = a[r * 2 * n + col];
      for (std::size_t j = 0; j < 2 * n; ++j)
        a[r * 2 * n + j] = (a[r * 2 * n + j] + (p_ - f) * a[col * 2 * n + j]) % p_;
    }
  }
  FpMatrix out(n, p_);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.at(i, j) = static_cast<std::uint32_t>(a[i * 2 * n + n + j]);
  return out;
}

std::uint32_t FpMatrix::det() const {
  FpDenseMatrix m(FpRing{p_}, n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m(i, j) = Fp::raw(at(i, j), p_);
  return static_cast<std::uint32_t>(hitbend::det(m).value());
}

FpPoly FpMatrix::charpoly() const {
  FpDenseMatrix m(FpRing{p_}, n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m(i, j) = Fp::raw(at(i, j), p_);
  return m.charpoly();
}

std::string FpMatrix::key() const {
  return std::string(reinterpret_cast<const char*>(e_.data()), e_.size() * sizeof(std::uint32_t));
}

// ----------------------------------------------------------------- reduction

std::optional<std::uint32_t> field_residue(const FieldPtr& field, std::uint32_t p) {
  for (std::uint32_t r = 0; r < p; ++r) {
    std::uint64_t acc = 0;
    const auto& mp = field->min_poly();
    for (auto it = mp.rbegin(); it != mp.rend(); ++it) acc = (acc * r + mod_of(*it, p)) % p;
    if (acc == 0) return r;
  }
  return std::nullopt;
}

FpMatrix reduce_mod_p(const NfMatrix& m, std::uint32_t p, std::optional<std::uint32_t> residue) {
  const FieldPtr& field = m.ring().field;
  FpMatrix out(m.rows(), p);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const NfElement& x = m(i, j);
      require(x.is_integral(), ErrorCode::IntegralityViolated, "reduction needs integral entries");
      std::uint64_t acc = 0;
      const std::uint64_t w = field->degree() > 1 ? *residue : 0;
      for (int k = field->degree() - 1; k >= 0; --k) acc = (acc * w + mod_of(x.coeff(k).get_num(), p)) % p;
      out.at(i, j) = static_cast<std::uint32_t>(acc);
    }
  return out;
}

ModPReduction reduce_mod_p(const SurfaceRep& rep, std::uint32_t p, std::optional<std::uint32_t> residue) {
  require(p >= 5 && is_probable_prime(p), ErrorCode::BadPrime, "need a prime p >= 5, got " + std::to_string(p));
  require(rep.integral(), ErrorCode::IntegralityViolated, "reduction needs an integral representation");
  const FieldPtr& field = rep.field;
  require(field->degree() <= 2, ErrorCode::UnsupportedDegree, "fields of degree > 2 are not supported");
  if (field->degree() == 2) {
    const auto& mp = field->min_poly();
    const Integer disc = mp[1] * mp[1] - 4 * mp[0];
    require(disc % p != 0, ErrorCode::BadPrime, "p divides the discriminant");
    require(field_residue(field, p).has_value(), ErrorCode::BadPrime,
            "p is inert in " + field->name() + "; only split primes are supported");
    require(residue.has_value(), ErrorCode::InvalidResidue, "a root of the minimal polynomial mod p is required");
    std::uint64_t acc = 0;
    for (auto it = mp.rbegin(); it != mp.rend(); ++it) acc = (acc * (*residue % p) + mod_of(*it, p)) % p;
    require(acc == 0, ErrorCode::InvalidResidue,
            std::to_string(*residue) + " is not a root of the minimal polynomial mod " + std::to_string(p));
  }
  ModPReduction out;
  out.p = p;
  out.residue = field->degree() == 2 ? std::optional<std::uint32_t>(*residue % p) : std::nullopt;
  for (const auto& m : rep.images) out.gens.push_back(reduce_mod_p(m, p, out.residue));
  std::vector<FpMatrix> inv;
  for (const auto& g : out.gens) inv.push_back(g.inverse());
  FpMatrix rel = FpMatrix::identity(static_cast<std::size_t>(rep.n), p);
  const Presentation pres = rep.presentation();
  for (const Letter& l : pres.relators[0])
    rel = rel * (l.exp > 0 ? out.gens[static_cast<std::size_t>(l.gen)] : inv[static_cast<std::size_t>(l.gen)]);
  require(rel == FpMatrix::identity(static_cast<std::size_t>(rep.n), p), ErrorCode::RelatorBroken,
          "relator does not reduce to the identity");
  return out;
}

// -------------------------------------------------------------------- search

bool charpoly_matches(const FpPoly& f, SearchMode mode) {
  if (mode == SearchMode::Full) return is_irreducible_mod_p(f);
  const FpRing& ring = f.ring();
  const FpPoly lin = FpPoly::linear(ring, ring.one());
  auto [q, r] = divmod(f, lin);
  if (!r.is_zero()) return false;
  if (divmod(q, lin).second.is_zero()) return false;
  return is_irreducible_mod_p(q);
}

WordHit search_irreducible_word(const std::vector<FpMatrix>& gens, SearchMode mode, int word_bound) {
  require(!gens.empty(), ErrorCode::PreconditionViolated, "no generators");
  std::vector<FpMatrix> letters;
  for (const auto& g : gens) {
    letters.push_back(g);
    letters.push_back(g.inverse());
  }
  struct Node {
    Word word;
    FpMatrix m;
  };
  std::unordered_set<std::string> seen{FpMatrix::identity(gens[0].n(), gens[0].p()).key()};
  std::deque<Node> queue{{Word{}, FpMatrix::identity(gens[0].n(), gens[0].p())}};
  std::size_t visited = 0;
  while (!queue.empty()) {
    Node node = std::move(queue.front());
    queue.pop_front();
    if (static_cast<int>(node.word.size()) >= word_bound) continue;
    for (std::size_t x = 0; x < letters.size(); ++x) {
      const Letter l{static_cast<int>(x / 2), (x % 2) ? -1 : 1};
      if (!node.word.empty() && node.word.back().gen == l.gen && node.word.back().exp == -l.exp) continue;
      FpMatrix m = node.m * letters[x];
      if (!seen.insert(m.key()).second) continue;
      ++visited;
      Word w = node.word;
      w.push_back(l);
      FpPoly cp = m.charpoly();
      if (charpoly_matches(cp, mode)) return {std::move(w), std::move(cp), visited};
      queue.push_back({std::move(w), std::move(m)});
    }
  }
  fail(ErrorCode::NotFoundWithinBound,
       "no word of length <= " + std::to_string(word_bound) + " with the requested charpoly shape");
}

// --------------------------------------------------------------------- Borel

std::uint64_t symplectic_order(int k, std::uint32_t p) {
  long double order = 1;
  std::uint64_t exact = 1;
  auto mul = [&](std::uint64_t f) {
    order *= static_cast<long double>(f);
    exact *= f;
  };
  for (int i = 0; i < k * k; ++i) mul(p);
  for (int i = 1; i <= k; ++i) {
    std::uint64_t q = 1;
    for (int e = 0; e < 2 * i; ++e) q *= p;
    mul(q - 1);
  }
  require(order < 1.8e19L, ErrorCode::TooLarge, "group order exceeds 64 bits");
  return exact;
}

BorelCount borel_fraction_check(int k, std::uint32_t p, std::uint64_t max_order) {
  require(k >= 1, ErrorCode::PreconditionViolated, "k must be positive");
  require(p >= 3 && is_probable_prime(p), ErrorCode::BadPrime, "p must be an odd prime");
  const std::uint64_t order = symplectic_order(k, p);
  require(order <= max_order, ErrorCode::TooLarge,
          "|Sp(" + std::to_string(2 * k) + ", " + std::to_string(p) + ")| = " + std::to_string(order));
  const auto n = static_cast<std::size_t>(2 * k);
  const FpMatrix j = symplectic_form(k, p);
  // Transvections x -> x + a (x^T J v) v, i.e. I + a v (J^T v)^T.
  std::vector<FpMatrix> gens;
  std::vector<std::uint32_t> v(n, 0);
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < n; ++i) count *= p;
  for (std::uint64_t code = 1; code < count; ++code) {
    std::uint64_t c = code;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    std::vector<std::uint64_t> jt_v(n, 0);  // J^T v
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t s = 0; s < n; ++s) jt_v[r] = (jt_v[r] + std::uint64_t{j.at(s, r)} * v[s]) % p;
    for (std::uint32_t a = 1; a < p; ++a) {
      FpMatrix t = FpMatrix::identity(n, p);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s)
          t.at(r, s) = static_cast<std::uint32_t>((t.at(r, s) + std::uint64_t{a} * v[r] % p * jt_v[s]) % p);
      require(t.transpose() * j * t == j, ErrorCode::PreconditionViolated, "transvection is not symplectic");
      gens.push_back(std::move(t));
    }
  }
  std::unordered_set<std::string> seen;
  std::vector<FpMatrix> elements{FpMatrix::identity(n, p)};
  seen.insert(elements[0].key());
  for (std::size_t idx = 0; idx < elements.size(); ++idx) {
    for (const auto& g : gens) {
      FpMatrix m = elements[idx] * g;
      if (seen.insert(m.key()).second) elements.push_back(std::move(m));
    }
    require(elements.size() <= order, ErrorCode::PreconditionViolated, "closure exceeds the group order");
  }
  require(elements.size() == order, ErrorCode::PreconditionViolated,
          "transvection closure has " + std::to_string(elements.size()) + " elements, expected " +
              std::to_string(order));
  BorelCount out;
  out.total = order;
  for (const auto& m : elements)
    if (!is_irreducible_mod_p(m.charpoly())) ++out.reducible;
  const auto kk = static_cast<std::uint64_t>(3 * k);
  out.bound_holds = kk * out.reducible <= (kk - 1) * out.total;
  return out;
}

}  // namespace hitbend
