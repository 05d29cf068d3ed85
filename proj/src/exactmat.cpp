#include "hitbend/exactmat.hpp"

namespace hitbend {

namespace {

using Vec = std::vector<NfElement>;

NfMatrix from_columns(const KRing& ring, std::size_t rows, const std::vector<Vec>& cols) {
  NfMatrix b(ring, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) b.set_column(j, cols[j]);
  return b;
}

struct Krylov {
  std::vector<Vec> vectors;
  KPoly minpoly;
};

/// Krylov sequence v, Mv, ... up to the first linear dependency.
Krylov krylov(const NfMatrix& m, const Vec& v) {
  const KRing& ring = m.ring();
  Krylov out;
  out.vectors.push_back(v);
  while (true) {
    Vec w = m.apply(out.vectors.back());
    auto coeffs = solve(from_columns(ring, m.rows(), out.vectors), w);
    if (coeffs) {
      Vec c;
      for (auto& x : *coeffs) c.push_back(-x);
      c.push_back(ring.one());
      out.minpoly = KPoly(ring, std::move(c));
      return out;
    }
    out.vectors.push_back(std::move(w));
  }
}

KPoly lcm(const KPoly& a, const KPoly& b) { return make_monic(divmod(a * b, gcd(a, b)).first); }

KPoly minimal_polynomial(const NfMatrix& m) {
  const KRing& ring = m.ring();
  KPoly acc = KPoly::constant(ring, ring.one());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Vec e(m.rows(), ring.zero());
    e[i] = ring.one();
    acc = lcm(acc, krylov(m, e).minpoly);
  }
  return acc;
}

/// A vector whose local minimal polynomial is the minimal polynomial of M,
/// taken from the moment curve (1, t, t^2, ...) for t = 0, 1, 2, ...
Krylov cyclic_vector(const NfMatrix& m) {
  const KRing& ring = m.ring();
  const int target = minimal_polynomial(m).degree();
  for (long t = 0;; ++t) {
    Vec v;
    NfElement x = ring.one();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      v.push_back(t == 0 ? (i == 0 ? ring.one() : ring.zero()) : x);
      x = x * ring.from_int(t);
    }
    Krylov k = krylov(m, v);
    if (k.minpoly.degree() == target) return k;
  }
}

/// Frobenius decomposition in the coordinates of m itself: columns of the
/// returned basis, grouped by block in decreasing block order.
void decompose(const NfMatrix& m, std::vector<Vec>& columns, std::vector<KPoly>& blocks) {
  const KRing& ring = m.ring();
  const std::size_t n = m.rows();
  NfMatrix basis = NfMatrix::identity(ring, n);
  NfMatrix current = m;
  while (current.rows() > 0) {
    const std::size_t size = current.rows();
    Krylov k = cyclic_vector(current);
    const std::size_t deg = k.vectors.size();
    for (const auto& v : k.vectors) columns.push_back(basis.apply(v));
    blocks.push_back(k.minpoly);
    if (deg == size) break;
    // phi(M^i v) = delta_{i, deg-1}; complement = {x : phi M^i x = 0, i < deg}
    NfMatrix kry = from_columns(ring, size, k.vectors);
    Vec target(deg, ring.zero());
    target.back() = ring.one();
    auto phi = solve(kry.transpose(), target);
    require(phi.has_value(), ErrorCode::PreconditionViolated, "Krylov basis not independent");
    NfMatrix conditions(ring, deg, size);
    Vec row = *phi;
    for (std::size_t i = 0; i < deg; ++i) {
      for (std::size_t j = 0; j < size; ++j) conditions(i, j) = row[j];
      Vec next(size, ring.zero());
      for (std::size_t j = 0; j < size; ++j)
        for (std::size_t l = 0; l < size; ++l) next[j] += row[l] * current(l, j);
      row = std::move(next);
    }
    std::vector<Vec> complement = nullspace(conditions);
    std::vector<Vec> all = k.vectors;
    all.insert(all.end(), complement.begin(), complement.end());
    NfMatrix full = from_columns(ring, size, all);
    NfMatrix t = inverse(full) * current * full;
    const std::size_t rest = size - deg;
    NfMatrix restricted(ring, rest, rest);
    for (std::size_t i = 0; i < rest; ++i)
      for (std::size_t j = 0; j < rest; ++j) restricted(i, j) = t(deg + i, deg + j);
    basis = basis * from_columns(ring, size, complement);
    current = std::move(restricted);
  }
}

bool integral_poly(const KPoly& f) {
  for (const auto& c : f.coeffs())
    if (!c.is_integral()) return false;
  return true;
}

}  // namespace

bool is_integral(const NfMatrix& m) {
  for (const auto& x : m.data())
    if (!x.is_integral()) return false;
  return true;
}

Integer denominator(const NfMatrix& m) {
  Integer d = 1;
  for (const auto& x : m.data()) d = lcm(d, x.denominator());
  return d;
}

NfMatrix to_k(const QMatrix& m, const FieldPtr& field) {
  KRing ring{field};
  NfMatrix out(ring, m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = NfElement(field, m(i, j));
  return out;
}

NfMatrix from_ints(const FieldPtr& field, const std::vector<std::vector<long>>& rows) {
  KRing ring{field};
  NfMatrix out(ring, rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) out(i, j) = ring.from_int(rows[i][j]);
  return out;
}

FrobeniusForm frobenius_form(const NfMatrix& m) {
  require(m.is_square(), ErrorCode::SizeMismatch, "frobenius_form of non-square matrix");
  const KRing& ring = m.ring();
  std::vector<Vec> columns;
  std::vector<KPoly> blocks;
  decompose(m, columns, blocks);
  // Reorder so that each invariant factor divides the next.
  std::vector<std::size_t> offsets;
  std::size_t off = 0;
  for (const auto& b : blocks) {
    offsets.push_back(off);
    off += static_cast<std::size_t>(b.degree());
  }
  std::vector<Vec> ordered;
  FrobeniusForm out;
  for (std::size_t b = blocks.size(); b-- > 0;) {
    for (int i = 0; i < blocks[b].degree(); ++i) ordered.push_back(columns[offsets[b] + static_cast<std::size_t>(i)]);
    out.blocks.push_back(blocks[b]);
  }
  out.p = inverse(from_columns(ring, m.rows(), ordered));
  if (is_integral(m))
    for (const auto& b : out.blocks)
      require(integral_poly(b), ErrorCode::IntegralityViolated,
              "invariant factor of an integral matrix has non-integral coefficients");
  return out;
}

CoprimeSplit split_by_coprime_factors(const NfMatrix& m, const std::vector<KPoly>& factors) {
  const KRing& ring = m.ring();
  KPoly product = KPoly::constant(ring, ring.one());
  for (const auto& f : factors) product = product * f;
  require(product == m.charpoly(), ErrorCode::PreconditionViolated,
          "factors must multiply to the characteristic polynomial");
  for (std::size_t i = 0; i < factors.size(); ++i)
    for (std::size_t j = i + 1; j < factors.size(); ++j)
      require(gcd(factors[i], factors[j]).degree() == 0, ErrorCode::PreconditionViolated,
              "factors must be pairwise coprime");
  CoprimeSplit out;
  out.factors = factors;
  std::vector<Vec> columns;
  for (const auto& f : factors) {
    std::vector<Vec> kernel = nullspace(eval_poly(f, m));
    require(static_cast<int>(kernel.size()) == f.degree(), ErrorCode::PreconditionViolated,
            "generalized eigenspace has unexpected dimension");
    NfMatrix kb = from_columns(ring, m.rows(), kernel);
    // Restriction of M to the kernel, in kernel coordinates.
    NfMatrix restricted(ring, kernel.size(), kernel.size());
    for (std::size_t j = 0; j < kernel.size(); ++j) {
      auto coords = solve(kb, m.apply(kernel[j]));
      require(coords.has_value(), ErrorCode::PreconditionViolated, "kernel not invariant");
      restricted.set_column(j, *coords);
    }
    FrobeniusForm local = frobenius_form(restricted);
    NfMatrix local_basis = kb * inverse(local.p);
    std::vector<NfMatrix> companions;
    for (const auto& b : local.blocks) companions.push_back(NfMatrix::companion(b));
    out.blocks.push_back(NfMatrix::block_diag(ring, companions));
    for (std::size_t j = 0; j < local_basis.cols(); ++j) columns.push_back(local_basis.column(j));
  }
  out.p = inverse(from_columns(ring, m.rows(), columns));
  return out;
}

std::vector<NfMatrix> centralizer_space(const NfMatrix& m) {
  const KRing& ring = m.ring();
  const std::size_t n = m.rows();
  // Unknown X(i, j) at index i * n + j; equation (XM - MX)(i, j) = 0.
  NfMatrix system(ring, n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t row = i * n + j;
      for (std::size_t k = 0; k < n; ++k) {
        system(row, i * n + k) += m(k, j);
        system(row, k * n + j) -= m(i, k);
      }
    }
  std::vector<NfMatrix> out;
  for (const auto& v : nullspace(system)) out.emplace_back(ring, n, n, v);
  return out;
}

std::vector<NfMatrix> FormSpace::basis() const {
  std::vector<NfMatrix> out = symmetric;
  out.insert(out.end(), alternating.begin(), alternating.end());
  return out;
}

FormSpace invariant_form_space(const std::vector<NfMatrix>& gens) {
  require(!gens.empty(), ErrorCode::PreconditionViolated, "invariant_form_space needs generators");
  const KRing& ring = gens[0].ring();
  const std::size_t n = gens[0].rows();
  for (const auto& g : gens) require(!det(g).is_zero(), ErrorCode::Singular, "generator is singular");

  auto solve_part = [&](bool symmetric) {
    // Parameters: entries (i, j) with i <= j (symmetric) or i < j (alternating).
    std::vector<std::pair<std::size_t, std::size_t>> params;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = symmetric ? i : i + 1; j < n; ++j) params.emplace_back(i, j);
    auto param_matrix = [&](std::size_t k) {
      NfMatrix e(ring, n, n);
      auto [i, j] = params[k];
      e(i, j) = ring.one();
      if (i != j) e(j, i) = symmetric ? ring.one() : -ring.one();
      return e;
    };
    NfMatrix system(ring, gens.size() * n * n, params.size());
    for (std::size_t k = 0; k < params.size(); ++k) {
      const NfMatrix e = param_matrix(k);
      for (std::size_t g = 0; g < gens.size(); ++g) {
        const NfMatrix r = gens[g].transpose() * e * gens[g] - e;
        for (std::size_t idx = 0; idx < n * n; ++idx) system(g * n * n + idx, k) = r.data()[idx];
      }
    }
    std::vector<NfMatrix> out;
    for (const auto& v : nullspace(system)) {
      NfMatrix j(ring, n, n);
      for (std::size_t k = 0; k < params.size(); ++k)
        if (!v[k].is_zero()) j += param_matrix(k).scaled(v[k]);
      out.push_back(std::move(j));
    }
    return out;
  };

  FormSpace space{solve_part(true), solve_part(false)};
  for (const auto& j : space.basis())
    for (const auto& g : gens)
      require(g.transpose() * j * g == j, ErrorCode::PreconditionViolated,
              "invariant form failed re-verification");
  return space;
}

NfMatrix block_assemble(const NfMatrix& p, const std::vector<NfMatrix>& blocks) {
  std::size_t total = 0;
  for (const auto& b : blocks) {
    require(b.is_square(), ErrorCode::SizeMismatch, "blocks must be square");
    total += b.rows();
  }
  require(total == p.rows() && p.is_square(), ErrorCode::SizeMismatch, "block sizes must sum to n");
  return inverse(p) * NfMatrix::block_diag(p.ring(), blocks) * p;
}

}  // namespace hitbend
