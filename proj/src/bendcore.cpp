#include "hitbend/bendcore.hpp"

#include <numeric>

namespace hitbend {

namespace {

NfElement reduce_mod(const NfElement& x, const Integer& n) {
  std::vector<Rational> c;
  for (const auto& q : x.coeffs()) {
    Integer r = q.get_num() % n;
    if (r < 0) r += n;
    c.emplace_back(r);
  }
  return NfElement(x.field(), std::move(c));
}

NfMatrix reduce_mod(const NfMatrix& m, const Integer& n) {
  NfMatrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = reduce_mod(m(i, j), n);
  return out;
}

bool poly_integral(const KPoly& f) {
  for (const auto& c : f.coeffs())
    if (!c.is_integral()) return false;
  return true;
}

KPoly t_minus_one(const KRing& ring) { return KPoly::linear(ring, ring.one()); }

KPoly squarefree_part(const KPoly& f) {
  KPoly s = KPoly::constant(f.ring(), f.ring().one());
  for (const auto& [g, e] : squarefree_decomposition(f)) s = s * g;
  return s;
}

Json checks_json(const BendChecks& c) {
  return {{"centralizes", c.centralizes},
          {"integral", c.integral},
          {"det_one", c.det_one},
          {"positive_distinct_spectrum", c.positive_distinct_spectrum},
          {"non_reciprocal_charpoly", c.non_reciprocal_charpoly}};
}

BendCertificate finish(const NfMatrix& rho_gamma, const NfMatrix& a_prime, BendConstruction construction,
                       Json parameters) {
  const IntegralPower ip = integral_power(a_prime);
  BendCertificate cert;
  cert.a = ip.power;
  cert.a_prime = a_prime;
  cert.construction = construction;
  cert.checks = recheck(cert.a, rho_gamma);
  cert.one_multiplicity = eigenvalue_one_multiplicity(cert.a);
  parameters["j"] = ip.j;
  parameters["modulus"] = ip.modulus.get_str();
  cert.parameters = std::move(parameters);
  return cert;
}

}  // namespace

// ------------------------------------------------------------ integral power

IntegralPower integral_power(const NfMatrix& m, unsigned long max_j) {
  require(m.is_square(), ErrorCode::SizeMismatch, "integral_power needs a square matrix");
  require(det(m).is_one(), ErrorCode::PreconditionViolated, "integral_power needs det 1");
  require(poly_integral(m.charpoly()), ErrorCode::PreconditionViolated,
          "integral_power needs an integral characteristic polynomial");
  const FrobeniusForm form = frobenius_form(m);
  std::vector<NfMatrix> companions;
  for (const auto& b : form.blocks) {
    require(poly_integral(b), ErrorCode::IntegralityViolated, "rational canonical form is not integral");
    companions.push_back(NfMatrix::companion(b));
  }
  const NfMatrix r = NfMatrix::block_diag(m.ring(), companions);
  IntegralPower out;
  out.modulus = denominator(form.p) * denominator(inverse(form.p));
  const NfMatrix r_mod = reduce_mod(r, out.modulus);
  const NfMatrix id = reduce_mod(NfMatrix::identity(m.ring(), m.rows()), out.modulus);
  NfMatrix mj = m;
  NfMatrix rj = r_mod;
  for (unsigned long j = 1; j <= max_j; ++j) {
    if (is_integral(mj)) {
      out.j = j;
      out.power = std::move(mj);
      return out;
    }
    require(rj != id, ErrorCode::IntegralityViolated,
            "R^j = I mod N but M^j is not integral at j = " + std::to_string(j));
    mj = mj * m;
    rj = reduce_mod(rj * r_mod, out.modulus);
  }
  fail(ErrorCode::NotFoundWithinBound, "no integral power up to " + std::to_string(max_j));
}

// ------------------------------------------------------------- certificates

std::string to_string(BendConstruction c) {
  switch (c) {
    case BendConstruction::UnitBlocks: return "UnitBlocks";
    case BendConstruction::IdentityBlocks: return "IdentityBlocks";
    case BendConstruction::IrreducibleUnit: return "IrreducibleUnit";
  }
  return "?";
}

BendChecks recheck(const NfMatrix& a, const NfMatrix& rho_gamma) {
  BendChecks c;
  c.centralizes = a * rho_gamma == rho_gamma * a;
  c.integral = is_integral(a);
  c.det_one = det(a).is_one();
  const KPoly cp = a.charpoly();
  const KPoly s = squarefree_part(cp);
  c.positive_distinct_spectrum = is_real_rooted_distinct_positive(s) && eval_poly(s, a).is_zero();
  const NfElement& c0 = cp.coeff(0);
  c.non_reciprocal_charpoly = (c0.is_one() || (-c0).is_one()) ? !is_reciprocal(cp) : true;
  return c;
}

int eigenvalue_one_multiplicity(const NfMatrix& a) {
  KPoly f = a.charpoly();
  const KPoly lin = t_minus_one(a.ring());
  int k = 0;
  while (f.degree() > 0) {
    auto [q, r] = divmod(f, lin);
    if (!r.is_zero()) break;
    f = std::move(q);
    ++k;
  }
  return k;
}

bool BendCertificate::valid() const {
  const bool base = checks.centralizes && checks.integral && checks.det_one && checks.positive_distinct_spectrum;
  if (construction == BendConstruction::IdentityBlocks) return base && one_multiplicity > 1;
  return base && checks.non_reciprocal_charpoly;
}

Json to_json(const BendCertificate& c) {
  return {{"A", to_json(c.a)},
          {"A_prime", to_json(c.a_prime)},
          {"curve", "a1"},
          {"checks", checks_json(c.checks)},
          {"construction", to_string(c.construction)},
          {"parameters", c.parameters},
          {"eigenvalue_one_multiplicity", c.one_multiplicity},
          {"consequence", c.checks.positive_distinct_spectrum
                              ? "A = exp(X) for a real diagonalizable X (distinct positive spectrum)"
                              : "none"}};
}

BendCertificate bend_certificate_from_json(const Json& j) {
  BendCertificate c;
  c.a = matrix_from_json(j.at("A"));
  c.a_prime = matrix_from_json(j.at("A_prime"));
  require(j.at("curve") == "a1", ErrorCode::ParseError, "only a1 bends are supported");
  const auto& ch = j.at("checks");
  c.checks.centralizes = ch.at("centralizes").get<bool>();
  c.checks.integral = ch.at("integral").get<bool>();
  c.checks.det_one = ch.at("det_one").get<bool>();
  c.checks.positive_distinct_spectrum = ch.at("positive_distinct_spectrum").get<bool>();
  c.checks.non_reciprocal_charpoly = ch.at("non_reciprocal_charpoly").get<bool>();
  const std::string tag = j.at("construction").get<std::string>();
  if (tag == "UnitBlocks") c.construction = BendConstruction::UnitBlocks;
  else if (tag == "IdentityBlocks") c.construction = BendConstruction::IdentityBlocks;
  else if (tag == "IrreducibleUnit") c.construction = BendConstruction::IrreducibleUnit;
  else fail(ErrorCode::ParseError, "unknown construction " + tag);
  c.parameters = j.at("parameters");
  c.one_multiplicity = j.at("eigenvalue_one_multiplicity").get<int>();
  return c;
}

// -------------------------------------------------------------- splitting

std::optional<std::pair<KPoly, KPoly>> unit_normalized_split(const KPoly& f) {
  const auto factors = factor_over_field(f);
  for (const auto& [g, e] : factors)
    require(e == 1, ErrorCode::NotSquarefree, "split needs a squarefree characteristic polynomial");
  const std::size_t k = factors.size();
  const KRing& ring = f.ring();
  for (std::size_t size = 1; size < k; ++size) {
    std::vector<std::size_t> idx(size);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      KPoly f2 = KPoly::constant(ring, ring.one());
      KPoly f1 = KPoly::constant(ring, ring.one());
      std::size_t next = 0;
      for (std::size_t i = 0; i < k; ++i) {
        if (next < size && idx[next] == i) {
          f2 = f2 * factors[i].first;
          ++next;
        } else {
          f1 = f1 * factors[i].first;
        }
      }
      NfElement c0 = f2.coeff(0);
      if (f2.degree() % 2 == 1) c0 = -c0;
      if (c0.is_one()) return std::make_pair(f1, f2);
      // Next combination in lexicographic order.
      std::size_t pos = size;
      while (pos > 0 && idx[pos - 1] == k - size + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t i = pos; i < size; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  return std::nullopt;
}

// ------------------------------------------------------------ constructions

BendCertificate bend_matrix_unit_blocks(const NfMatrix& rho_gamma, const NfElement& u, const KPoly& f1,
                                        const KPoly& f2) {
  const KRing& ring = rho_gamma.ring();
  require(!ring.field->is_rationals(), ErrorCode::PreconditionViolated, "unit-block bends need K != Q");
  require(u.is_integral() && abs(u.norm()) == 1, ErrorCode::PreconditionViolated, "u must be a unit");
  require(u.sign() > 0 && !u.is_one(), ErrorCode::PreconditionViolated, "u must be positive of infinite order");
  const int n1 = f1.degree(), n2 = f2.degree();
  require(n1 >= 1 && n2 >= 1, ErrorCode::PreconditionViolated, "both split factors must be nonconstant");
  const CoprimeSplit split = split_by_coprime_factors(rho_gamma, {f1, f2});
  const NfMatrix b1 = NfMatrix::scalar(ring, static_cast<std::size_t>(n1), u.pow(n2));
  const NfMatrix b2 = split.blocks[1].scaled(u.pow(-n1));
  const NfMatrix a_prime = block_assemble(split.p, {b1, b2});
  require(det(a_prime).is_one(), ErrorCode::PreconditionViolated, "det C2 != 1: split is not unit-normalized");
  BendCertificate cert = finish(rho_gamma, a_prime, BendConstruction::UnitBlocks,
                                {{"u", to_json(u)}, {"n1", n1}, {"n2", n2}, {"f1", to_json(f1)}, {"f2", to_json(f2)}});
  require(cert.checks.non_reciprocal_charpoly, ErrorCode::ReciprocalSpectrum,
          "unit-block bend has a reciprocal characteristic polynomial");
  return cert;
}

BendCertificate bend_matrix_identity_blocks(const NfMatrix& rho_gamma, const KPoly& f1, const KPoly& f2) {
  const KRing& ring = rho_gamma.ring();
  require(ring.field->is_rationals(), ErrorCode::PreconditionViolated, "identity-block bends are for K = Q");
  const int n = static_cast<int>(rho_gamma.rows());
  const int n1 = f1.degree(), n2 = f2.degree();
  require(n1 >= 1 && n2 >= 1, ErrorCode::PreconditionViolated, "both split factors must be nonconstant");
  const KPoly g1 = n % 2 == 1 ? t_minus_one(ring) * f1 : f1;
  const CoprimeSplit split = split_by_coprime_factors(rho_gamma, {g1, f2});
  const NfMatrix a_prime =
      block_assemble(split.p, {NfMatrix::identity(ring, static_cast<std::size_t>(g1.degree())), split.blocks[1]});
  require(det(a_prime).is_one(), ErrorCode::PreconditionViolated, "det C2 != 1: split is not unit-normalized");
  BendCertificate cert = finish(rho_gamma, a_prime, BendConstruction::IdentityBlocks,
                                {{"n1", n1}, {"n2", n2}, {"odd", n % 2 == 1}, {"f1", to_json(f1)}, {"f2", to_json(f2)}});
  require(cert.one_multiplicity > 1, ErrorCode::PreconditionViolated,
          "identity-block bend lacks a repeated eigenvalue 1");
  return cert;
}

BendCertificate bend_matrix_irreducible(const NfMatrix& rho_gamma, int height_bound) {
  const KRing& ring = rho_gamma.ring();
  const std::size_t n = rho_gamma.rows();
  const KPoly cp = rho_gamma.charpoly();
  const auto factors = factor_over_field(cp);
  bool with_one = false;
  if (factors.size() == 2 && factors[0].second == 1 && factors[1].second == 1) {
    const KPoly lin = t_minus_one(ring);
    with_one = factors[0].first == lin || factors[1].first == lin;
  }
  require(with_one || (factors.size() == 1 && factors[0].second == 1), ErrorCode::PreconditionViolated,
          "charpoly is neither irreducible nor (t-1) times irreducible");

  NfMatrix c = rho_gamma;
  NfMatrix p = NfMatrix::identity(ring, n);
  if (with_one) {
    const KPoly f = divmod(cp, t_minus_one(ring)).first;
    const CoprimeSplit split = split_by_coprime_factors(rho_gamma, {t_minus_one(ring), f});
    p = split.p;
    c = split.blocks[1];
  }
  const std::size_t d = c.rows();
  std::vector<NfMatrix> powers{NfMatrix::identity(ring, d)};
  for (std::size_t i = 1; i < d; ++i) powers.push_back(powers.back() * c);

  auto assemble = [&](const NfMatrix& b) {
    if (!with_one) return b;
    return block_assemble(p, {NfMatrix::identity(ring, 1), b});
  };

  for (int h = 1; h <= height_bound; ++h) {
    std::vector<long> coef(d, -h);
    while (true) {
      long top = 0;
      bool nonscalar = false;
      for (std::size_t i = 0; i < d; ++i) {
        top = std::max(top, std::labs(coef[i]));
        if (i > 0 && coef[i] != 0) nonscalar = true;
      }
      if (top == h && nonscalar) {
        NfMatrix b(ring, d, d);
        for (std::size_t i = 0; i < d; ++i)
          if (coef[i] != 0) b += powers[i].scaled(ring.from_int(coef[i]));
        const NfElement v = det(b);
        if (v.is_integral() && abs(v.norm()) == 1) {
          NfMatrix normalized = v.is_one() ? b : b.pow(d).scaled(v.inverse());
          for (const NfMatrix& cand : {normalized, normalized * normalized}) {
            const NfMatrix a_prime = assemble(cand);
            const KPoly acp = a_prime.charpoly();
            if (!is_real_rooted_distinct_positive(cand.charpoly())) continue;
            if (is_reciprocal(acp)) continue;
            Json coeffs = Json::array();
            for (long x : coef) coeffs.push_back(x);
            BendCertificate cert = finish(rho_gamma, a_prime, BendConstruction::IrreducibleUnit,
                                          {{"height", h}, {"poly_coeffs", coeffs}, {"with_one_block", with_one},
                                           {"squared", !(cand == normalized)}});
            require(cert.valid(), ErrorCode::PreconditionViolated, "irreducible-route certificate failed recheck");
            return cert;
          }
        }
      }
      std::size_t pos = d;
      while (pos > 0 && coef[pos - 1] == h) coef[--pos] = -h;
      if (pos == 0) break;
      ++coef[pos - 1];
    }
  }
  fail(ErrorCode::NotFoundWithinBound,
       "no unit in the centralizer order with non-reciprocal positive spectrum up to height " +
           std::to_string(height_bound));
}

// ---------------------------------------------------------------- bending

SurfaceRep apply_bend(const SurfaceRep& rep, const BendCertificate& cert) {
  require(cert.curve == 0, ErrorCode::PreconditionViolated, "only bends along a1 are supported");
  require(cert.valid(), ErrorCode::PreconditionViolated, "bend certificate checks do not hold");
  require(cert.a * rep.images[0] == rep.images[0] * cert.a, ErrorCode::RelatorBroken,
          "bending matrix does not centralize rho(a1)");
  std::vector<NfMatrix> images = rep.images;
  images[1] = images[1] * cert.a;
  SurfaceRep out = rep.derived("bend",
                               {{"curve", "a1"},
                                {"convention", "b1 -> rho(b1) * A"},
                                {"construction", to_string(cert.construction)},
                                {"A_hash", content_hash(to_json(cert.a))}},
                               std::move(images));
  out.verify();
  return out;
}

}  // namespace hitbend
