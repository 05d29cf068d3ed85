#include "hitbend/density.hpp"

#include <algorithm>

namespace hitbend {

namespace {

// Polynomial in t whose coefficients are polynomials in s.
using STPoly = std::vector<QPoly>;

STPoly multiply(const STPoly& a, const STPoly& b) {
  STPoly out(a.size() + b.size() - 1, QPoly());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = out[i + j] + a[i] * b[j];
  return out;
}

NfElement eval_at(const QPoly& f, const NfElement& s) {
  NfElement acc(s.field());
  for (int i = f.degree(); i >= 0; --i) acc = acc * s + NfElement(s.field(), f.coeff(i));
  return acc;
}

int tier(ClosureClass c) {
  switch (c) {
    case ClosureClass::PrincipalSL2: return 0;
    case ClosureClass::Symplectic:
    case ClosureClass::SplitOrthogonal: return 1;
    case ClosureClass::FullSL: return 2;
  }
  return -1;
}

const std::vector<std::string> kImported = {
    "Hitchin representations have Zariski closure conjugate to a principal SL(2), Sp(2k), SO(k+1,k), G2 (n=7) or SL(n)",
    "representation is assumed to lie on the Hitchin component"};

}  // namespace

std::vector<QPoly> principal_charpoly_in_s(int n) {
  require(n >= 1, ErrorCode::PreconditionViolated, "n must be positive");
  const QRing q;
  // p_0 = 2, p_1 = s, p_{k+1} = s p_k - p_{k-1}, where p_k = lambda^k + lambda^-k.
  std::vector<QPoly> p{QPoly::constant(q, 2), QPoly::x(q)};
  for (int k = 1; k < n; ++k) p.push_back(QPoly::x(q) * p[static_cast<std::size_t>(k)] - p[static_cast<std::size_t>(k - 1)]);
  const QPoly one = QPoly::constant(q, 1);
  STPoly out{one};
  if (n % 2 == 1) out = multiply(out, {-one, one});
  for (int k = n - 1; k > 0; k -= 2) out = multiply(out, {one, -p[static_cast<std::size_t>(k)], one});
  return out;
}

PrincipalTest principal_sl2_test(const NfMatrix& m) {
  const KPoly cp = m.charpoly();
  const int n = cp.degree();
  if (!is_squarefree(cp)) return {false, std::nullopt, false, "repeated eigenvalue"};
  require(sturm_count(cp, Endpoint::neg_inf(), Endpoint::pos_inf()) == n, ErrorCode::PreconditionViolated,
          "principal_sl2_test needs a real spectrum");
  auto model = principal_charpoly_in_s(n);
  // Odd n: the coefficients are even in s, so solve for s^2 instead.
  const bool squared = n % 2 == 1;
  if (squared)
    for (auto& c : model) {
      std::vector<Rational> half;
      for (int i = 0; i <= c.degree(); i += 2) half.push_back(c.coeff(i));
      c = QPoly(QRing{}, std::move(half));
    }
  const FieldPtr& field = m.ring().field;
  const KRing& ring = m.ring();
  // Coefficient of t^{n-1} gives the trace equation.
  KPoly trace_eq = to_k(model[static_cast<std::size_t>(n - 1)], field) - KPoly::constant(ring, cp.coeff(n - 1));
  if (trace_eq.degree() <= 0) return {true, ring.zero(), squared, "trivial"};
  std::vector<NfElement> roots;
  for (const auto& [g, e] : factor_over_field(trace_eq))
    if (g.degree() == 1) roots.push_back(-g.coeff(0) / g.coeff(1));
  std::sort(roots.begin(), roots.end(), [](const NfElement& a, const NfElement& b) { return compare_real(a, b) > 0; });
  for (const auto& s : roots) {
    bool all = true;
    for (int k = 0; k <= n && all; ++k) all = eval_at(model[static_cast<std::size_t>(k)], s) == cp.coeff(k);
    if (all)
      return {true, s, squared, std::string("charpoly matches tau_n with ") + (squared ? "s^2 = " : "s = ") + s.to_string()};
  }
  return {false, std::nullopt, false, "no trace parameter in K reproduces the charpoly"};
}

std::string to_string(ClosureClass c) {
  switch (c) {
    case ClosureClass::PrincipalSL2: return "PrincipalSL2";
    case ClosureClass::Symplectic: return "Symplectic";
    case ClosureClass::SplitOrthogonal: return "SplitOrthogonal";
    case ClosureClass::FullSL: return "FullSL";
  }
  return "?";
}

Json to_json(const ClosureCertificate& c, const Presentation& p) {
  Json tested = Json::array();
  for (const auto& w : c.elements_tested) tested.push_back(p.spell(w));
  Json svals = Json::object();
  for (const auto& [w, s] : c.s_values) svals[p.spell(w)] = to_json(s);
  Json out = {{"class", to_string(c.cls)},
              {"n", c.n},
              {"form_space_dim", c.form_space_dim},
              {"elements_tested", tested},
              {"s_values", svals},
              {"imported_theorems", c.imported_theorems},
              {"note", c.note}};
  out["form"] = c.form ? to_json(*c.form) : Json();
  out["refutation"] = c.refutation ? Json(p.spell(*c.refutation)) : Json();
  return out;
}

bool form_preserved(const std::vector<NfMatrix>& images, const NfMatrix& j) {
  if (det(j).is_zero()) return false;
  for (const auto& g : images)
    if (g.transpose() * j * g != j) return false;
  return true;
}

ClosureCertificate certify_closure(const SurfaceRep& rep, int word_bound) {
  require(rep.n != 7, ErrorCode::G2Unsupported, "n = 7 admits a G2 closure, not handled");
  ClosureCertificate cert;
  cert.n = rep.n;
  cert.imported_theorems = kImported;
  if (rep.n == 2) {
    cert.cls = ClosureClass::FullSL;
    cert.note = "n = 2: Sp(2) = SL(2)";
    return cert;
  }
  const FormSpace fs = invariant_form_space(rep.images);
  cert.form_space_dim = fs.dim();
  if (fs.dim() >= 2) fail(ErrorCode::Inconclusive, "invariant form space has dimension " + std::to_string(fs.dim()));

  const Presentation pres = rep.presentation();
  std::vector<NfMatrix> inverses;
  for (const auto& m : rep.images) inverses.push_back(inverse(m));
  bool all_consistent = true;
  bool any_nonreciprocal = false;
  for (const Word& w : reduced_words(static_cast<int>(rep.images.size()), word_bound)) {
    const NfMatrix g = evaluate(w, rep.images, inverses);
    cert.elements_tested.push_back(w);
    const KPoly cp = g.charpoly();
    const NfElement& c0 = cp.coeff(0);
    if ((c0.is_one() || (-c0).is_one()) && !is_reciprocal(cp)) any_nonreciprocal = true;
    const PrincipalTest t = principal_sl2_test(g);
    if (t.consistent) {
      cert.s_values.emplace_back(w, *t.s);
    } else {
      all_consistent = false;
      cert.refutation = w;
      break;
    }
  }

  if (fs.dim() == 1) {
    require(!any_nonreciprocal, ErrorCode::Inconclusive, "non-reciprocal element in a form-preserving group");
    const NfMatrix j = fs.basis()[0];
    require(form_preserved(rep.images, j), ErrorCode::Inconclusive, "invariant form is degenerate");
    cert.form = j;
    const bool alternating = !fs.alternating.empty();
    if (alternating && rep.n % 2 == 0) {
      cert.cls = ClosureClass::Symplectic;
    } else if (!alternating && rep.n % 2 == 1) {
      cert.cls = ClosureClass::SplitOrthogonal;
    } else {
      fail(ErrorCode::Inconclusive, "invariant form has the wrong symmetry for this parity");
    }
    if (all_consistent) {
      cert.cls = ClosureClass::PrincipalSL2;
      cert.note = "every tested element has a principal SL(2) spectrum (advisory)";
    }
    return cert;
  }
  if (all_consistent) fail(ErrorCode::Inconclusive, "no invariant form, but no element refutes principal SL(2)");
  cert.cls = ClosureClass::FullSL;
  cert.note = "no invariant bilinear form and a non-principal spectrum";
  return cert;
}

bool closure_strictly_increased(const ClosureCertificate& before, const ClosureCertificate& after) {
  require(before.n == after.n, ErrorCode::PreconditionViolated, "closures of different dimensions");
  if (tier(before.cls) == 1 && tier(after.cls) == 1 && before.cls != after.cls)
    fail(ErrorCode::IncomparableClasses, to_string(before.cls) + " vs " + to_string(after.cls));
  return tier(after.cls) > tier(before.cls);
}

}  // namespace hitbend
