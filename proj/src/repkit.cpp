#include "hitbend/repkit.hpp"

#include <algorithm>
#include <deque>

namespace hitbend {

namespace {

using Vec = std::vector<NfElement>;

bool is_minus_identity(const NfMatrix& m) { return (-m).is_identity(); }

}  // namespace

std::array<NfMatrix, 3> triangle_seed() {
  const FieldPtr k = NumberField::q_sqrt2();
  const KRing r{k};
  const NfElement w = NfElement::generator(k);
  const NfElement one = r.one(), zero = r.zero();
  NfMatrix alpha(r, {{zero, -one}, {one, one}});
  NfMatrix beta(r, {{zero, -one - w}, {w - one, w}});
  NfMatrix gamma(r, {{one - w, -w}, {w - one, -one}});
  return {alpha, beta, gamma};
}

TriangleSeedCheck verify_triangle_seed(const std::array<NfMatrix, 3>& seed) {
  TriangleSeedCheck c;
  c.alpha_cubed_minus_identity = is_minus_identity(seed[0].pow(3));
  c.beta_fourth_minus_identity = is_minus_identity(seed[1].pow(4));
  c.gamma_fourth_minus_identity = is_minus_identity(seed[2].pow(4));
  const NfMatrix prod = seed[0] * seed[1] * seed[2];
  c.product_plus_minus_identity = prod.is_identity() || is_minus_identity(prod);
  return c;
}

NfMatrix tau_n(const NfMatrix& m, int n) {
  require(m.rows() == 2 && m.cols() == 2, ErrorCode::SizeMismatch, "tau_n needs a 2x2 matrix");
  require(n >= 1, ErrorCode::PreconditionViolated, "tau_n needs n >= 1");
  require(det(m).is_one(), ErrorCode::PreconditionViolated, "tau_n needs det 1");
  const KRing& r = m.ring();
  const auto un = static_cast<std::size_t>(n);
  // (p x + q y)^k as coefficients of y^j
  auto power = [&](const NfElement& p, const NfElement& q, int k) {
    Vec out(static_cast<std::size_t>(k) + 1, r.zero());
    for (int j = 0; j <= k; ++j)
      out[static_cast<std::size_t>(j)] = p.pow(k - j) * q.pow(j) *
                                         Rational(binomial(static_cast<unsigned>(k), static_cast<unsigned>(j)));
    return out;
  };
  NfMatrix t(r, un, un);
  for (int i = 0; i < n; ++i) {
    const Vec left = power(m(0, 0), m(0, 1), n - 1 - i);
    const Vec right = power(m(1, 0), m(1, 1), i);
    for (std::size_t a = 0; a < left.size(); ++a)
      for (std::size_t b = 0; b < right.size(); ++b) t(static_cast<std::size_t>(i), a + b) += left[a] * right[b];
  }
  return t;
}

// ---------------------------------------------------------- genus-2 tuple

Genus2Tuple search_genus2_tuple(int length_bound) {
  Genus2Tuple t;
  t.permutations = find_index12_representation();
  const CosetTable table = CosetTable::from_permutations({t.permutations[0], t.permutations[1]});
  const auto seed = triangle_seed();
  t.words = find_surface_tuple(t.triangle, table, {seed[0], seed[1]}, length_bound).words;
  verify_genus2_tuple(t);
  return t;
}

Json to_json(const Genus2Tuple& t) {
  Json rels = Json::array();
  for (const auto& r : t.triangle.relators) rels.push_back(t.triangle.spell(r));
  const char* names[] = {"a1", "b1", "a2", "b2"};
  Json words;
  for (std::size_t i = 0; i < 4; ++i) words[names[i]] = t.triangle.spell(t.words[i]);
  return {{"presentation", {{"generators", t.triangle.generators}, {"relators", rels}}},
          {"permutations", {{"a", t.permutations[0]}, {"b", t.permutations[1]}}},
          {"index", t.permutations[0].size()},
          {"subgroup_words", words}};
}

Genus2Tuple load_genus2_tuple(const std::string& path) {
  const Json j = read_json_file(path);
  Genus2Tuple t;
  t.triangle.generators = j.at("presentation").at("generators").get<std::vector<std::string>>();
  t.triangle.relators.clear();
  for (const auto& r : j.at("presentation").at("relators")) t.triangle.relators.push_back(t.triangle.parse(r.get<std::string>()));
  t.permutations[0] = j.at("permutations").at("a").get<std::vector<int>>();
  t.permutations[1] = j.at("permutations").at("b").get<std::vector<int>>();
  const char* names[] = {"a1", "b1", "a2", "b2"};
  for (std::size_t i = 0; i < 4; ++i) t.words[i] = t.triangle.parse(j.at("subgroup_words").at(names[i]).get<std::string>());
  verify_genus2_tuple(t);
  return t;
}

void verify_genus2_tuple(const Genus2Tuple& t) {
  const std::size_t n = t.permutations[0].size();
  for (const auto& perm : t.permutations) {
    std::vector<int> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < n; ++i)
      require(perm.size() == n && sorted[i] == static_cast<int>(i), ErrorCode::PreconditionViolated,
              "fixture permutation is not a permutation");
  }
  const CosetTable table = CosetTable::from_permutations({t.permutations[0], t.permutations[1]});
  for (const auto& r : t.triangle.relators)
    for (int c = 0; c < table.index(); ++c)
      require(table.act(c, r) == c, ErrorCode::PreconditionViolated, "permutations violate a relator");
  std::vector<bool> seen(n, false);
  std::deque<int> queue{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const int c = queue.front();
    queue.pop_front();
    for (int x = 0; x < 4; ++x) {
      const int d = table.at(c, x);
      if (!seen[static_cast<std::size_t>(d)]) {
        seen[static_cast<std::size_t>(d)] = true;
        ++reached;
        queue.push_back(d);
      }
    }
  }
  require(reached == n, ErrorCode::PreconditionViolated, "permutation action is not transitive");
  require(torsion_free_check(table, t.triangle), ErrorCode::PreconditionViolated, "subgroup has torsion");
  for (const auto& w : t.words)
    require(table.contains(w), ErrorCode::PreconditionViolated, "tuple word outside the subgroup");
  const std::vector<Word> words(t.words.begin(), t.words.end());
  require(todd_coxeter(t.triangle, words, 4096).index() == static_cast<int>(n), ErrorCode::PreconditionViolated,
          "tuple does not generate the subgroup");
  const auto seed = triangle_seed();
  const std::vector<NfMatrix> images{seed[0], seed[1]};
  const std::vector<NfMatrix> inverses{inverse(seed[0]), inverse(seed[1])};
  std::vector<NfMatrix> m;
  for (const auto& w : t.words) m.push_back(evaluate(w, images, inverses));
  const NfMatrix rel = m[0] * m[1] * inverse(m[0]) * inverse(m[1]) * m[2] * m[3] * inverse(m[2]) * inverse(m[3]);
  require(rel.is_identity() || (-rel).is_identity(), ErrorCode::RelatorBroken,
          "tuple does not satisfy the genus-2 relator");
}

// ----------------------------------------------------------- surface reps

NfMatrix SurfaceRep::image(const Word& w) const {
  std::vector<NfMatrix> inverses;
  for (const auto& m : images) inverses.push_back(inverse(m));
  return evaluate(w, images, inverses);
}

NfMatrix SurfaceRep::relator_value() const { return image(presentation().relators[0]); }

bool SurfaceRep::relator_holds() const { return relator_value().is_identity(); }

bool SurfaceRep::determinants_one() const {
  for (const auto& m : images)
    if (!det(m).is_one()) return false;
  return true;
}

bool SurfaceRep::integral() const {
  for (const auto& m : images)
    if (!is_integral(m)) return false;
  return true;
}

void SurfaceRep::verify() const {
  require(static_cast<int>(images.size()) == 2 * genus, ErrorCode::SizeMismatch, "wrong number of images");
  require(determinants_one(), ErrorCode::RelatorBroken, "generator image with det != 1");
  require(relator_holds(), ErrorCode::RelatorBroken, "surface relator is not the identity");
}

SurfaceRep SurfaceRep::derived(const std::string& operation, Json parameters,
                               std::vector<NfMatrix> new_images) const {
  SurfaceRep out = *this;
  out.provenance.push_back({operation, std::move(parameters), rep_hash(*this)});
  out.images = std::move(new_images);
  if (!out.images.empty()) {
    out.field = out.images[0].ring().field;
    out.n = static_cast<int>(out.images[0].rows());
  }
  return out;
}

Json to_json(const SurfaceRep& rep) {
  Json images = Json::array();
  for (const auto& m : rep.images) images.push_back(to_json(m));
  Json prov = Json::array();
  for (const auto& p : rep.provenance)
    prov.push_back({{"operation", p.operation}, {"parameters", p.parameters}, {"input_hash", p.input_hash}});
  return {{"field", to_json(*rep.field)}, {"genus", rep.genus}, {"n", rep.n}, {"images", images}, {"provenance", prov}};
}

SurfaceRep surface_rep_from_json(const Json& j) {
  SurfaceRep rep;
  rep.field = field_from_json(j.at("field"));
  rep.genus = j.at("genus").get<int>();
  rep.n = j.at("n").get<int>();
  for (const auto& m : j.at("images")) rep.images.push_back(matrix_from_json(m, rep.field));
  if (j.contains("provenance"))
    for (const auto& p : j.at("provenance"))
      rep.provenance.push_back({p.at("operation").get<std::string>(), p.at("parameters"),
                                p.at("input_hash").get<std::string>()});
  for (const auto& m : rep.images)
    require(static_cast<int>(m.rows()) == rep.n && m.is_square(), ErrorCode::ParseError, "image has wrong size");
  return rep;
}

std::string rep_hash(const SurfaceRep& rep) {
  Json images = Json::array();
  for (const auto& m : rep.images) images.push_back(to_json(m));
  return content_hash({{"field", to_json(*rep.field)}, {"images", images}});
}

SurfaceRep fuchsian_genus2_rep(const Genus2Tuple& tuple) {
  const auto seed = triangle_seed();
  const std::vector<NfMatrix> images{seed[0], seed[1]};
  const std::vector<NfMatrix> inverses{inverse(seed[0]), inverse(seed[1])};
  SurfaceRep rep;
  rep.genus = 2;
  rep.field = NumberField::q_sqrt2();
  rep.n = 2;
  for (const auto& w : tuple.words) rep.images.push_back(evaluate(w, images, inverses));
  Json words;
  const char* names[] = {"a1", "b1", "a2", "b2"};
  for (std::size_t i = 0; i < 4; ++i) words[names[i]] = tuple.triangle.spell(tuple.words[i]);
  rep.provenance.push_back({"fuchsian_genus2_seed", {{"words", words}}, content_hash(to_json(tuple))});
  if (rep.images[0].trace().sign() < 0) rep = twist_by_character(rep, {-1, 1, 1, 1});
  rep.verify();
  return rep;
}

SurfaceRep tau_n(const SurfaceRep& rep, int n) {
  require(rep.n == 2, ErrorCode::PreconditionViolated, "tau_n applies to 2-dimensional reps");
  std::vector<NfMatrix> out;
  for (const auto& m : rep.images) out.push_back(tau_n(m, n));
  SurfaceRep r = rep.derived("tau_n", {{"n", n}}, std::move(out));
  r.verify();
  return r;
}

SurfaceRep twist_by_character(const SurfaceRep& rep, const std::vector<int>& signs) {
  require(signs.size() == rep.images.size(), ErrorCode::SizeMismatch, "one sign per generator");
  for (int s : signs) {
    require(s == 1 || s == -1, ErrorCode::PreconditionViolated, "signs must be +-1");
    require(s == 1 || rep.n % 2 == 0, ErrorCode::OddDimensionSignFlip,
            "sign -1 breaks det 1 in odd dimension");
  }
  std::vector<NfMatrix> out;
  for (std::size_t i = 0; i < signs.size(); ++i) out.push_back(signs[i] < 0 ? -rep.images[i] : rep.images[i]);
  return rep.derived("twist_by_character", {{"signs", signs}}, std::move(out));
}

// --------------------------------------------------------- rational descent

SurfaceRep descend_to_rationals(const SurfaceRep& rep) {
  if (rep.field->is_rationals()) return rep;
  const KRing& r = rep.images[0].ring();
  const auto n = static_cast<std::size_t>(rep.n);
  const auto fixed = nullspace(rep.images[0] - NfMatrix::identity(r, n));
  require(fixed.size() == 1, ErrorCode::NoRationalForm, "rho(a1) has no one-dimensional fixed line");

  std::vector<NfMatrix> actions = rep.images;
  for (const auto& m : rep.images) actions.push_back(inverse(m));

  // Rational echelon basis of the span, as flattened coordinate vectors.
  std::vector<std::vector<Rational>> rows;
  std::vector<Vec> basis;
  auto try_add = [&](const Vec& v) {
    std::vector<Rational> flat;
    for (const auto& x : v) flat.insert(flat.end(), x.coeffs().begin(), x.coeffs().end());
    rows.push_back(flat);
    QMatrix m(QRing{}, rows);
    if (rank(m) < rows.size()) {
      rows.pop_back();
      return false;
    }
    basis.push_back(v);
    return true;
  };
  std::deque<Vec> queue;
  try_add(fixed[0]);
  queue.push_back(fixed[0]);
  while (!queue.empty()) {
    const Vec v = queue.front();
    queue.pop_front();
    for (const auto& g : actions) {
      Vec w = g.apply(v);
      if (try_add(w)) {
        require(basis.size() <= n, ErrorCode::NoRationalForm, "orbit span exceeds dimension n over Q");
        queue.push_back(std::move(w));
      }
    }
  }
  require(basis.size() == n, ErrorCode::NoRationalForm, "orbit span has dimension below n");
  NfMatrix q(r, n, n);
  for (std::size_t j = 0; j < n; ++j) q.set_column(j, basis[j]);
  const NfMatrix q_inv = inverse(q);
  const FieldPtr rationals = NumberField::rationals();
  std::vector<NfMatrix> out;
  for (const auto& g : rep.images) {
    const NfMatrix h = q_inv * g * q;
    NfMatrix hq(KRing{rationals}, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        require(h(i, j).is_rational(), ErrorCode::NoRationalForm, "conjugated entry is irrational");
        hq(i, j) = NfElement(rationals, h(i, j).coeff(0));
      }
    out.push_back(std::move(hq));
  }
  SurfaceRep result = rep.derived("descend_to_rationals", {{"basis", to_json(q)}}, std::move(out));
  result.verify();
  return result;
}

// ------------------------------------------------------- lattice saturation

namespace {

/// Euclidean quotient in Z or Z[sqrt2]: round a/b coordinatewise.
NfElement euclid_quotient(const NfElement& a, const NfElement& b) {
  const NfElement x = a / b;
  std::vector<Rational> c;
  for (const auto& q : x.coeffs()) c.emplace_back(round_nearest(q));
  return NfElement(a.field(), std::move(c));
}

Rational abs_norm(const NfElement& e) { return abs(e.norm()); }

/// Row echelon basis of the O_K-module spanned by integral rows.
std::vector<Vec> echelon_over_ok(std::vector<Vec> rows, std::size_t n) {
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < rows.size(); ++col) {
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t k = r; k < rows.size(); ++k)
        if (!rows[k][col].is_zero() && (best == rows.size() || abs_norm(rows[k][col]) < abs_norm(rows[best][col])))
          best = k;
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool remaining = false;
      for (std::size_t k = r + 1; k < rows.size(); ++k) {
        if (rows[k][col].is_zero()) continue;
        const NfElement q = euclid_quotient(rows[k][col], rows[r][col]);
        for (std::size_t j = col; j < n; ++j) rows[k][j] -= q * rows[r][j];
        if (!rows[k][col].is_zero()) remaining = true;
      }
      if (!remaining) break;
    }
    if (r < rows.size() && !rows[r][col].is_zero()) {
      for (std::size_t k = 0; k < r; ++k) {
        if (rows[k][col].is_zero()) continue;
        const NfElement q = euclid_quotient(rows[k][col], rows[r][col]);
        for (std::size_t j = col; j < n; ++j) rows[k][j] -= q * rows[r][j];
      }
      ++r;
    }
  }
  rows.resize(r);
  return rows;
}

}  // namespace

Integralization integralize(const SurfaceRep& rep, const Integer& denominator_bound) {
  const int d = rep.field->degree();
  require(d == 1 || d == 2, ErrorCode::UnsupportedDegree, "lattice saturation needs Z or a quadratic order");
  require(d == 1 || rep.field->min_poly() == std::vector<Integer>{-2, 0, 1}, ErrorCode::UnsupportedDegree,
          "lattice saturation implemented for Z and Z[sqrt2]");
  const KRing& r = rep.images[0].ring();
  const auto n = static_cast<std::size_t>(rep.n);
  std::vector<NfMatrix> actions = rep.images;
  for (const auto& m : rep.images) actions.push_back(inverse(m));

  Integralization out;
  bool already = true;
  for (const auto& m : actions) already = already && is_integral(m);
  if (already) {
    out.p = NfMatrix::identity(r, n);
    out.rep = rep;
    return out;
  }

  NfMatrix basis = NfMatrix::identity(r, n);
  Rational volume = 1;
  for (int round = 1;; ++round) {
    std::vector<Vec> vectors;
    for (std::size_t j = 0; j < n; ++j) vectors.push_back(basis.column(j));
    for (const auto& g : actions)
      for (std::size_t j = 0; j < n; ++j) vectors.push_back(g.apply(basis.column(j)));
    Integer den = 1;
    for (const auto& v : vectors)
      for (const auto& x : v) den = lcm(den, x.denominator());
    require(den <= denominator_bound, ErrorCode::NoInvariantLattice,
            "lattice denominators exceed the bound " + denominator_bound.get_str());
    for (auto& v : vectors)
      for (auto& x : v) x *= Rational(den);
    const auto rows = echelon_over_ok(std::move(vectors), n);
    require(rows.size() == n, ErrorCode::PreconditionViolated, "lattice lost rank");
    NfMatrix next(r, n, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) next(i, j) = rows[j][i] * Rational(1, den);
    const Rational next_volume = abs(det(next).norm());
    basis = next;
    out.rounds = round;
    if (next_volume == volume) break;
    volume = next_volume;
  }
  out.p = inverse(basis);
  std::vector<NfMatrix> conj;
  for (const auto& g : rep.images) {
    NfMatrix h = out.p * g * basis;
    require(is_integral(h), ErrorCode::IntegralityViolated, "saturated lattice is not invariant");
    conj.push_back(std::move(h));
  }
  out.rep = rep.derived("integralize", {{"conjugator", to_json(out.p)}, {"rounds", out.rounds}}, std::move(conj));
  out.rep.verify();
  return out;
}

// --------------------------------------------------------------- loxodromy

std::vector<Word> reduced_words(int generators, int bound) {
  std::vector<Word> out;
  std::vector<Word> layer{Word{}};
  for (int len = 1; len <= bound; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer)
      for (int x = 0; x < 2 * generators; ++x) {
        const Letter l{x / 2, (x % 2) ? -1 : 1};
        if (!w.empty() && w.back().gen == l.gen && w.back().exp == -l.exp) continue;
        Word v = w;
        v.push_back(l);
        next.push_back(std::move(v));
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

LoxodromyReport loxodromy_check(const Presentation& p, const std::vector<NfMatrix>& images, int word_bound) {
  std::vector<NfMatrix> inverses;
  for (const auto& m : images) inverses.push_back(inverse(m));
  LoxodromyReport report;
  for (const auto& w : reduced_words(p.rank(), word_bound)) {
    ++report.words_checked;
    const KPoly f = evaluate(w, images, inverses).charpoly();
    if (!has_distinct_absolute_values(f)) {
      report.pass = false;
      report.violator = w;
      report.detail = "word " + p.spell(w) + " has a non-real or repeated-modulus spectrum";
      return report;
    }
  }
  return report;
}

LoxodromyReport loxodromy_check(const SurfaceRep& rep, int word_bound) {
  return loxodromy_check(rep.presentation(), rep.images, word_bound);
}

}  // namespace hitbend
