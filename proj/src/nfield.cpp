#include "hitbend/nfield.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hitbend/error.hpp"
#include "hitbend/polyring.hpp"

namespace hitbend {

namespace {

using QVec = std::vector<Rational>;

void trim(QVec& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

QVec rem(QVec a, const QVec& b) {
  trim(a);
  while (a.size() >= b.size()) {
    Rational factor = a.back() / b.back();
    size_t shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= factor * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

int sign_at(const QVec& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return sgn(acc);
}

/// Number of distinct real roots of a squarefree p in (lo, hi].
int rational_sturm_count(const QVec& p, const Rational& lo, const Rational& hi) {
  std::vector<QVec> seq{p};
  QVec d(p.size() > 1 ? p.size() - 1 : 0);
  for (size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<long>(i);
  trim(d);
  if (!d.empty()) seq.push_back(d);
  while (seq.back().size() > 1) {
    QVec r = rem(seq[seq.size() - 2], seq.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    seq.push_back(r);
  }
  auto variations = [&](const Rational& x) {
    int count = 0, last = 0;
    for (const auto& s : seq) {
      int v = sign_at(s, x);
      if (v == 0) continue;
      if (last != 0 && v != last) ++count;
      last = v;
    }
    return count;
  };
  return variations(lo) - variations(hi);
}

struct Interval {
  Rational lo, hi;
};

Interval mul(const Interval& a, const Interval& b) {
  Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

}  // namespace

FieldPtr NumberField::create(std::vector<Integer> min_poly, Rational lo, Rational hi,
                             std::string name) {
  require(min_poly.size() >= 2, ErrorCode::PreconditionViolated, "min_poly must have degree >= 1");
  require(min_poly.back() == 1, ErrorCode::PreconditionViolated, "min_poly must be monic");
  require(lo < hi, ErrorCode::PreconditionViolated, "isolating interval must satisfy lo < hi");
  QVec q(min_poly.begin(), min_poly.end());
  require(sign_at(q, lo) != 0 && sign_at(q, hi) != 0, ErrorCode::PreconditionViolated,
          "isolating interval endpoints must not be roots");
  require(rational_sturm_count(q, lo, hi) == 1, ErrorCode::PreconditionViolated,
          "interval must isolate exactly one real root of min_poly");
  if (min_poly.size() > 2) {
    ZPoly f(std::vector<Integer>(min_poly.begin(), min_poly.end()));
    auto fac = factor_over_int(f);
    require(fac.factors.size() == 1 && fac.factors[0].second == 1, ErrorCode::PreconditionViolated,
            "min_poly must be irreducible over Z");
  }
  auto field = std::shared_ptr<NumberField>(new NumberField());
  field->min_poly_ = std::move(min_poly);
  field->lo_ = lo;
  field->hi_ = hi;
  field->name_ = std::move(name);
  field->sign_at_lo_ = sign_at(q, lo);
  // Bisect to a tight interval; used as the starting point of every sign query.
  Rational a = lo, b = hi;
  const Rational width = Rational(1, Integer(1) << 96);
  while (b - a > width) {
    Rational mid = (a + b) / 2;
    int s = sign_at(q, mid);
    if (s == 0) {
      a = b = mid;
      break;
    }
    if (s == field->sign_at_lo_) a = mid; else b = mid;
  }
  field->tight_lo_ = a;
  field->tight_hi_ = b;
  return field;
}

FieldPtr NumberField::rationals() {
  static const FieldPtr q = create({Integer(0), Integer(1)}, Rational(-1), Rational(1), "q");
  return q;
}

FieldPtr NumberField::q_sqrt2() {
  static const FieldPtr k =
      create({Integer(-2), Integer(0), Integer(1)}, Rational(7, 5), Rational(3, 2), "q-sqrt2");
  return k;
}

bool NumberField::same_as(const NumberField& other) const {
  return this == &other ||
         (min_poly_ == other.min_poly_ && lo_ == other.lo_ && hi_ == other.hi_);
}

int NumberField::min_poly_sign(const Rational& x) const {
  Rational acc = 0;
  for (auto it = min_poly_.rbegin(); it != min_poly_.rend(); ++it) acc = acc * x + Rational(*it);
  return sgn(acc);
}

// ---------------------------------------------------------------- NfElement

NfElement::NfElement(FieldPtr field) : field_(std::move(field)) {
  coeffs_.assign(static_cast<size_t>(field_->degree()), Rational(0));
}

NfElement::NfElement(FieldPtr field, const Rational& value) : NfElement(std::move(field)) {
  coeffs_[0] = value;
}

NfElement::NfElement(FieldPtr field, std::vector<Rational> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  reduce();
}

NfElement NfElement::generator(FieldPtr field) {
  if (field->degree() == 1) {
    // w is the root of t, i.e. zero.
    return NfElement(field);
  }
  std::vector<Rational> c(static_cast<size_t>(field->degree()), Rational(0));
  c[1] = 1;
  return NfElement(std::move(field), std::move(c));
}

void NfElement::reduce() {
  const auto& m = field_->min_poly();
  const size_t d = m.size() - 1;
  for (size_t k = coeffs_.size(); k-- > d;) {
    if (coeffs_[k] != 0) {
      const Rational lead = coeffs_[k];
      for (size_t i = 0; i < d; ++i) coeffs_[k - d + i] -= lead * m[i];
    }
  }
  coeffs_.resize(d, Rational(0));
}

bool NfElement::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
}

bool NfElement::is_one() const {
  if (coeffs_.empty() || coeffs_[0] != 1) return false;
  return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const Rational& c) { return c == 0; });
}

bool NfElement::is_rational() const {
  return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const Rational& c) { return c == 0; });
}

bool NfElement::is_integral() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const Rational& c) { return c.get_den() == 1; });
}

Integer NfElement::denominator() const {
  Integer acc = 1;
  for (const auto& c : coeffs_) acc = lcm_denominator(acc, c);
  return acc;
}

NfElement NfElement::operator-() const {
  NfElement r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

NfElement& NfElement::operator+=(const NfElement& other) {
  for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

NfElement& NfElement::operator-=(const NfElement& other) {
  for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

NfElement& NfElement::operator*=(const Rational& scalar) {
  for (auto& c : coeffs_) c *= scalar;
  return *this;
}

NfElement& NfElement::operator*=(const NfElement& other) {
  const size_t d = coeffs_.size();
  if (d == 1) {
    coeffs_[0] *= other.coeffs_[0];
    return *this;
  }
  const auto& m = field_->min_poly();
  if (d == 2) {
    // w^2 = -m1 w - m0
    Rational a0b0 = coeffs_[0] * other.coeffs_[0];
    Rational a1b1 = coeffs_[1] * other.coeffs_[1];
    Rational mid = coeffs_[0] * other.coeffs_[1] + coeffs_[1] * other.coeffs_[0];
    coeffs_[0] = a0b0 - a1b1 * m[0];
    coeffs_[1] = mid - a1b1 * m[1];
    return *this;
  }
  std::vector<Rational> prod(2 * d - 1, Rational(0));
  for (size_t i = 0; i < d; ++i) {
    if (coeffs_[i] == 0) continue;
    for (size_t j = 0; j < d; ++j) prod[i + j] += coeffs_[i] * other.coeffs_[j];
  }
  coeffs_ = std::move(prod);
  reduce();
  return *this;
}

std::vector<std::vector<Rational>> NfElement::multiplication_matrix() const {
  // Column j holds the coordinates of this * w^j.
  const size_t d = coeffs_.size();
  std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d));
  NfElement basis = NfElement(field_, Rational(1));
  NfElement w = generator(field_);
  for (size_t j = 0; j < d; ++j) {
    NfElement col = *this * basis;
    for (size_t i = 0; i < d; ++i) m[i][j] = col.coeffs_[i];
    basis *= w;
  }
  return m;
}

NfElement NfElement::inverse() const {
  require(!is_zero(), ErrorCode::DivisionByZero, "inverse of zero in number field");
  const size_t d = coeffs_.size();
  if (d == 1) return NfElement(field_, Rational(1) / coeffs_[0]);
  if (d == 2) {
    NfElement c = conjugate();
    Rational n = norm();
    return c * (Rational(1) / n);
  }
  // Solve M x = e_0 by Gauss-Jordan.
  auto m = multiplication_matrix();
  for (size_t i = 0; i < d; ++i) m[i].push_back(i == 0 ? Rational(1) : Rational(0));
  for (size_t col = 0; col < d; ++col) {
    size_t piv = col;
    while (m[piv][col] == 0) ++piv;
    std::swap(m[piv], m[col]);
    Rational inv = Rational(1) / m[col][col];
    for (auto& x : m[col]) x *= inv;
    for (size_t r = 0; r < d; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Rational f = m[r][col];
      for (size_t c = col; c <= d; ++c) m[r][c] -= f * m[col][c];
    }
  }
  std::vector<Rational> x(d);
  for (size_t i = 0; i < d; ++i) x[i] = m[i][d];
  return NfElement(field_, std::move(x));
}

NfElement NfElement::conjugate() const {
  require(coeffs_.size() <= 2, ErrorCode::UnsupportedDegree, "conjugate needs a quadratic field");
  if (coeffs_.size() == 1) return *this;
  // w' = -m1 - w
  const auto& m = field_->min_poly();
  std::vector<Rational> c{coeffs_[0] - coeffs_[1] * m[1], -coeffs_[1]};
  return NfElement(field_, std::move(c));
}

NfElement NfElement::pow(long exponent) const {
  NfElement base = exponent < 0 ? inverse() : *this;
  unsigned long e = exponent < 0 ? static_cast<unsigned long>(-exponent)
                                 : static_cast<unsigned long>(exponent);
  NfElement result(field_, Rational(1));
  while (e > 0) {
    if (e & 1UL) result *= base;
    base *= base;
    e >>= 1UL;
  }
  return result;
}

Rational rational_det(std::vector<std::vector<Rational>> m) {
  const size_t n = m.size();
  Rational det = 1;
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

Rational NfElement::norm() const {
  const size_t d = coeffs_.size();
  if (d == 1) return coeffs_[0];
  if (d == 2) {
    // a^2 - m1 a b + m0 b^2 for a + b w with w^2 + m1 w + m0 = 0
    const auto& m = field_->min_poly();
    const Rational& a = coeffs_[0];
    const Rational& b = coeffs_[1];
    return a * a - Rational(m[1]) * a * b + Rational(m[0]) * b * b;
  }
  return rational_det(multiplication_matrix());
}

Rational NfElement::trace() const {
  auto m = multiplication_matrix();
  Rational t = 0;
  for (size_t i = 0; i < m.size(); ++i) t += m[i][i];
  return t;
}

int NfElement::sign() const {
  if (is_zero()) return 0;
  if (coeffs_.size() == 1 || is_rational()) return sgn(coeffs_[0]);
  Rational a = field_->tight_lo();
  Rational b = field_->tight_hi();
  if (a == b) {
    // Rational root cannot happen for irreducible min_poly of degree >= 2.
    fail(ErrorCode::PreconditionViolated, "degenerate embedding interval");
  }
  const int sign_lo = field_->min_poly_sign(a);
  for (;;) {
    Interval x{a, b};
    Interval acc{coeffs_.back(), coeffs_.back()};
    for (size_t i = coeffs_.size() - 1; i-- > 0;) {
      acc = mul(acc, x);
      acc.lo += coeffs_[i];
      acc.hi += coeffs_[i];
    }
    if (acc.lo > 0) return 1;
    if (acc.hi < 0) return -1;
    Rational mid = (a + b) / 2;
    int s = field_->min_poly_sign(mid);
    if (s == sign_lo) a = mid; else b = mid;
  }
}

double NfElement::to_double() const {
  double w = 0.5 * (field_->tight_lo().get_d() + field_->tight_hi().get_d());
  if (field_->degree() == 1) w = 0.0;
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * w + it->get_d();
  return acc;
}

std::string NfElement::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    const Rational& c = coeffs_[i];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (!first) os << (c < 0 ? "-" : "+");
    else if (c < 0) os << "-";
    if (i == 0) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << "*";
      os << "w";
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

bool operator==(const NfElement& a, const NfElement& b) { return a.coeffs_ == b.coeffs_; }

bool lex_less(const NfElement& a, const NfElement& b) {
  return std::lexicographical_compare(a.coeffs_.begin(), a.coeffs_.end(), b.coeffs_.begin(),
                                      b.coeffs_.end());
}

int compare_real(const NfElement& a, const NfElement& b) { return (a - b).sign(); }

NfElement fundamental_unit_search(const FieldPtr& field, int height_bound) {
  const int d = field->degree();
  require(d >= 2, ErrorCode::PreconditionViolated, "unit search needs a field of degree >= 2");
  const NfElement one(field, Rational(1));
  for (int h = 1; h <= height_bound; ++h) {
    // Odometer over [-h, h]^d, first coordinate most significant.
    std::vector<int> c(static_cast<size_t>(d), -h);
    for (;;) {
      int height = 0;
      for (int x : c) height = std::max(height, std::abs(x));
      if (height == h) {
        std::vector<Rational> q(c.begin(), c.end());
        NfElement e(field, std::move(q));
        Rational n = e.norm();
        if ((n == 1 || n == -1) && compare_real(e, one) > 0) return e;
      }
      int pos = d - 1;
      while (pos >= 0 && c[static_cast<size_t>(pos)] == h) {
        c[static_cast<size_t>(pos)] = -h;
        --pos;
      }
      if (pos < 0) break;
      ++c[static_cast<size_t>(pos)];
    }
  }
  fail(ErrorCode::NotFoundWithinBound,
       "no unit > 1 with coefficient height <= " + std::to_string(height_bound));
}

}  // namespace hitbend
