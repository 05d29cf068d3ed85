#pragma once

#include <algorithm>
#include <tuple>
#include <utility>
#include <vector>

#include "hitbend/ring.hpp"

namespace hitbend {

/// Dense univariate polynomial, constant term first. The zero polynomial has
/// no coefficients and degree -1.
template <class T>
class Poly {
 public:
  using value_type = T;
  using ring_type = Ring<T>;

  Poly() = default;
  explicit Poly(ring_type ring) : ring_(std::move(ring)) {}
  Poly(ring_type ring, std::vector<T> coeffs) : ring_(std::move(ring)), c_(std::move(coeffs)) {
    trim();
  }
  /// Convenience for rings with a trivial context.
  explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly constant(const ring_type& ring, T value) { return Poly(ring, {std::move(value)}); }
  static Poly monomial(const ring_type& ring, T coeff, int degree) {
    std::vector<T> c(static_cast<size_t>(degree) + 1, ring.zero());
    c.back() = std::move(coeff);
    return Poly(ring, std::move(c));
  }
  /// t - root
  static Poly linear(const ring_type& ring, const T& root) { return Poly(ring, {-root, ring.one()}); }
  static Poly x(const ring_type& ring) { return Poly(ring, {ring.zero(), ring.one()}); }

  const ring_type& ring() const { return ring_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<T>& coeffs() const { return c_; }
  T coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<size_t>(i)] : ring_.zero();
  }
  const T& lc() const { return c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == ring_.one(); }

  T eval(const T& x) const {
    T acc = ring_.zero();
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Poly derivative() const {
    std::vector<T> d;
    for (size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * ring_.from_int(static_cast<long>(i)));
    return Poly(ring_, std::move(d));
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  Poly& operator+=(const Poly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), ring_.zero());
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), ring_.zero());
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly scaled(const T& s) const {
    Poly r = *this;
    for (auto& c : r.c_) c *= s;
    r.trim();
    return r;
  }
  /// t^k * this
  Poly shifted(int k) const {
    if (is_zero()) return *this;
    std::vector<T> c(static_cast<size_t>(k), ring_.zero());
    c.insert(c.end(), c_.begin(), c_.end());
    return Poly(ring_, std::move(c));
  }
  /// t^deg * p(1/t)
  Poly reversed() const {
    std::vector<T> c(c_.rbegin(), c_.rend());
    return Poly(ring_, std::move(c));
  }
  /// p(-t)
  Poly negated_variable() const {
    Poly r = *this;
    for (size_t i = 1; i < r.c_.size(); i += 2) r.c_[i] = -r.c_[i];
    return r;
  }
  /// p(q(t)) by Horner.
  Poly compose(const Poly& q) const {
    Poly acc(ring_);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * q + constant(ring_, *it);
    return acc;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(a.ring_);
    std::vector<T> c(a.c_.size() + b.c_.size() - 1, a.ring_.zero());
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (Ring<T>::is_zero(a.c_[i])) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(a.ring_, std::move(c));
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

 private:
  void trim() {
    while (!c_.empty() && Ring<T>::is_zero(c_.back())) c_.pop_back();
  }

  ring_type ring_{};
  std::vector<T> c_;
};

using ZPoly = Poly<Integer>;
using QPoly = Poly<Rational>;
using KPoly = Poly<NfElement>;
using FpPoly = Poly<Fp>;

// ------------------------------------------------------------ field helpers

/// Division with remainder; the divisor's leading coefficient must be
/// invertible in the coefficient field.
template <class T>
std::pair<Poly<T>, Poly<T>> divmod(const Poly<T>& a, const Poly<T>& b) {
  require(!b.is_zero(), ErrorCode::DivisionByZero, "polynomial division by zero");
  const auto& ring = a.ring();
  std::vector<T> r = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {Poly<T>(ring), a};
  std::vector<T> q(static_cast<size_t>(a.degree() - db + 1), ring.zero());
  const T inv_lc = Ring<T>::inverse(b.lc());
  for (int k = a.degree(); k >= db; --k) {
    T f = r[static_cast<size_t>(k)] * inv_lc;
    if (Ring<T>::is_zero(f)) continue;
    q[static_cast<size_t>(k - db)] = f;
    for (int i = 0; i <= db; ++i) r[static_cast<size_t>(k - db + i)] -= f * b.coeffs()[static_cast<size_t>(i)];
  }
  r.resize(static_cast<size_t>(db));
  return {Poly<T>(ring, std::move(q)), Poly<T>(ring, std::move(r))};
}

template <class T>
Poly<T> rem(const Poly<T>& a, const Poly<T>& b) {
  return divmod(a, b).second;
}

template <class T>
Poly<T> make_monic(const Poly<T>& p) {
  if (p.is_zero()) return p;
  return p.scaled(Ring<T>::inverse(p.lc()));
}

/// Monic gcd over a field; gcd(0, 0) = 0.
template <class T>
Poly<T> gcd(Poly<T> a, Poly<T> b) {
  while (!b.is_zero()) {
    Poly<T> r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a);
}

/// Extended gcd: returns (g, s, t) with s a + t b = g monic.
template <class T>
std::tuple<Poly<T>, Poly<T>, Poly<T>> ext_gcd(const Poly<T>& a, const Poly<T>& b) {
  const auto& ring = a.ring();
  Poly<T> r0 = a, r1 = b;
  Poly<T> s0 = Poly<T>::constant(ring, ring.one()), s1(ring);
  Poly<T> t0(ring), t1 = Poly<T>::constant(ring, ring.one());
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly<T> s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Poly<T> t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  T inv = Ring<T>::inverse(r0.lc());
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

template <class T>
bool is_squarefree(const Poly<T>& f) {
  if (f.degree() <= 0) return true;
  return gcd(f, f.derivative()).degree() == 0;
}

/// (base^e) mod m over a field.
template <class T>
Poly<T> powmod(Poly<T> base, Integer e, const Poly<T>& m) {
  Poly<T> result = rem(Poly<T>::constant(m.ring(), m.ring().one()), m);
  base = rem(base, m);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = rem(result * base, m);
    base = rem(base * base, m);
    e >>= 1;
  }
  return result;
}

}  // namespace hitbend
