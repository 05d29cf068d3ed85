#pragma once

#include <cstdint>
#include <string>

#include "hitbend/error.hpp"
#include "hitbend/nfield.hpp"
#include "hitbend/rational.hpp"

namespace hitbend {

/// Element of the prime field F_p, p < 2^32.
class Fp {
 public:
  Fp() = default;
  Fp(std::int64_t value, std::uint64_t p) : p_(p) {
    std::int64_t r = value % static_cast<std::int64_t>(p);
    v_ = static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(p) : r);
  }
  static Fp raw(std::uint64_t value, std::uint64_t p) {
    Fp x;
    x.v_ = value;
    x.p_ = p;
    return x;
  }

  std::uint64_t value() const { return v_; }
  std::uint64_t prime() const { return p_; }
  bool is_zero() const { return v_ == 0; }

  Fp operator-() const { return raw(v_ == 0 ? 0 : p_ - v_, p_); }
  Fp& operator+=(Fp o) {
    v_ += o.v_;
    if (v_ >= p_) v_ -= p_;
    return *this;
  }
  Fp& operator-=(Fp o) {
    v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_;
    return *this;
  }
  Fp& operator*=(Fp o) {
    v_ = (v_ * o.v_) % p_;
    return *this;
  }
  Fp& operator/=(Fp o) { return *this *= o.inverse(); }
  Fp pow(std::uint64_t e) const {
    Fp r = raw(1 % p_, p_), b = *this;
    while (e) {
      if (e & 1U) r *= b;
      b *= b;
      e >>= 1U;
    }
    return r;
  }
  Fp inverse() const {
    require(v_ != 0, ErrorCode::DivisionByZero, "inverse of zero in F_p");
    return pow(p_ - 2);
  }

  friend Fp operator+(Fp a, Fp b) { return a += b; }
  friend Fp operator-(Fp a, Fp b) { return a -= b; }
  friend Fp operator*(Fp a, Fp b) { return a *= b; }
  friend Fp operator/(Fp a, Fp b) { return a /= b; }
  friend bool operator==(Fp a, Fp b) { return a.v_ == b.v_; }
  friend bool operator!=(Fp a, Fp b) { return a.v_ != b.v_; }

 private:
  std::uint64_t v_ = 0;
  std::uint64_t p_ = 2;
};

/// Ring context: supplies zero/one and embeddings of small integers for the
/// coefficient types used by Poly and Matrix.
template <class T>
struct Ring;

template <>
struct Ring<Integer> {
  static constexpr const char* tag = "Int";
  Integer zero() const { return 0; }
  Integer one() const { return 1; }
  Integer from_int(long v) const { return v; }
  static bool is_zero(const Integer& x) { return x == 0; }
  friend bool operator==(const Ring&, const Ring&) { return true; }
};

template <>
struct Ring<Rational> {
  static constexpr const char* tag = "Q";
  Rational zero() const { return 0; }
  Rational one() const { return 1; }
  Rational from_int(long v) const { return v; }
  static bool is_zero(const Rational& x) { return x == 0; }
  static Rational inverse(const Rational& x) {
    require(x != 0, ErrorCode::DivisionByZero, "rational inverse of zero");
    return Rational(1) / x;
  }
  friend bool operator==(const Ring&, const Ring&) { return true; }
};

template <>
struct Ring<NfElement> {
  static constexpr const char* tag = "K";
  FieldPtr field;
  NfElement zero() const { return NfElement(field); }
  NfElement one() const { return NfElement(field, Rational(1)); }
  NfElement from_int(long v) const { return NfElement(field, Rational(v)); }
  NfElement from_rational(const Rational& q) const { return NfElement(field, q); }
  static bool is_zero(const NfElement& x) { return x.is_zero(); }
  static NfElement inverse(const NfElement& x) { return x.inverse(); }
  friend bool operator==(const Ring& a, const Ring& b) {
    return a.field == b.field || (a.field && b.field && a.field->same_as(*b.field));
  }
};

template <>
struct Ring<Fp> {
  static constexpr const char* tag = "Fp";
  std::uint64_t p = 2;
  Fp zero() const { return Fp::raw(0, p); }
  Fp one() const { return Fp::raw(1, p); }
  Fp from_int(long v) const { return Fp(v, p); }
  static bool is_zero(const Fp& x) { return x.is_zero(); }
  static Fp inverse(const Fp& x) { return x.inverse(); }
  friend bool operator==(const Ring& a, const Ring& b) { return a.p == b.p; }
};

using IntRing = Ring<Integer>;
using QRing = Ring<Rational>;
using KRing = Ring<NfElement>;
using FpRing = Ring<Fp>;

}  // namespace hitbend
