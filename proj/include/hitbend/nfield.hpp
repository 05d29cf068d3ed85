#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hitbend/rational.hpp"

namespace hitbend {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

/// A real number field K = Q(w) with monogenic ring of integers Z[w] and a
/// fixed real embedding selected by an isolating interval for w.
class NumberField {
 public:
  /// `min_poly` is monic, constant term first. The open interval (lo, hi)
  /// must contain exactly one real root, with lo and hi not roots.
  static FieldPtr create(std::vector<Integer> min_poly, Rational lo, Rational hi,
                         std::string name = "");

  static FieldPtr rationals();
  static FieldPtr q_sqrt2();

  int degree() const { return static_cast<int>(min_poly_.size()) - 1; }
  const std::vector<Integer>& min_poly() const { return min_poly_; }
  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  const std::string& name() const { return name_; }
  bool class_number_one() const { return true; }

  bool is_rationals() const { return degree() == 1; }
  bool same_as(const NumberField& other) const;

  /// Sign of min_poly at a rational point.
  int min_poly_sign(const Rational& x) const;

  /// Interval of width < 2^-96 around the embedded root, computed once.
  const Rational& tight_lo() const { return tight_lo_; }
  const Rational& tight_hi() const { return tight_hi_; }

 private:
  NumberField() = default;

  std::vector<Integer> min_poly_;
  Rational lo_, hi_;
  Rational tight_lo_, tight_hi_;
  int sign_at_lo_ = 0;
  std::string name_;
};

/// Exact element of K in the power basis 1, w, ..., w^{d-1}.
class NfElement {
 public:
  NfElement() = default;
  explicit NfElement(FieldPtr field);
  NfElement(FieldPtr field, const Rational& value);
  NfElement(FieldPtr field, long value) : NfElement(std::move(field), Rational(value)) {}
  /// Coefficients of any length; reduced modulo min_poly.
  NfElement(FieldPtr field, std::vector<Rational> coeffs);

  static NfElement generator(FieldPtr field);

  const FieldPtr& field() const { return field_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  const Rational& coeff(int i) const { return coeffs_[static_cast<size_t>(i)]; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  bool is_integral() const;
  /// Least positive integer D with D * this integral.
  Integer denominator() const;

  NfElement operator-() const;
  NfElement& operator+=(const NfElement& other);
  NfElement& operator-=(const NfElement& other);
  NfElement& operator*=(const NfElement& other);
  NfElement& operator*=(const Rational& scalar);
  NfElement& operator/=(const NfElement& other) { return *this *= other.inverse(); }

  NfElement inverse() const;
  /// Galois conjugate, quadratic fields only.
  NfElement conjugate() const;
  NfElement pow(long exponent) const;
  Rational norm() const;
  Rational trace() const;
  int sign() const;
  double to_double() const;
  std::string to_string() const;

  friend NfElement operator+(NfElement a, const NfElement& b) { return a += b; }
  friend NfElement operator-(NfElement a, const NfElement& b) { return a -= b; }
  friend NfElement operator*(NfElement a, const NfElement& b) { return a *= b; }
  friend NfElement operator*(NfElement a, const Rational& b) { return a *= b; }
  friend NfElement operator/(NfElement a, const NfElement& b) { return a /= b; }
  friend bool operator==(const NfElement& a, const NfElement& b);
  friend bool operator!=(const NfElement& a, const NfElement& b) { return !(a == b); }
  /// Lexicographic on coefficients; only for deterministic ordering.
  friend bool lex_less(const NfElement& a, const NfElement& b);

 private:
  void reduce();
  std::vector<std::vector<Rational>> multiplication_matrix() const;

  FieldPtr field_;
  std::vector<Rational> coeffs_;
};

/// Compare by the fixed real embedding.
int compare_real(const NfElement& a, const NfElement& b);

/// Smallest-height unit e > 1 of O_K (norm +-1) found by scanning integral
/// elements with max |coefficient| <= height_bound, lexicographic within a
/// height class.
NfElement fundamental_unit_search(const FieldPtr& field, int height_bound);

/// Exact determinant of a small rational matrix (fraction-free elimination).
Rational rational_det(std::vector<std::vector<Rational>> m);

}  // namespace hitbend
