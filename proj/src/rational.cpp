#include "hitbend/rational.hpp"

#include "hitbend/error.hpp"

namespace hitbend {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NotFoundWithinBound: return "NotFoundWithinBound";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::NotSquarefree: return "NotSquarefree";
    case ErrorCode::ZeroConstantTerm: return "ZeroConstantTerm";
    case ErrorCode::UnsupportedDegree: return "UnsupportedDegree";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::IntegralityViolated: return "IntegralityViolated";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::OddDimensionSignFlip: return "OddDimensionSignFlip";
    case ErrorCode::NoInvariantLattice: return "NoInvariantLattice";
    case ErrorCode::NoRationalForm: return "NoRationalForm";
    case ErrorCode::ReciprocalSpectrum: return "ReciprocalSpectrum";
    case ErrorCode::RelatorBroken: return "RelatorBroken";
    case ErrorCode::G2Unsupported: return "G2Unsupported";
    case ErrorCode::Inconclusive: return "Inconclusive";
    case ErrorCode::IncomparableClasses: return "IncomparableClasses";
    case ErrorCode::BadPrime: return "BadPrime";
    case ErrorCode::InvalidResidue: return "InvalidResidue";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NotCyclic: return "NotCyclic";
    case ErrorCode::NoKnownSeed: return "NoKnownSeed";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

std::string to_pq_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
  Rational q;
  if (text.empty() || q.set_str(text, 10) != 0) {
    fail(ErrorCode::ParseError, "not a rational: '" + text + "'");
  }
  if (q.get_den() == 0) fail(ErrorCode::ParseError, "zero denominator: '" + text + "'");
  q.canonicalize();
  return q;
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer round_nearest(const Rational& q) {
  // floor(q + 1/2)
  Rational shifted = q + Rational(1, 2);
  return floor_div(shifted.get_num(), shifted.get_den());
}

Integer lcm_denominator(const Integer& acc, const Rational& q) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), acc.get_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rational rational_pow(const Rational& base, unsigned exponent) {
  Rational result = 1;
  Rational b = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= b;
    b *= b;
    exponent >>= 1U;
  }
  return result;
}

Integer binomial(unsigned n, unsigned k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

bool is_probable_prime(unsigned long p) {
  if (p < 2) return false;
  for (unsigned long d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

}  // namespace hitbend
