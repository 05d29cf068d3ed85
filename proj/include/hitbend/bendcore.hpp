#pragma once

#include <optional>
#include <string>
#include <utility>

#include "hitbend/repkit.hpp"

namespace hitbend {

struct IntegralPower {
  unsigned long j = 1;
  NfMatrix power;    // M^j, integral
  Integer modulus;   // N clearing the denominators of P and P^{-1}
};

/// Smallest j > 0 with M^j integral. Requires det M = 1 and an integral
/// characteristic polynomial. The Frobenius form R is iterated mod N
/// alongside; R^j = I mod N before M^j turns integral is reported as
/// IntegralityViolated.
IntegralPower integral_power(const NfMatrix& m, unsigned long max_j = 200000);

enum class BendConstruction { UnitBlocks, IdentityBlocks, IrreducibleUnit };
std::string to_string(BendConstruction c);

struct BendChecks {
  bool centralizes = false;
  bool integral = false;
  bool det_one = false;
  /// The squarefree part s of charpoly(A) has distinct positive real roots
  /// and s(A) = 0, so A is diagonalizable with positive spectrum and has a
  /// real diagonalizable logarithm.
  bool positive_distinct_spectrum = false;
  bool non_reciprocal_charpoly = false;
};

/// All checks recomputed from A and rho(gamma) alone.
BendChecks recheck(const NfMatrix& a, const NfMatrix& rho_gamma);

/// Multiplicity of 1 as a root of charpoly(A).
int eigenvalue_one_multiplicity(const NfMatrix& a);

struct BendCertificate {
  NfMatrix a;
  NfMatrix a_prime;
  int curve = 0;  // generator index of a1
  BendChecks checks;
  BendConstruction construction = BendConstruction::UnitBlocks;
  Json parameters;
  int one_multiplicity = 0;

  /// Identity-block bends preserve reciprocity; they are accepted on the
  /// eigenvalue-1 multiplicity witness instead.
  bool valid() const;
};

Json to_json(const BendCertificate& c);
BendCertificate bend_certificate_from_json(const Json& j);

/// Splits a squarefree charpoly into monic f1 * f2, both nonconstant, with
/// f2(0) = (-1)^deg f2. Subsets of irreducible factors are tried by size,
/// then index order; f2 is the chosen subset.
std::optional<std::pair<KPoly, KPoly>> unit_normalized_split(const KPoly& f);

BendCertificate bend_matrix_unit_blocks(const NfMatrix& rho_gamma, const NfElement& u, const KPoly& f1,
                                        const KPoly& f2);
/// For odd n the charpoly is (t-1) f1 f2 and the (t-1) part joins the
/// identity block.
BendCertificate bend_matrix_identity_blocks(const NfMatrix& rho_gamma, const KPoly& f1, const KPoly& f2);
BendCertificate bend_matrix_irreducible(const NfMatrix& rho_gamma, int height_bound);

/// b1 -> rho(b1) * A.
SurfaceRep apply_bend(const SurfaceRep& rep, const BendCertificate& cert);

}  // namespace hitbend
