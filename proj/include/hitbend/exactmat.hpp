#pragma once

#include <vector>

#include "hitbend/matrix.hpp"
#include "hitbend/polyring.hpp"

namespace hitbend {

bool is_integral(const NfMatrix& m);
/// Least common denominator of all entries.
Integer denominator(const NfMatrix& m);
NfMatrix to_k(const QMatrix& m, const FieldPtr& field);
NfMatrix from_ints(const FieldPtr& field, const std::vector<std::vector<long>>& rows);

/// P * M * P^{-1} = blockdiag(companion(blocks[i])); each block divides the
/// next.
struct FrobeniusForm {
  NfMatrix p;
  std::vector<KPoly> blocks;
};

FrobeniusForm frobenius_form(const NfMatrix& m);

/// P * M * P^{-1} = blockdiag(blocks[i]) where block i is M restricted to
/// ker f_i(M), written in its own Frobenius basis. The f_i must be pairwise
/// coprime with product charpoly(M).
struct CoprimeSplit {
  NfMatrix p;
  std::vector<NfMatrix> blocks;
  std::vector<KPoly> factors;
};

CoprimeSplit split_by_coprime_factors(const NfMatrix& m, const std::vector<KPoly>& factors);

std::vector<NfMatrix> centralizer_space(const NfMatrix& m);

struct FormSpace {
  std::vector<NfMatrix> symmetric;
  std::vector<NfMatrix> alternating;

  std::size_t dim() const { return symmetric.size() + alternating.size(); }
  std::vector<NfMatrix> basis() const;
};

/// Solution space of g^T J g = J for all g, re-verified before returning.
FormSpace invariant_form_space(const std::vector<NfMatrix>& gens);

/// P^{-1} * blockdiag(blocks) * P.
NfMatrix block_assemble(const NfMatrix& p, const std::vector<NfMatrix>& blocks);

}  // namespace hitbend
