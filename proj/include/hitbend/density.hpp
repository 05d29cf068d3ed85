#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hitbend/repkit.hpp"

namespace hitbend {

struct PrincipalTest {
  bool consistent = false;
  /// Trace s of the SL(2) element, or s^2 when `squared` (odd n, where
  /// the charpoly only sees s^2).
  std::optional<NfElement> s;
  bool squared = false;
  std::string reason;
};

/// Charpoly of tau_n(N) with tr N = s, as coefficient polynomials in s.
/// Index k holds the coefficient of t^k.
std::vector<QPoly> principal_charpoly_in_s(int n);

/// Does charpoly(M) equal charpoly(tau_n(N)) for some N in SL(2, K)?
/// Repeated eigenvalues refute directly.
PrincipalTest principal_sl2_test(const NfMatrix& m);

enum class ClosureClass { PrincipalSL2, Symplectic, SplitOrthogonal, FullSL };
std::string to_string(ClosureClass c);

struct ClosureCertificate {
  ClosureClass cls = ClosureClass::FullSL;
  int n = 0;
  std::size_t form_space_dim = 0;
  std::optional<NfMatrix> form;
  std::vector<Word> elements_tested;
  std::vector<std::pair<Word, NfElement>> s_values;
  std::optional<Word> refutation;
  std::vector<std::string> imported_theorems;
  std::string note;
};

Json to_json(const ClosureCertificate& c, const Presentation& p);

/// Classifies the Zariski closure from the invariant form space and the
/// principal-SL(2) spectral test on reduced words up to `word_bound`.
/// Throws G2Unsupported for n = 7 and Inconclusive when undecided.
ClosureCertificate certify_closure(const SurfaceRep& rep, int word_bound);

/// PrincipalSL2 < {Symplectic, SplitOrthogonal} < FullSL.
bool closure_strictly_increased(const ClosureCertificate& before, const ClosureCertificate& after);

/// g^T J g = J for every image and det J != 0.
bool form_preserved(const std::vector<NfMatrix>& images, const NfMatrix& j);

}  // namespace hitbend
