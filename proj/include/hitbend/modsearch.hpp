#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hitbend/fp_kernels.hpp"
#include "hitbend/repkit.hpp"

namespace hitbend {

class FpMatrix {
 public:
  FpMatrix() = default;
  FpMatrix(std::size_t n, std::uint32_t p);
  static FpMatrix identity(std::size_t n, std::uint32_t p);

  std::size_t n() const { return n_; }
  std::uint32_t p() const { return p_; }
  std::uint32_t& at(std::size_t i, std::size_t j) { return e_[i * n_ + j]; }
  std::uint32_t at(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }
  const std::vector<std::uint32_t>& entries() const { return e_; }

  /// Uses the runtime-selected kernel.
  FpMatrix operator*(const FpMatrix& o) const;
  FpMatrix multiply_with(const FpMatrix& o, kernels::MatmulFn fn) const;
  FpMatrix inverse() const;
  FpMatrix transpose() const;
  std::uint32_t det() const;
  FpPoly charpoly() const;
  /// Canonical byte encoding for hashing.
  std::string key() const;

  friend bool operator==(const FpMatrix& a, const FpMatrix& b) { return a.p_ == b.p_ && a.e_ == b.e_; }
  friend bool operator!=(const FpMatrix& a, const FpMatrix& b) { return !(a == b); }

 private:
  std::size_t n_ = 0;
  std::uint32_t p_ = 2;
  std::vector<std::uint32_t> e_;
};

struct ModPReduction {
  std::uint32_t p = 0;
  std::optional<std::uint32_t> residue;  // image of the field generator
  std::vector<FpMatrix> gens;
};

/// Entrywise reduction of an integral rep. Over a quadratic field only
/// split primes are supported: `residue` must be a root of the minimal
/// polynomial mod p. The relator is re-checked mod p.
ModPReduction reduce_mod_p(const SurfaceRep& rep, std::uint32_t p, std::optional<std::uint32_t> residue);
FpMatrix reduce_mod_p(const NfMatrix& m, std::uint32_t p, std::optional<std::uint32_t> residue);
/// Smallest root of the minimal polynomial mod p, if any.
std::optional<std::uint32_t> field_residue(const FieldPtr& field, std::uint32_t p);

enum class SearchMode { Full, OneSplit };

struct WordHit {
  Word word;
  FpPoly charpoly;
  std::size_t visited = 0;
};

/// Breadth-first search over reduced words in shortlex order, skipping
/// words whose matrix was already seen.
WordHit search_irreducible_word(const std::vector<FpMatrix>& gens, SearchMode mode, int word_bound);
bool charpoly_matches(const FpPoly& f, SearchMode mode);

struct BorelCount {
  std::uint64_t reducible = 0;
  std::uint64_t total = 0;
  bool bound_holds = false;
};

/// |Sp(2k, F_p)| from the order formula.
std::uint64_t symplectic_order(int k, std::uint32_t p);
/// Enumerates Sp(2k, F_p) as the closure of its transvections and counts
/// elements with reducible charpoly against (1 - 1/(3k)) |Sp(2k, F_p)|.
BorelCount borel_fraction_check(int k, std::uint32_t p, std::uint64_t max_order = 10'000'000);

}  // namespace hitbend
