#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hitbend/serialize.hpp"
#include "hitbend/surfgrp.hpp"

namespace hitbend {

// ------------------------------------------------------------ triangle seed

/// Images of the triangle generators alpha, beta, gamma in SL(2, Z[sqrt2]).
std::array<NfMatrix, 3> triangle_seed();

struct TriangleSeedCheck {
  bool alpha_cubed_minus_identity = false;
  bool beta_fourth_minus_identity = false;
  bool gamma_fourth_minus_identity = false;
  bool product_plus_minus_identity = false;
  bool all() const {
    return alpha_cubed_minus_identity && beta_fourth_minus_identity && gamma_fourth_minus_identity &&
           product_plus_minus_identity;
  }
};
TriangleSeedCheck verify_triangle_seed(const std::array<NfMatrix, 3>& seed);

/// Symmetric-power representation on x^{n-1-i} y^i, i = 0..n-1.
NfMatrix tau_n(const NfMatrix& m, int n);

// --------------------------------------------------------- genus-2 subgroup

struct Genus2Tuple {
  Presentation triangle = Presentation::triangle(3, 4, 4);
  std::array<std::vector<int>, 2> permutations;
  std::array<Word, 4> words;  // a1, b1, a2, b2
};

/// Finds the tuple from scratch (permutation search plus word search).
Genus2Tuple search_genus2_tuple(int length_bound);
Json to_json(const Genus2Tuple& t);
/// Loads and re-verifies: permutation relations, transitivity, torsion
/// freeness, subgroup membership, re-enumerated index, matrix relator.
Genus2Tuple load_genus2_tuple(const std::string& path);
/// Throws on any failed check.
void verify_genus2_tuple(const Genus2Tuple& t);

// ---------------------------------------------------------- surface reps

struct ProvenanceEntry {
  std::string operation;
  Json parameters;
  std::string input_hash;
};

struct SurfaceRep {
  int genus = 2;
  FieldPtr field;
  int n = 2;
  std::vector<NfMatrix> images;  // a1, b1, ..., ag, bg
  std::vector<ProvenanceEntry> provenance;

  Presentation presentation() const { return Presentation::surface(genus); }
  NfMatrix image(const Word& w) const;
  NfMatrix relator_value() const;
  bool relator_holds() const;
  bool determinants_one() const;
  bool integral() const;
  /// Throws RelatorBroken unless the relator is I and every det is 1.
  void verify() const;
  /// New rep with these images and one more provenance entry.
  SurfaceRep derived(const std::string& operation, Json parameters, std::vector<NfMatrix> new_images) const;
};

Json to_json(const SurfaceRep& rep);
SurfaceRep surface_rep_from_json(const Json& j);
/// Hash of the generator images and field only.
std::string rep_hash(const SurfaceRep& rep);

/// Fuchsian genus-2 rep in SL(2, Z[sqrt2]), lifted so that rho(a1) has
/// positive trace.
SurfaceRep fuchsian_genus2_rep(const Genus2Tuple& tuple);
SurfaceRep tau_n(const SurfaceRep& rep, int n);
SurfaceRep twist_by_character(const SurfaceRep& rep, const std::vector<int>& signs);

/// Conjugates a rep over a quadratic field into one with rational entries,
/// using the rational span of the orbit of the fixed line of rho(a1).
SurfaceRep descend_to_rationals(const SurfaceRep& rep);

struct Integralization {
  NfMatrix p;  // p * rho * p^{-1} is integral
  SurfaceRep rep;
  int rounds = 0;
};

Integralization integralize(const SurfaceRep& rep, const Integer& denominator_bound);

struct LoxodromyReport {
  bool pass = true;
  std::size_t words_checked = 0;
  std::optional<Word> violator;
  std::string detail;
};

/// Every nontrivial reduced word up to the bound has a real spectrum with
/// distinct absolute values.
LoxodromyReport loxodromy_check(const Presentation& p, const std::vector<NfMatrix>& images, int word_bound);
LoxodromyReport loxodromy_check(const SurfaceRep& rep, int word_bound);

/// Reduced words of length 1..bound in shortlex order (x1 < X1 < x2 < ...).
std::vector<Word> reduced_words(int generators, int bound);

}  // namespace hitbend
