#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hitbend/exactmat.hpp"

namespace hitbend {

struct Letter {
  int gen = 0;
  int exp = 1;  // +1 or -1
  friend bool operator==(const Letter&, const Letter&) = default;
};

/// Freely reduced word in the generators of a presentation.
using Word = std::vector<Letter>;

Word free_reduce(const Word& w);
Word inverse(const Word& w);
Word concat(const Word& a, const Word& b);
Word commutator(const Word& x, const Word& y);  // x y x^-1 y^-1
/// Column index used by coset tables: 2*gen for x, 2*gen+1 for x^-1.
inline int column_of(const Letter& l) { return 2 * l.gen + (l.exp < 0 ? 1 : 0); }
/// Order on letters: x1 < X1 < x2 < X2 < ...
bool word_less(const Word& a, const Word& b);

struct Presentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;

  int rank() const { return static_cast<int>(generators.size()); }
  /// Compact spelling: generator letter for x, upper case for x^-1, used
  /// when every generator name is a single lower-case letter; otherwise
  /// tokens "a1", "a1^-1" joined by '*'.
  std::string spell(const Word& w) const;
  Word parse(const std::string& text) const;

  static Presentation triangle(int l, int m, int n);  // <a,b | a^l, b^m, (ab)^n>
  static Presentation surface(int genus);             // [a1,b1]...[ag,bg]
  static Presentation cyclic(int order);               // <a | a^order>
};

/// True iff w is freely conjugate to a relator or a relator inverse.
bool is_relator_conjugate(const Word& w, const Presentation& p);

class CosetTable {
 public:
  CosetTable() = default;
  CosetTable(int generators, std::vector<std::vector<int>> rows)
      : generators_(generators), rows_(std::move(rows)) {}

  /// Coset table of the point stabilizer of 0 in a transitive permutation
  /// action (images of each generator, right action).
  static CosetTable from_permutations(const std::vector<std::vector<int>>& perms);

  int index() const { return static_cast<int>(rows_.size()); }
  int generators() const { return generators_; }
  int at(int coset, int column) const { return rows_[static_cast<std::size_t>(coset)][static_cast<std::size_t>(column)]; }
  /// Right action of a word on a coset.
  int act(int coset, const Word& w) const;
  bool contains(const Word& w) const { return act(0, w) == 0; }
  /// Permutation induced by a word.
  std::vector<int> permutation(const Word& w) const;

 private:
  int generators_ = 0;
  std::vector<std::vector<int>> rows_;
};

/// HLT coset enumeration; cosets renumbered in order of first definition.
CosetTable todd_coxeter(const Presentation& p, const std::vector<Word>& subgroup_gens,
                        int max_cosets);

/// For a triangle presentation: every cycle of a, b and ab has full length.
bool torsion_free_check(const CosetTable& table, const Presentation& p);

struct SchreierResult {
  std::vector<Word> generators;    // after elimination
  std::size_t before_reduction = 0;  // index * rank
  std::size_t nontrivial = 0;        // freely nontrivial ones
};

SchreierResult schreier_data(const CosetTable& table, const Presentation& p);
std::vector<Word> schreier_generators(const CosetTable& table, const Presentation& p);

/// Transitive permutation representations of Delta(3,4,4) of degree 12 with
/// every cycle of a, b, ab of full length; a is fixed as (0 1 2)(3 4 5)...
/// Returns the first (a, b) pair in the canonical enumeration order.
std::array<std::vector<int>, 2> find_index12_representation();

struct SurfaceTuple {
  std::array<Word, 4> words;  // a1, b1, a2, b2 as words in the triangle generators
  std::size_t candidates_tried = 0;
};

/// Search for four subgroup words satisfying the genus-2 relator projectively
/// and generating the subgroup (re-enumeration index equals table.index()).
SurfaceTuple find_surface_tuple(const Presentation& p, const CosetTable& table,
                                const std::vector<NfMatrix>& images, int length_bound);

/// Evaluate a word on generator images (inverses computed exactly).
NfMatrix evaluate(const Word& w, const std::vector<NfMatrix>& images,
                  const std::vector<NfMatrix>& inverses);

/// Cutting a genus-g surface along a1 with stable letter b1.
struct HnnSplitting {
  int genus = 2;
  Word curve;          // a1
  Word stable_letter;  // b1
  Word gamma1;         // [a2,b2]...[ag,bg] a1
  Word gamma2;         // a1
  std::vector<Word> subsurface_generators;

  static HnnSplitting along_a1(int genus);
  /// b1 a1 b1^-1 gamma1^-1 is a conjugate of the surface relator.
  bool verify() const;
};

}  // namespace hitbend
