#include "hitbend/surfgrp.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace hitbend {

// ------------------------------------------------------------------- words

Word free_reduce(const Word& w) {
  Word out;
  for (const auto& l : w) {
    if (!out.empty() && out.back().gen == l.gen && out.back().exp == -l.exp)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

Word inverse(const Word& w) {
  Word out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->gen, -it->exp});
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return free_reduce(out);
}

Word commutator(const Word& x, const Word& y) {
  return concat(concat(x, y), concat(inverse(x), inverse(y)));
}

bool word_less(const Word& a, const Word& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [](const Letter& x, const Letter& y) {
                                        return column_of(x) < column_of(y);
                                      });
}

namespace {

Word cyclic_reduce(Word w) {
  w = free_reduce(w);
  while (w.size() >= 2 && w.front().gen == w.back().gen && w.front().exp == -w.back().exp) {
    w.erase(w.begin());
    w.pop_back();
  }
  return w;
}

bool is_rotation(const Word& a, const Word& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  for (std::size_t s = 0; s < a.size(); ++s) {
    bool ok = true;
    for (std::size_t i = 0; i < a.size() && ok; ++i) ok = a[(i + s) % a.size()] == b[i];
    if (ok) return true;
  }
  return false;
}

bool single_letters(const Presentation& p) {
  for (const auto& g : p.generators)
    if (g.size() != 1 || g[0] < 'a' || g[0] > 'z') return false;
  return true;
}

}  // namespace

bool is_relator_conjugate(const Word& w, const Presentation& p) {
  const Word c = cyclic_reduce(w);
  if (c.empty()) return false;
  for (const auto& r : p.relators) {
    const Word rc = cyclic_reduce(r);
    if (is_rotation(c, rc) || is_rotation(c, inverse(rc))) return true;
  }
  return false;
}

std::string Presentation::spell(const Word& w) const {
  std::string out;
  if (single_letters(*this)) {
    for (const auto& l : w) {
      char c = generators[static_cast<std::size_t>(l.gen)][0];
      out += l.exp > 0 ? c : static_cast<char>(c - 'a' + 'A');
    }
    return out;
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += '*';
    out += generators[static_cast<std::size_t>(w[i].gen)];
    if (w[i].exp < 0) out += "^-1";
  }
  return out;
}

Word Presentation::parse(const std::string& text) const {
  Word w;
  auto find = [&](const std::string& name) {
    for (std::size_t i = 0; i < generators.size(); ++i)
      if (generators[i] == name) return static_cast<int>(i);
    fail(ErrorCode::ParseError, "unknown generator '" + name + "'");
  };
  if (single_letters(*this)) {
    for (char c : text) {
      const bool inv = c >= 'A' && c <= 'Z';
      const char lower = inv ? static_cast<char>(c - 'A' + 'a') : c;
      w.push_back({find(std::string(1, lower)), inv ? -1 : 1});
    }
    return free_reduce(w);
  }
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, '*')) {
    if (token.empty()) continue;
    int exp = 1;
    if (token.size() > 3 && token.substr(token.size() - 3) == "^-1") {
      exp = -1;
      token.resize(token.size() - 3);
    }
    w.push_back({find(token), exp});
  }
  return free_reduce(w);
}

Presentation Presentation::triangle(int l, int m, int n) {
  Presentation p;
  p.generators = {"a", "b"};
  p.relators.push_back(Word(static_cast<std::size_t>(l), Letter{0, 1}));
  p.relators.push_back(Word(static_cast<std::size_t>(m), Letter{1, 1}));
  Word ab;
  for (int i = 0; i < n; ++i) {
    ab.push_back({0, 1});
    ab.push_back({1, 1});
  }
  p.relators.push_back(ab);
  return p;
}

Presentation Presentation::surface(int genus) {
  require(genus >= 1, ErrorCode::PreconditionViolated, "genus must be >= 1");
  Presentation p;
  Word r;
  for (int i = 1; i <= genus; ++i) {
    p.generators.push_back("a" + std::to_string(i));
    p.generators.push_back("b" + std::to_string(i));
    r = concat(r, commutator({{2 * i - 2, 1}}, {{2 * i - 1, 1}}));
  }
  p.relators.push_back(r);
  return p;
}

Presentation Presentation::cyclic(int order) {
  Presentation p;
  p.generators = {"a"};
  p.relators.push_back(Word(static_cast<std::size_t>(order), Letter{0, 1}));
  return p;
}

// ------------------------------------------------------------ coset tables

CosetTable CosetTable::from_permutations(const std::vector<std::vector<int>>& perms) {
  require(!perms.empty(), ErrorCode::PreconditionViolated, "no permutations");
  const std::size_t n = perms[0].size();
  std::vector<std::vector<int>> rows(n, std::vector<int>(2 * perms.size()));
  for (std::size_t g = 0; g < perms.size(); ++g)
    for (std::size_t x = 0; x < n; ++x) {
      const int y = perms[g][x];
      rows[x][2 * g] = y;
      rows[static_cast<std::size_t>(y)][2 * g + 1] = static_cast<int>(x);
    }
  return CosetTable(static_cast<int>(perms.size()), std::move(rows));
}

int CosetTable::act(int coset, const Word& w) const {
  for (const auto& l : w) coset = at(coset, column_of(l));
  return coset;
}

std::vector<int> CosetTable::permutation(const Word& w) const {
  std::vector<int> out(static_cast<std::size_t>(index()));
  for (int c = 0; c < index(); ++c) out[static_cast<std::size_t>(c)] = act(c, w);
  return out;
}

namespace {

class Enumerator {
 public:
  Enumerator(int columns, int max_cosets) : columns_(columns), max_(max_cosets) { add_row(); }

  void scan_and_fill(int c, const std::vector<int>& w) {
    if (w.empty()) return;
    int f = c, b = c;
    int i = 0, j = static_cast<int>(w.size()) - 1;
    while (true) {
      while (i <= j && table_[f][w[i]] >= 0) f = table_[f][w[i++]];
      if (i > j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j >= i && table_[b][inv(w[j])] >= 0) b = table_[b][inv(w[j--])];
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        table_[f][w[i]] = b;
        table_[b][inv(w[i])] = f;
        return;
      }
      define(f, w[i]);
    }
  }

  void run(const std::vector<std::vector<int>>& relators) {
    for (std::size_t c = 0; c < table_.size(); ++c) {
      const int cc = static_cast<int>(c);
      for (const auto& r : relators) {
        if (parent_[c] != cc) break;
        scan_and_fill(cc, r);
      }
      if (parent_[c] != cc) continue;
      for (int x = 0; x < columns_; ++x)
        if (table_[c][static_cast<std::size_t>(x)] < 0) define(cc, x);
    }
  }

  CosetTable compact(int generators) const {
    std::vector<int> renumber(table_.size(), -1);
    int next = 0;
    for (std::size_t c = 0; c < table_.size(); ++c)
      if (parent_[c] == static_cast<int>(c)) renumber[c] = next++;
    std::vector<std::vector<int>> rows;
    for (std::size_t c = 0; c < table_.size(); ++c) {
      if (renumber[c] < 0) continue;
      std::vector<int> row;
      for (int x = 0; x < columns_; ++x)
        row.push_back(renumber[static_cast<std::size_t>(table_[c][static_cast<std::size_t>(x)])]);
      rows.push_back(std::move(row));
    }
    return CosetTable(generators, std::move(rows));
  }

 private:
  static int inv(int x) { return x ^ 1; }

  void add_row() {
    table_.emplace_back(static_cast<std::size_t>(columns_), -1);
    parent_.push_back(static_cast<int>(table_.size()) - 1);
  }

  void define(int c, int x) {
    if (static_cast<int>(table_.size()) >= max_)
      fail(ErrorCode::Overflow, "coset table exceeded " + std::to_string(max_) + " cosets");
    add_row();
    const int k = static_cast<int>(table_.size()) - 1;
    table_[static_cast<std::size_t>(c)][static_cast<std::size_t>(x)] = k;
    table_[static_cast<std::size_t>(k)][static_cast<std::size_t>(inv(x))] = c;
  }

  int rep(int c) {
    int r = c;
    while (parent_[static_cast<std::size_t>(r)] != r) r = parent_[static_cast<std::size_t>(r)];
    while (parent_[static_cast<std::size_t>(c)] != r) {
      const int next = parent_[static_cast<std::size_t>(c)];
      parent_[static_cast<std::size_t>(c)] = r;
      c = next;
    }
    return r;
  }

  void merge(int a, int b, std::deque<int>& queue) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[static_cast<std::size_t>(b)] = a;
    queue.push_back(b);
  }

  void coincidence(int a, int b) {
    std::deque<int> queue;
    merge(a, b, queue);
    while (!queue.empty()) {
      const int e = queue.front();
      queue.pop_front();
      for (int x = 0; x < columns_; ++x) {
        const int f = table_[static_cast<std::size_t>(e)][static_cast<std::size_t>(x)];
        if (f < 0) continue;
        auto& back = table_[static_cast<std::size_t>(f)][static_cast<std::size_t>(inv(x))];
        if (back == e) back = -1;
        const int e1 = rep(e), f1 = rep(f);
        auto& fwd = table_[static_cast<std::size_t>(e1)][static_cast<std::size_t>(x)];
        auto& bwd = table_[static_cast<std::size_t>(f1)][static_cast<std::size_t>(inv(x))];
        if (fwd >= 0) {
          merge(f1, fwd, queue);
        } else if (bwd >= 0) {
          merge(e1, bwd, queue);
        } else {
          fwd = f1;
          bwd = e1;
        }
      }
    }
  }

  int columns_;
  int max_;
  std::vector<std::vector<int>> table_;
  std::vector<int> parent_;
};

std::vector<int> columns(const Word& w) {
  std::vector<int> out;
  for (const auto& l : w) out.push_back(column_of(l));
  return out;
}

}  // namespace

CosetTable todd_coxeter(const Presentation& p, const std::vector<Word>& subgroup_gens,
                        int max_cosets) {
  require(max_cosets >= 1, ErrorCode::PreconditionViolated, "max_cosets must be >= 1");
  Enumerator e(2 * p.rank(), max_cosets);
  for (const auto& w : subgroup_gens) e.scan_and_fill(0, columns(w));
  std::vector<std::vector<int>> rels;
  for (const auto& r : p.relators) rels.push_back(columns(r));
  e.run(rels);
  return e.compact(p.rank());
}

namespace {

std::vector<int> cycle_lengths(const std::vector<int>& perm) {
  std::vector<int> out;
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
      seen[j] = true;
      ++len;
    }
    out.push_back(len);
  }
  return out;
}

bool all_cycles(const std::vector<int>& perm, int length) {
  for (int l : cycle_lengths(perm))
    if (l != length) return false;
  return true;
}

/// Order of a word that appears as a pure power relator, e.g. a^3.
std::vector<std::pair<Word, int>> elliptic_relators(const Presentation& p) {
  std::vector<std::pair<Word, int>> out;
  for (const auto& r : p.relators) {
    // r = u^k for the shortest such u
    for (std::size_t len = 1; len <= r.size(); ++len) {
      if (r.size() % len) continue;
      bool periodic = true;
      for (std::size_t i = len; i < r.size() && periodic; ++i) periodic = r[i] == r[i - len];
      if (periodic) {
        out.emplace_back(Word(r.begin(), r.begin() + static_cast<long>(len)),
                         static_cast<int>(r.size() / len));
        break;
      }
    }
  }
  return out;
}

}  // namespace

bool torsion_free_check(const CosetTable& table, const Presentation& p) {
  for (const auto& [w, order] : elliptic_relators(p))
    if (!all_cycles(table.permutation(w), order)) return false;
  return true;
}

SchreierResult schreier_data(const CosetTable& table, const Presentation& p) {
  const int n = table.index();
  std::vector<Word> transversal(static_cast<std::size_t>(n));
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<std::vector<bool>> tree(static_cast<std::size_t>(n),
                                      std::vector<bool>(static_cast<std::size_t>(2 * p.rank()), false));
  std::deque<int> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const int c = queue.front();
    queue.pop_front();
    for (int x = 0; x < 2 * p.rank(); ++x) {
      const int d = table.at(c, x);
      if (seen[static_cast<std::size_t>(d)]) continue;
      seen[static_cast<std::size_t>(d)] = true;
      transversal[static_cast<std::size_t>(d)] =
          concat(transversal[static_cast<std::size_t>(c)], {{x / 2, (x % 2) ? -1 : 1}});
      tree[static_cast<std::size_t>(c)][static_cast<std::size_t>(x)] = true;
      queue.push_back(d);
    }
  }
  SchreierResult out;
  for (int c = 0; c < n; ++c)
    for (int g = 0; g < p.rank(); ++g) {
      ++out.before_reduction;
      const int d = table.at(c, 2 * g);
      Word w = concat(concat(transversal[static_cast<std::size_t>(c)], {{g, 1}}),
                      inverse(transversal[static_cast<std::size_t>(d)]));
      if (w.empty()) continue;
      ++out.nontrivial;
      if (is_relator_conjugate(w, p)) continue;
      bool duplicate = false;
      for (const auto& existing : out.generators)
        if (existing == w || existing == inverse(w)) duplicate = true;
      if (!duplicate) out.generators.push_back(std::move(w));
    }
  return out;
}

std::vector<Word> schreier_generators(const CosetTable& table, const Presentation& p) {
  return schreier_data(table, p).generators;
}

// ------------------------------------------------- index-12 representation

std::array<std::vector<int>, 2> find_index12_representation() {
  constexpr int n = 12;
  std::vector<int> alpha(n);
  for (int i = 0; i < n; ++i) alpha[static_cast<std::size_t>(i)] = (i % 3 == 2) ? i - 2 : i + 1;
  std::vector<int> beta(n, -1);
  std::array<std::vector<int>, 2> result;
  bool found = false;

  auto accept = [&]() {
    std::vector<int> ab(n);
    for (int x = 0; x < n; ++x) ab[static_cast<std::size_t>(x)] = beta[static_cast<std::size_t>(alpha[static_cast<std::size_t>(x)])];
    if (!all_cycles(ab, 4)) return false;
    std::vector<bool> seen(n, false);
    std::vector<int> stack{0};
    seen[0] = true;
    int count = 1;
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      for (int y : {alpha[static_cast<std::size_t>(x)], beta[static_cast<std::size_t>(x)]})
        if (!seen[static_cast<std::size_t>(y)]) {
          seen[static_cast<std::size_t>(y)] = true;
          ++count;
          stack.push_back(y);
        }
    }
    return count == n;
  };

  // Four-cycles (x y z w) with x the smallest unused point, (y, z, w) in
  // lexicographic order.
  std::function<void()> place = [&]() {
    if (found) return;
    int x = -1;
    for (int i = 0; i < n; ++i)
      if (beta[static_cast<std::size_t>(i)] < 0) {
        x = i;
        break;
      }
    if (x < 0) {
      if (accept()) {
        found = true;
        result = {alpha, beta};
      }
      return;
    }
    std::vector<int> free;
    for (int i = x + 1; i < n; ++i)
      if (beta[static_cast<std::size_t>(i)] < 0) free.push_back(i);
    for (int y : free)
      for (int z : free)
        for (int w : free) {
          if (y == z || y == w || z == w) continue;
          beta[static_cast<std::size_t>(x)] = y;
          beta[static_cast<std::size_t>(y)] = z;
          beta[static_cast<std::size_t>(z)] = w;
          beta[static_cast<std::size_t>(w)] = x;
          place();
          if (found) return;
          for (int v : {x, y, z, w}) beta[static_cast<std::size_t>(v)] = -1;
        }
  };
  place();
  require(found, ErrorCode::NotFoundWithinBound, "no index-12 representation found");
  return result;
}

// ------------------------------------------------------- surface tuple

NfMatrix evaluate(const Word& w, const std::vector<NfMatrix>& images,
                  const std::vector<NfMatrix>& inverses) {
  NfMatrix acc = NfMatrix::identity(images.at(0).ring(), images[0].rows());
  for (const auto& l : w)
    acc = acc * (l.exp > 0 ? images[static_cast<std::size_t>(l.gen)] : inverses[static_cast<std::size_t>(l.gen)]);
  return acc;
}

namespace {

/// Key identifying +-M.
std::string projective_key(const NfMatrix& m) {
  bool negate = false;
  for (const auto& x : m.data())
    if (!x.is_zero()) {
      negate = lex_less(x, -x);
      break;
    }
  std::string key;
  for (const auto& x : m.data()) {
    const NfElement y = negate ? -x : x;
    for (const auto& c : y.coeffs()) key += to_pq_string(c) + ",";
    key += ";";
  }
  return key;
}

NfMatrix commutator_matrix(const NfMatrix& x, const NfMatrix& y) {
  return x * y * inverse(x) * inverse(y);
}

}  // namespace

SurfaceTuple find_surface_tuple(const Presentation& p, const CosetTable& table,
                                const std::vector<NfMatrix>& images, int length_bound) {
  require(length_bound > 0, ErrorCode::NotFoundWithinBound, "length bound 0 admits no tuple");
  std::vector<NfMatrix> inverses;
  for (const auto& m : images) inverses.push_back(inverse(m));

  struct Element {
    Word word;
    NfMatrix matrix;
    int coset;
  };
  const NfMatrix id = NfMatrix::identity(images[0].ring(), images[0].rows());
  std::map<std::string, bool> seen{{projective_key(id), true}};
  std::vector<Element> frontier{{Word{}, id, 0}};
  std::vector<Element> subgroup;
  for (int len = 1; len <= length_bound; ++len) {
    std::vector<Element> next;
    for (const auto& e : frontier)
      for (int x = 0; x < 2 * p.rank(); ++x) {
        const Letter l{x / 2, (x % 2) ? -1 : 1};
        if (!e.word.empty() && e.word.back().gen == l.gen && e.word.back().exp == -l.exp) continue;
        NfMatrix m = e.matrix * (l.exp > 0 ? images[static_cast<std::size_t>(l.gen)] : inverses[static_cast<std::size_t>(l.gen)]);
        if (!seen.emplace(projective_key(m), true).second) continue;
        Word w = e.word;
        w.push_back(l);
        const int coset = table.at(e.coset, x);
        if (coset == 0) subgroup.push_back({w, m, coset});
        next.push_back({std::move(w), std::move(m), coset});
      }
    frontier = std::move(next);
  }

  std::map<std::string, std::vector<std::pair<std::size_t, std::size_t>>> by_commutator;
  std::map<std::string, std::string> inverse_key;
  const std::string id_key = projective_key(id);
  for (std::size_t i = 0; i < subgroup.size(); ++i)
    for (std::size_t j = 0; j < subgroup.size(); ++j) {
      if (i == j) continue;
      NfMatrix c = commutator_matrix(subgroup[i].matrix, subgroup[j].matrix);
      std::string key = projective_key(c);
      if (key == id_key) continue;
      auto [it, inserted] = by_commutator.try_emplace(key);
      it->second.emplace_back(i, j);
      if (inserted) inverse_key[key] = projective_key(inverse(c));
    }

  struct Candidate {
    std::size_t total;
    std::array<std::size_t, 4> idx;
  };
  std::vector<Candidate> candidates;
  for (const auto& [key, pairs] : by_commutator) {
    auto other = by_commutator.find(inverse_key[key]);
    if (other == by_commutator.end()) continue;
    for (const auto& [i, j] : pairs)
      for (const auto& [k, l] : other->second) {
        std::array<std::size_t, 4> idx{i, j, k, l};
        std::array<std::size_t, 4> sorted = idx;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
        std::size_t total = 0;
        for (auto t : idx) total += subgroup[t].word.size();
        candidates.push_back({total, idx});
      }
  }
  std::sort(candidates.begin(), candidates.end(), [&](const Candidate& a, const Candidate& b) {
    if (a.total != b.total) return a.total < b.total;
    for (std::size_t t = 0; t < 4; ++t) {
      const Word& wa = subgroup[a.idx[t]].word;
      const Word& wb = subgroup[b.idx[t]].word;
      if (word_less(wa, wb)) return true;
      if (word_less(wb, wa)) return false;
    }
    return false;
  });

  SurfaceTuple out;
  for (const auto& c : candidates) {
    ++out.candidates_tried;
    std::vector<Word> words;
    for (auto t : c.idx) words.push_back(subgroup[t].word);
    try {
      if (todd_coxeter(p, words, 4 * table.index() * 50).index() != table.index()) continue;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Overflow) throw;
      continue;
    }
    for (std::size_t t = 0; t < 4; ++t) out.words[t] = words[t];
    return out;
  }
  fail(ErrorCode::NotFoundWithinBound,
       "no generating surface tuple with words of length <= " + std::to_string(length_bound));
}

// ---------------------------------------------------------------- HNN data

HnnSplitting HnnSplitting::along_a1(int genus) {
  require(genus >= 2, ErrorCode::PreconditionViolated, "HNN splitting along a1 needs genus >= 2");
  HnnSplitting h;
  h.genus = genus;
  h.curve = {{0, 1}};
  h.stable_letter = {{1, 1}};
  Word q;
  for (int i = 2; i <= genus; ++i) q = concat(q, commutator({{2 * i - 2, 1}}, {{2 * i - 1, 1}}));
  h.gamma1 = concat(q, h.curve);
  h.gamma2 = h.curve;
  h.subsurface_generators.push_back(h.curve);
  for (int g = 2; g < 2 * genus; ++g) h.subsurface_generators.push_back({{g, 1}});
  return h;
}

bool HnnSplitting::verify() const {
  const Word lhs = concat(concat(stable_letter, gamma2), inverse(stable_letter));
  const Word w = concat(lhs, inverse(gamma1));
  return is_relator_conjugate(w, Presentation::surface(genus));
}

}  // namespace hitbend
