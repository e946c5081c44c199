#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "solenoid/intmat.hpp"
#include "solenoid/surface.hpp"

namespace solenoid {

constexpr std::size_t kDefaultDegreeCap = 4096;

// Right action of the generators on cosets 0..degree-1; coset 0 is K itself.
struct QuotientMap {
  int prime = 2;
  int degree = 1;
  std::vector<std::vector<int>> perms;  // perms[x][i] = i . x

  bool operator==(const QuotientMap&) const = default;
};

QuotientMap identity_map(const Presentation& pres, int prime);

// Forward and inverse permutations for walking words on cosets.
class CosetAction {
 public:
  explicit CosetAction(const QuotientMap& q);
  int operator()(int coset, Letter x) const {
    const auto& t = x > 0 ? fwd_ : inv_;
    return t[static_cast<std::size_t>(generator_of(x))][static_cast<std::size_t>(coset)];
  }
  int walk(int coset, const Word& w) const {
    for (Letter x : w) coset = (*this)(coset, x);
    return coset;
  }

 private:
  std::vector<std::vector<int>> fwd_, inv_;
};

// "a:(01),b:()"; cycles may separate points with spaces or commas.
QuotientMap parse_cycle_map(std::string_view text, const Presentation& pres, int prime);
std::string format_cycle_map(const QuotientMap& q);

// Relabel cosets in breadth-first order from 0 (letter order a, A, b, B, ...).
// Equal subgroups yield equal maps.
QuotientMap canonicalize(const QuotientMap& q);

// "degree|perm_0|perm_1|..." with one-line permutations.
std::string canonical_serialization(const QuotientMap& q);

// Regular action of the permutation group generated by q (the coset action of
// the normal core).  Throws BudgetExhausted past `cap` elements.
QuotientMap normal_core(const QuotientMap& q, std::size_t cap);

bool is_prime(long long p);

struct SchreierGenerator {
  int coset;
  int generator;
  Word word;  // t_coset * x * t_{coset.x}^-1, freely reduced
};

enum class Normality { required, optional };

class CoverDescription {
 public:
  // Validates transitivity, the relator, p-power degree and, unless optional,
  // normality.  Deck data exists only for normal subgroups.
  CoverDescription(const Presentation& pres, QuotientMap q, Normality normality = Normality::required);

  const Presentation& presentation() const { return pres_; }
  const QuotientMap& quotient() const { return q_; }
  int degree() const { return q_.degree; }
  int prime() const { return q_.prime; }
  int rank() const { return pres_.rank(); }
  const CosetAction& action() const { return action_; }

  // Breadth-first Schreier tree: parent . entering == coset.
  int parent(int coset) const { return parent_[static_cast<std::size_t>(coset)]; }
  Letter entering(int coset) const { return entering_[static_cast<std::size_t>(coset)]; }
  const std::vector<int>& bfs_order() const { return order_; }
  Word tree_word(int coset) const;

  int edge_id(int coset, int gen) const { return coset * rank() + gen; }
  int edge_count() const { return degree() * rank(); }
  // Index into schreier_generators(), or -1 for a tree edge.
  int schreier_index(int edge) const { return schreier_of_edge_[static_cast<std::size_t>(edge)]; }
  const std::vector<SchreierGenerator>& schreier_generators() const { return schreier_; }

  // Deck element j maps coset i to j . t_i.
  int deck(int j, int i) const {
    return deck_[static_cast<std::size_t>(j) * static_cast<std::size_t>(degree()) + static_cast<std::size_t>(i)];
  }

  bool normal() const { return !deck_.empty(); }

  int cover_genus() const { return genus_; }
  int cover_punctures() const { return punctures_; }

  // Cycles of the c_i permutation for each base puncture, each starting at its
  // least coset.
  const std::vector<std::vector<std::vector<int>>>& boundary_orbits() const { return orbits_; }

  std::vector<int> word_permutation(const Word& w) const;
  // Reidemeister-Schreier rewriting; letters are +-(index+1).  Throws
  // InputError when w does not fix coset 0.
  Word rewrite(const Word& w) const;
  // Expands a rewritten word back into the base alphabet.
  Word expand(const Word& schreier_word) const;

 private:
  Presentation pres_;
  QuotientMap q_;
  CosetAction action_;
  std::vector<int> parent_;
  std::vector<Letter> entering_;
  std::vector<int> order_;
  std::vector<int> schreier_of_edge_;
  std::vector<SchreierGenerator> schreier_;
  std::vector<int> deck_;
  int genus_ = 0, punctures_ = 0;
  std::vector<std::vector<std::vector<int>>> orbits_;
};

// H_1(K; F_p) for the subgroup K of a cover: the image of each Schreier
// generator in F_p^rank.  For closed surfaces the lifted relators are factored out.
struct AbelianQuotient {
  std::size_t rank = 0;
  std::vector<IntVector> images;
};
AbelianQuotient h1_mod_p(const CoverDescription& cover, int p);

// Pi acting on pairs (i, v), v in (Z/p)^k: (i, v) . x = (i . x, v + image(i, x)),
// images indexed by Schreier generator, zero on tree edges.  Returns the
// canonical normal core, or with take_core = false the canonical action itself.
QuotientMap abelian_extension(const CoverDescription& cover, const std::vector<IntVector>& images,
                              int p, std::size_t cap, bool take_core = true);

// (i, j) . x = (i . x, j . inner(s_{i,x})) with inner acting through Schreier
// generators; returns the canonical normal core.
QuotientMap compose_covers(const CoverDescription& outer, const QuotientMap& inner, std::size_t cap);

// Kernel of K -> H_1(K; F_p) as a Pi-action.
QuotientMap frattini_kernel(const CoverDescription& cover, int p, std::size_t cap);
// Kernel of Pi -> H_1(Pi; F_p); with fill_punctures the c_j are sent to zero.
QuotientMap frattini_kernel(const Presentation& pres, int p, bool fill_punctures, std::size_t cap);

// Nonzero functionals F_p^rank -> F_p up to scalars, leading coefficient 1,
// in lexicographic order.
std::vector<IntVector> hyperplane_functionals(std::size_t rank, int p);
// The first `limit` of the functionals above, generated lazily.
std::vector<IntVector> leading_functionals(std::size_t rank, int p, std::size_t limit);
// (p^rank - 1) / (p - 1), saturating at SIZE_MAX.
std::size_t hyperplane_count(std::size_t rank, int p);
// Functionals on H_1(K; F_p) fixed by the deck group (their kernels are
// normal in Pi), up to scalars with leading coefficient 1, at most `limit`.
std::vector<IntVector> invariant_functionals(const CoverDescription& cover, const AbelianQuotient& aq, int p,
                                             std::size_t limit);
std::vector<QuotientMap> enumerate_index_p_kernels(const Presentation& pres, int p);

}  // namespace solenoid
