#pragma once

#include <optional>
#include <string>
#include <vector>

#include "solenoid/homology.hpp"
#include "solenoid/word_problem.hpp"

namespace solenoid {

// A free homotopy class of closed curves.
struct CurveClass {
  Word input;
  Word canonical;  // cyclic_reduce of the input
  Root root;
  std::optional<PeripheralMatch> peripheral;  // always empty when closed

  // Throws InputError for the trivial class.
  static CurveClass make(const Word& w, const Presentation& pres);
};

struct PullbackComponent {
  int base;    // least coset on the component
  int degree;  // least k with base . gamma^k = base
  Word lifted;  // t_base gamma^k t_base^-1, a loop at coset 0
  IntVector cycle;  // class in H_1 of the filled cover
};

// One component per cycle of gamma on cosets, ordered by base coset.
std::vector<PullbackComponent> pullback_components(const Word& gamma, const CoverHomology& h);

struct SubmoduleV {
  std::vector<IntVector> generators;  // one per component
  std::vector<IntVector> basis;       // row Hermite form of the span

  bool is_zero() const { return basis.empty(); }
};

SubmoduleV submodule_V(const std::vector<PullbackComponent>& components);
SubmoduleV submodule_V(const Word& gamma, const CoverHomology& h);

struct PairWitness {
  IntVector x, y;
  long long value;
};

// First basis pair (in lexicographic order of indices) with x^T M y != 0.
std::optional<PairWitness> pair_test(const SubmoduleV& v, const SubmoduleV& w, const IntMatrix& m);

// Deck transformations preserve the form and permute components
// transitively, so it suffices to pair the first component of gamma with
// every component of gamma'.  Returns the index into `others`.
struct ComponentWitness {
  std::size_t other;
  long long value;
};
std::optional<ComponentWitness> first_component_pairing(const PullbackComponent& first,
                                                         const std::vector<PullbackComponent>& others,
                                                         const IntMatrix& m);

// Unordered set of +-classes of the components; entries are normalized so the
// first nonzero coordinate is positive.
std::vector<IntVector> signed_class_set(const std::vector<PullbackComponent>& components);

}  // namespace solenoid
