#pragma once

#include <optional>
#include <vector>

#include "solenoid/surface.hpp"

namespace solenoid {

// Free reduction for n >= 1; Dehn's algorithm for closed surfaces.  The result
// is empty iff the input is trivial in the group.
Word dehn_reduce(const Word& w, const Presentation& pres);

// Canonical cyclic word of the conjugacy class after cyclic Dehn reduction.
// For n >= 1 this is the canonical cyclically reduced word.
Word cyclic_reduce(const Word& w, const Presentation& pres);

bool is_trivial(const Word& w, const Presentation& pres);

// Exact.  For closed surfaces, cyclic words reachable from u by relator-segment
// replacements within length max(|u|,|v|) + 2 are searched for v; throws
// BudgetExhausted when that set grows past the internal state bound.
bool conjugate_test(const Word& u, const Word& v, const Presentation& pres);

struct Root {
  Word root;  // canonical cyclic word
  int exponent = 1;
  // Closed surfaces: no proper-power representative was found, so exponent 1
  // is reported without a proof of maximality.
  bool heuristic = false;
};

Root extract_root(const Word& curve, const Presentation& pres);

struct PeripheralMatch {
  int puncture = 0;  // 1-based
  int exponent = 0;  // positive
  bool reversed = false;  // conjugate to c_i^-exponent
};

// Requires n >= 1.  Curves are unoriented, so c_i^-e also matches.
std::optional<PeripheralMatch> is_peripheral(const Word& curve, const Presentation& pres);

// Exponent sums over the generators, entries in [0, modulus) when modulus > 0.
std::vector<long long> abelianize(const Word& w, const Presentation& pres, long long modulus = 0);

}  // namespace solenoid
