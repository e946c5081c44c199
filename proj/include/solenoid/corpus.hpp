#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "solenoid/surface.hpp"

namespace solenoid {

// An endomorphism of the free group on the generators, given by images.
struct FreeMap {
  std::string name;
  std::vector<Word> images;

  Word apply(const Word& w) const;
};

// True iff w is primitive in the free group of rank 2 (Whitehead reduction
// to a single letter).
bool is_primitive_f2(const Word& w);

// Exact simplicity test on S_{1,1}: primitive classes and the puncture loop
// [a,b]^{+-1} are simple; proper powers are not.  Throws InputError on other
// surfaces or the trivial word.
bool ptorus_simple_oracle(const Word& curve, const Presentation& pres);

// Automorphisms induced by homeomorphisms: handle twists, handle swaps,
// twists across adjacent handles, puncture braids, and their inverses.  Each
// is checked at construction to fix the boundary product up to conjugacy and
// to permute the peripheral classes.
std::vector<FreeMap> mapping_class_generators(const Presentation& pres);

// The curve a1 when g >= 1, otherwise c1 c2.
Word standard_simple_curve(const Presentation& pres);

// Images of the standard curve under random words in the generators above;
// deterministic in the seed and simple by construction.
std::vector<Word> generate_simple_curves(const Presentation& pres, std::size_t count, std::uint64_t seed);

}  // namespace solenoid
