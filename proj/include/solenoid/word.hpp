#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace solenoid {

// A letter is +(k+1) for generator k and -(k+1) for its inverse.
using Letter = int;
using Word = std::vector<Letter>;

class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline int generator_of(Letter x) { return (x > 0 ? x : -x) - 1; }
inline Letter letter(int gen, bool inverse = false) {
  return inverse ? -(gen + 1) : gen + 1;
}

// Total order a < A < b < B < ...; canonical forms are defined by it.
inline int letter_key(Letter x) { return 2 * generator_of(x) + (x < 0 ? 1 : 0); }

// Lowercase letters are generators, uppercase their inverses.  `rank` bounds
// the alphabet; the offending token is named in the error.
Word parse_word(std::string_view text, int rank);
std::string format_word(const Word& w);

Word inverse(const Word& w);
Word concat(const Word& u, const Word& v);
Word power(const Word& w, long long e);
Word free_reduce(const Word& w);

struct CyclicDecomposition {
  Word conjugator;  // word = conjugator * core * conjugator^-1 (freely)
  Word core;        // cyclically reduced, canonical rotation
};

// Free and cyclic reduction followed by the least rotation.
CyclicDecomposition cyclic_normalize(const Word& w);

bool lex_less(const Word& u, const Word& v);
// Index of the first least rotation of a cyclic sequence.
std::size_t least_rotation(const Word& w);
Word rotate(const Word& w, std::size_t k);
Word canonical_rotation(const Word& w);
bool is_cyclically_reduced(const Word& w);

// Smallest period dividing |w| (|w| when aperiodic).
std::size_t primitive_period(const Word& w);

}  // namespace solenoid
