#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "solenoid/word.hpp"

namespace solenoid {

struct SurfaceSignature {
  int genus = 0;
  int punctures = 0;

  // Rejects 2 - 2g - n >= 0.
  static SurfaceSignature make(int genus, int punctures);
  // "g1n1", "g2n0".
  static SurfaceSignature parse(std::string_view text);

  std::string name() const;
  int euler_characteristic() const { return 2 - 2 * genus - punctures; }
  bool operator==(const SurfaceSignature&) const = default;
};

// Generators a1,b1,...,ag,bg,c1,...,c_{n-1}, spelled a,b,c,... in text.
class Presentation {
 public:
  explicit Presentation(SurfaceSignature sig);

  const SurfaceSignature& signature() const { return sig_; }
  int genus() const { return sig_.genus; }
  int punctures() const { return sig_.punctures; }
  int rank() const { return rank_; }
  bool closed() const { return sig_.punctures == 0; }

  // Product of commutators; the defining relator when closed.
  const Word& relator() const { return relator_; }
  // All rotations of the relator and its inverse (closed surfaces only).
  const std::vector<Word>& relator_cycles() const { return cycles_; }
  // c_1..c_n with prod[a_i,b_i] c_1 ... c_n = 1.
  const std::vector<Word>& peripherals() const { return peripherals_; }

  Word parse(std::string_view text) const { return parse_word(text, rank_); }
  std::string format(const Word& w) const { return format_word(w); }
  std::string generator_name(int k) const;

 private:
  SurfaceSignature sig_;
  int rank_;
  Word relator_;
  std::vector<Word> cycles_;
  std::vector<Word> peripherals_;
};

}  // namespace solenoid
