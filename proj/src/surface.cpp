#include "solenoid/surface.hpp"

#include <charconv>

namespace solenoid {

SurfaceSignature SurfaceSignature::make(int genus, int punctures) {
  if (genus < 0 || punctures < 0)
    throw InputError("negative genus or puncture count");
  if (2 - 2 * genus - punctures >= 0)
    throw InputError("surface g" + std::to_string(genus) + "n" + std::to_string(punctures) +
                     " is not hyperbolic");
  return SurfaceSignature{genus, punctures};
}

SurfaceSignature SurfaceSignature::parse(std::string_view text) {
  auto bad = [&] { return InputError("malformed surface \"" + std::string(text) + "\""); };
  if (text.size() < 4 || text[0] != 'g') throw bad();
  auto npos = text.find('n');
  if (npos == std::string_view::npos) throw bad();
  int g = 0, n = 0;
  auto r1 = std::from_chars(text.data() + 1, text.data() + npos, g);
  auto r2 = std::from_chars(text.data() + npos + 1, text.data() + text.size(), n);
  if (r1.ec != std::errc() || r1.ptr != text.data() + npos || r2.ec != std::errc() ||
      r2.ptr != text.data() + text.size())
    throw bad();
  return make(g, n);
}

std::string SurfaceSignature::name() const {
  return "g" + std::to_string(genus) + "n" + std::to_string(punctures);
}

Presentation::Presentation(SurfaceSignature sig)
    : sig_(SurfaceSignature::make(sig.genus, sig.punctures)),
      rank_(sig.punctures == 0 ? 2 * sig.genus : 2 * sig.genus + sig.punctures - 1) {
  if (rank_ > 26) throw InputError("surface " + sig_.name() + " exceeds the 26-letter alphabet");
  for (int i = 0; i < sig_.genus; ++i) {
    Letter a = letter(2 * i), b = letter(2 * i + 1);
    relator_.insert(relator_.end(), {a, b, -a, -b});
  }
  if (closed()) {
    for (const Word& base : {relator_, inverse(relator_)})
      for (std::size_t k = 0; k < base.size(); ++k) cycles_.push_back(rotate(base, k));
    return;
  }
  const int n = sig_.punctures;
  Word prod = relator_;
  for (int j = 0; j + 1 < n; ++j) {
    Letter c = letter(2 * sig_.genus + j);
    peripherals_.push_back({c});
    prod.push_back(c);
  }
  peripherals_.push_back(inverse(prod));
}

std::string Presentation::generator_name(int k) const {
  if (k < 2 * sig_.genus) return std::string(1, k % 2 ? 'b' : 'a') + std::to_string(k / 2 + 1);
  return "c" + std::to_string(k - 2 * sig_.genus + 1);
}

}  // namespace solenoid
