#include "solenoid/word.hpp"

#include <algorithm>

namespace solenoid {

Word parse_word(std::string_view text, int rank) {
  Word w;
  w.reserve(text.size());
  for (char ch : text) {
    if (ch == ' ' || ch == '1') continue;  // "1" spells the identity
    int gen = -1;
    bool inv = false;
    if (ch >= 'a' && ch <= 'z') {
      gen = ch - 'a';
    } else if (ch >= 'A' && ch <= 'Z') {
      gen = ch - 'A';
      inv = true;
    }
    if (gen < 0 || gen >= rank)
      throw InputError("unknown letter '" + std::string(1, ch) + "' in word \"" +
                       std::string(text) + "\"");
    w.push_back(letter(gen, inv));
  }
  return w;
}

std::string format_word(const Word& w) {
  std::string s;
  s.reserve(w.size());
  for (Letter x : w)
    s.push_back(static_cast<char>((x > 0 ? 'a' : 'A') + generator_of(x)));
  return s;
}

Word inverse(const Word& w) {
  Word r(w.rbegin(), w.rend());
  for (Letter& x : r) x = -x;
  return r;
}

Word concat(const Word& u, const Word& v) {
  Word r = u;
  r.insert(r.end(), v.begin(), v.end());
  return r;
}

Word power(const Word& w, long long e) {
  const Word base = e < 0 ? inverse(w) : w;
  Word r;
  for (long long i = 0; i < (e < 0 ? -e : e); ++i) r.insert(r.end(), base.begin(), base.end());
  return free_reduce(r);
}

Word free_reduce(const Word& w) {
  Word r;
  r.reserve(w.size());
  for (Letter x : w) {
    if (!r.empty() && r.back() == -x)
      r.pop_back();
    else
      r.push_back(x);
  }
  return r;
}

bool lex_less(const Word& u, const Word& v) {
  return std::lexicographical_compare(
      u.begin(), u.end(), v.begin(), v.end(),
      [](Letter x, Letter y) { return letter_key(x) < letter_key(y); });
}

std::size_t least_rotation(const Word& w) {
  const std::size_t n = w.size();
  std::size_t best = 0;
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      int x = letter_key(w[(k + i) % n]), y = letter_key(w[(best + i) % n]);
      if (x != y) {
        if (x < y) best = k;
        break;
      }
    }
  }
  return best;
}

Word rotate(const Word& w, std::size_t k) {
  if (w.empty()) return w;
  k %= w.size();
  Word r(w.begin() + static_cast<long>(k), w.end());
  r.insert(r.end(), w.begin(), w.begin() + static_cast<long>(k));
  return r;
}

Word canonical_rotation(const Word& w) { return rotate(w, least_rotation(w)); }

bool is_cyclically_reduced(const Word& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i] == -w[i + 1]) return false;
  return w.size() < 2 || w.front() != -w.back();
}

CyclicDecomposition cyclic_normalize(const Word& w) {
  Word r = free_reduce(w);
  std::size_t lo = 0, hi = r.size();
  while (hi - lo >= 2 && r[lo] == -r[hi - 1]) {
    ++lo;
    --hi;
  }
  Word u(r.begin(), r.begin() + static_cast<long>(lo));
  Word core(r.begin() + static_cast<long>(lo), r.begin() + static_cast<long>(hi));
  // core = x y with canonical rotation y x = x^-1 core x.
  std::size_t k = least_rotation(core);
  Word x(core.begin(), core.begin() + static_cast<long>(k));
  return {free_reduce(concat(u, x)), rotate(core, k)};
}

std::size_t primitive_period(const Word& w) {
  const std::size_t n = w.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p) continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = w[i] == w[i - p];
    if (ok) return p;
  }
  return n;
}

}  // namespace solenoid
