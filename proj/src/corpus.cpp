#include "solenoid/corpus.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "solenoid/word_problem.hpp"

namespace solenoid {

namespace {

// Free cyclic normal form: equal iff conjugate in the free group.
Word free_cyclic(const Word& w) { return canonical_rotation(cyclic_normalize(free_reduce(w)).core); }

struct Move {
  std::string name;
  std::vector<Word> fwd, inv;
};

Word substitute(const std::vector<Word>& images, const Word& w) {
  Word out;
  for (Letter x : w) {
    const Word& img = images[static_cast<std::size_t>(generator_of(x))];
    Word piece = x > 0 ? img : inverse(img);
    out.insert(out.end(), piece.begin(), piece.end());
  }
  return free_reduce(out);
}

std::vector<Word> identity_images(int rank) {
  std::vector<Word> v;
  for (int k = 0; k < rank; ++k) v.push_back(Word{letter(k)});
  return v;
}

// x -> w x (left) or x w (right), with w free of x; inverse uses w^-1.
Move elementary(int rank, int x, const Word& w, bool left) {
  Move m{"", identity_images(rank), identity_images(rank)};
  Word gx{letter(x)};
  m.fwd[static_cast<std::size_t>(x)] = left ? concat(w, gx) : concat(gx, w);
  m.inv[static_cast<std::size_t>(x)] = left ? concat(inverse(w), gx) : concat(gx, inverse(w));
  return m;
}

// Apply `first`, then `second`.
Move then(const Move& first, const Move& second) {
  Move m{first.name, {}, {}};
  for (const Word& img : first.fwd) m.fwd.push_back(substitute(second.fwd, img));
  for (const Word& img : second.inv) m.inv.push_back(substitute(first.inv, img));
  return m;
}

bool induced_by_homeomorphism(const Presentation& pres, const std::vector<Word>& images) {
  if (pres.closed()) return free_cyclic(substitute(images, pres.relator())) == free_cyclic(pres.relator());
  std::vector<Word> classes;
  for (const Word& c : pres.peripherals()) classes.push_back(free_cyclic(c));
  for (const Word& c : pres.peripherals()) {
    Word img = free_cyclic(substitute(images, c));
    if (std::find(classes.begin(), classes.end(), img) == classes.end()) return false;
  }
  return true;
}

}  // namespace

Word FreeMap::apply(const Word& w) const { return substitute(images, w); }

bool is_primitive_f2(const Word& w) {
  Word cur = cyclic_normalize(free_reduce(w)).core;
  if (cur.empty()) return false;
  for (Letter x : cur)
    if (generator_of(x) > 1) throw InputError("word is not in the free group of rank 2");
  std::vector<std::vector<Word>> autos;
  for (int m = 0; m < 2; ++m)
    for (bool inv : {false, true}) {
      Letter mult = letter(m, inv);
      int y = 1 - m;
      Word gy{letter(y)};
      for (int kind = 0; kind < 3; ++kind) {
        std::vector<Word> images = identity_images(2);
        Word img = gy;
        if (kind != 1) img = concat(img, Word{mult});
        if (kind != 0) img = concat(Word{static_cast<Letter>(-mult)}, img);
        images[static_cast<std::size_t>(y)] = img;
        autos.push_back(std::move(images));
      }
    }
  // Whitehead: a non-minimal word is shortened by some elementary automorphism.
  for (bool progress = true; progress && cur.size() > 1;) {
    progress = false;
    for (const auto& images : autos) {
      Word next = cyclic_normalize(substitute(images, cur)).core;
      if (next.size() < cur.size()) {
        cur = std::move(next);
        progress = true;
        break;
      }
    }
  }
  return cur.size() == 1;
}

bool ptorus_simple_oracle(const Word& curve, const Presentation& pres) {
  if (pres.genus() != 1 || pres.punctures() != 1) throw InputError("the exact simplicity oracle needs S_{1,1}");
  if (free_reduce(curve).empty()) throw InputError("curve is trivial");
  if (auto per = is_peripheral(curve, pres)) return per->exponent == 1;
  return is_primitive_f2(curve);
}

std::vector<FreeMap> mapping_class_generators(const Presentation& pres) {
  const int r = pres.rank(), g = pres.genus();
  auto A = [](int i) { return 2 * i; };
  auto B = [](int i) { return 2 * i + 1; };
  auto gen = [](int k, bool inv = false) { return letter(k, inv); };
  std::vector<Move> moves;
  for (int i = 0; i < g; ++i) {
    moves.push_back(elementary(r, B(i), Word{gen(A(i))}, false));
    moves.back().name = "twist-a" + std::to_string(i + 1);
    moves.push_back(elementary(r, A(i), Word{gen(B(i))}, false));
    moves.back().name = "twist-b" + std::to_string(i + 1);
  }
  for (int i = 0; i + 1 < g; ++i) {
    Move m = then(elementary(r, B(i), Word{gen(A(i), true), gen(B(i + 1))}, true),
                  elementary(r, A(i + 1), Word{gen(A(i), true), gen(B(i + 1))}, true));
    m.name = "cross-b" + std::to_string(i + 1);
    moves.push_back(m);
    Move n = then(elementary(r, A(i), Word{gen(B(i), true), gen(A(i + 1))}, true),
                  elementary(r, B(i + 1), Word{gen(B(i), true), gen(A(i + 1))}, true));
    n.name = "cross-a" + std::to_string(i + 1);
    moves.push_back(n);
    Move s{"swap" + std::to_string(i + 1), identity_images(r), identity_images(r)};
    std::swap(s.fwd[static_cast<std::size_t>(A(i))], s.fwd[static_cast<std::size_t>(A(i + 1))]);
    std::swap(s.fwd[static_cast<std::size_t>(B(i))], s.fwd[static_cast<std::size_t>(B(i + 1))]);
    s.inv = s.fwd;
    moves.push_back(s);
  }
  for (int j = 2 * g; j + 1 < r; ++j) {
    Move m{"braid" + std::to_string(j - 2 * g + 1), identity_images(r), identity_images(r)};
    m.fwd[static_cast<std::size_t>(j)] = Word{gen(j), gen(j + 1), gen(j, true)};
    m.fwd[static_cast<std::size_t>(j + 1)] = Word{gen(j)};
    m.inv[static_cast<std::size_t>(j)] = Word{gen(j + 1)};
    m.inv[static_cast<std::size_t>(j + 1)] = Word{gen(j + 1, true), gen(j), gen(j + 1)};
    moves.push_back(m);
  }
  std::vector<FreeMap> out;
  for (const Move& m : moves) {
    // A permutation of the handles only fixes the relator for adjacent
    // handles when g = 2; such moves are dropped rather than trusted.
    if (!induced_by_homeomorphism(pres, m.fwd) || !induced_by_homeomorphism(pres, m.inv)) continue;
    out.push_back(FreeMap{m.name, m.fwd});
    if (m.fwd != m.inv) out.push_back(FreeMap{m.name + "^-1", m.inv});
  }
  if (out.empty()) throw std::logic_error("no mapping class generators for " + pres.signature().name());
  return out;
}

Word standard_simple_curve(const Presentation& pres) {
  if (pres.genus() >= 1) return Word{letter(0)};
  if (pres.punctures() < 4) throw InputError("sphere with fewer than four punctures has no essential curve");
  return Word{letter(0), letter(1)};
}

std::vector<Word> generate_simple_curves(const Presentation& pres, std::size_t count, std::uint64_t seed) {
  const std::vector<FreeMap> gens = mapping_class_generators(pres);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  std::uniform_int_distribution<int> steps(1, 6);
  std::vector<Word> out;
  for (std::size_t k = 0; k < count; ++k) {
    Word w = standard_simple_curve(pres);
    for (int s = steps(rng); s > 0; --s) w = cyclic_reduce(gens[pick(rng)].apply(w), pres);
    out.push_back(w);
  }
  return out;
}

}  // namespace solenoid
