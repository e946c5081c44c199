#include "solenoid/word_problem.hpp"

#include <deque>
#include <set>

namespace solenoid {

namespace {

constexpr std::size_t kConjugacyStateBound = 400000;

// Length of the longest common prefix of w[i..] (cyclically when `cyclic`) and r.
std::size_t match_length(const Word& w, std::size_t i, const Word& r, bool cyclic) {
  const std::size_t n = w.size();
  const std::size_t lim = std::min(r.size(), cyclic ? n : n - i);
  std::size_t k = 0;
  while (k < lim && w[(i + k) % n] == r[k]) ++k;
  return k;
}

// w with r[0..len) at cyclic position i replaced by the inverse of r[len..).
Word replace_segment(const Word& w, std::size_t i, std::size_t len, const Word& r) {
  Word out = rotate(w, i);
  out.erase(out.begin(), out.begin() + static_cast<long>(len));
  Word complement(r.begin() + static_cast<long>(len), r.end());
  Word inv = inverse(complement);
  out.insert(out.begin(), inv.begin(), inv.end());
  return out;
}

Word cyclic_core(const Word& w) { return cyclic_normalize(w).core; }

// Cyclic words conjugate to `start` within `bound` letters, explored by
// breadth-first relator-segment replacement.  Stops early when `target` is seen.
bool explore_conjugates(const Word& start, std::size_t bound, const Presentation& pres,
                        const Word* target, std::vector<Word>* visited) {
  std::set<Word> seen{start};
  std::deque<Word> queue{start};
  if (visited) visited->push_back(start);
  while (!queue.empty()) {
    Word s = std::move(queue.front());
    queue.pop_front();
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (const Word& r : pres.relator_cycles()) {
        std::size_t full = match_length(s, i, r, true);
        for (std::size_t len = 1; len <= full; ++len) {
          Word t = cyclic_core(replace_segment(s, i, len, r));
          if (t.size() > bound || !seen.insert(t).second) continue;
          if (target && t == *target) return true;
          if (seen.size() > kConjugacyStateBound)
            throw BudgetExhausted("conjugacy search exceeded its state bound");
          if (visited) visited->push_back(t);
          queue.push_back(std::move(t));
        }
      }
    }
  }
  return false;
}

}  // namespace

Word dehn_reduce(const Word& input, const Presentation& pres) {
  Word w = free_reduce(input);
  if (!pres.closed()) return w;
  const std::size_t half = pres.relator().size() / 2;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < w.size() && !changed; ++i) {
      for (const Word& r : pres.relator_cycles()) {
        std::size_t len = match_length(w, i, r, false);
        if (len <= half) continue;
        Word complement(r.begin() + static_cast<long>(len), r.end());
        Word next(w.begin(), w.begin() + static_cast<long>(i));
        Word inv = inverse(complement);
        next.insert(next.end(), inv.begin(), inv.end());
        next.insert(next.end(), w.begin() + static_cast<long>(i + len), w.end());
        w = free_reduce(next);
        changed = true;
        break;
      }
    }
  }
  return w;
}

Word cyclic_reduce(const Word& input, const Presentation& pres) {
  Word w = cyclic_core(dehn_reduce(input, pres));
  if (!pres.closed()) return w;
  const std::size_t half = pres.relator().size() / 2;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < w.size() && !changed; ++i) {
      for (const Word& r : pres.relator_cycles()) {
        std::size_t len = match_length(w, i, r, true);
        if (len <= half) continue;
        w = cyclic_core(dehn_reduce(replace_segment(w, i, len, r), pres));
        changed = true;
        break;
      }
    }
  }
  return canonical_rotation(w);
}

bool is_trivial(const Word& w, const Presentation& pres) { return dehn_reduce(w, pres).empty(); }

bool conjugate_test(const Word& u, const Word& v, const Presentation& pres) {
  Word cu = cyclic_reduce(u, pres), cv = cyclic_reduce(v, pres);
  if (cu == cv) return true;
  if (!pres.closed() || cu.empty() || cv.empty()) return false;
  if (abelianize(cu, pres) != abelianize(cv, pres)) return false;
  return explore_conjugates(cu, std::max(cu.size(), cv.size()) + 2, pres, &cv, nullptr);
}

Root extract_root(const Word& curve, const Presentation& pres) {
  Word c = cyclic_reduce(curve, pres);
  if (c.empty()) throw InputError("extract_root: trivial curve");
  auto split = [](const Word& w) {
    std::size_t p = primitive_period(w);
    return Root{canonical_rotation(Word(w.begin(), w.begin() + static_cast<long>(p))),
                static_cast<int>(w.size() / p), false};
  };
  if (!pres.closed()) return split(c);
  std::vector<Word> reps;
  explore_conjugates(c, c.size() + 2, pres, nullptr, &reps);
  Root best{c, 1, true};
  for (const Word& w : reps) {
    Root r = split(w);
    if (r.exponent > best.exponent) best = {cyclic_reduce(r.root, pres), r.exponent, false};
  }
  return best;
}

std::optional<PeripheralMatch> is_peripheral(const Word& curve, const Presentation& pres) {
  if (pres.closed()) throw InputError("is_peripheral: surface has no punctures");
  Word c = cyclic_reduce(curve, pres);
  if (c.empty()) return std::nullopt;
  Root r = extract_root(c, pres);
  for (std::size_t i = 0; i < pres.peripherals().size(); ++i) {
    const Word& p = pres.peripherals()[i];
    int idx = static_cast<int>(i) + 1;
    if (r.root == cyclic_reduce(p, pres)) return PeripheralMatch{idx, r.exponent, false};
    if (r.root == cyclic_reduce(inverse(p), pres)) return PeripheralMatch{idx, r.exponent, true};
  }
  return std::nullopt;
}

std::vector<long long> abelianize(const Word& w, const Presentation& pres, long long modulus) {
  std::vector<long long> v(static_cast<std::size_t>(pres.rank()), 0);
  for (Letter x : w) v[static_cast<std::size_t>(generator_of(x))] += x > 0 ? 1 : -1;
  if (modulus > 0)
    for (long long& e : v) e = ((e % modulus) + modulus) % modulus;
  return v;
}

}  // namespace solenoid
