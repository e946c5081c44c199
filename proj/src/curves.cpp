#include "solenoid/curves.hpp"

#include <algorithm>

namespace solenoid {

CurveClass CurveClass::make(const Word& w, const Presentation& pres) {
  CurveClass c;
  c.input = w;
  c.canonical = cyclic_reduce(w, pres);
  if (c.canonical.empty()) throw InputError("curve " + format_word(w) + " is trivial");
  c.root = extract_root(w, pres);
  if (!pres.closed()) c.peripheral = is_peripheral(w, pres);
  return c;
}

std::vector<PullbackComponent> pullback_components(const Word& gamma, const CoverHomology& h) {
  const CoverDescription& cover = h.cover;
  std::vector<int> perm = cover.word_permutation(gamma);
  std::vector<char> seen(perm.size(), 0);
  std::vector<PullbackComponent> out;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    int k = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) seen[j] = 1, ++k;
    PullbackComponent c;
    c.base = static_cast<int>(i);
    c.degree = k;
    Word gk = power(gamma, k);
    Word t = cover.tree_word(c.base);
    c.lifted = free_reduce(concat(concat(t, gk), inverse(t)));
    c.cycle = cycle_class(gk, h.complex, h.basis, c.base);
    out.push_back(std::move(c));
  }
  return out;
}

SubmoduleV submodule_V(const std::vector<PullbackComponent>& components) {
  SubmoduleV v;
  for (const auto& c : components) v.generators.push_back(c.cycle);
  v.basis = hermite_rows(v.generators);
  return v;
}

SubmoduleV submodule_V(const Word& gamma, const CoverHomology& h) {
  return submodule_V(pullback_components(gamma, h));
}

std::optional<PairWitness> pair_test(const SubmoduleV& v, const SubmoduleV& w, const IntMatrix& m) {
  for (const auto& x : v.basis) {
    // x^T M once per x; the pairs are then dot products.
    std::vector<Checked> row(m.cols, 0);
    for (std::size_t i = 0; i < m.rows; ++i)
      if (x[i])
        for (std::size_t j = 0; j < m.cols; ++j)
          if (m(i, j)) row[j] += Checked(x[i]) * m(i, j);
    for (const auto& y : w.basis) {
      Checked value = 0;
      for (std::size_t j = 0; j < row.size(); ++j)
        if (y[j]) value += row[j] * y[j];
      if (value.v != 0) return PairWitness{x, y, value.v};
    }
  }
  return std::nullopt;
}

std::optional<ComponentWitness> first_component_pairing(const PullbackComponent& first,
                                                         const std::vector<PullbackComponent>& others,
                                                         const IntMatrix& m) {
  IntVector row(m.cols, 0);
  for (std::size_t i = 0; i < m.rows; ++i)
    if (first.cycle[i])
      for (std::size_t j = 0; j < m.cols; ++j) row[j] += first.cycle[i] * m(i, j);
  for (std::size_t k = 0; k < others.size(); ++k) {
    long long value = 0;
    for (std::size_t j = 0; j < row.size(); ++j) value += row[j] * others[k].cycle[j];
    if (value != 0) return ComponentWitness{k, value};
  }
  return std::nullopt;
}

std::vector<IntVector> signed_class_set(const std::vector<PullbackComponent>& components) {
  std::vector<IntVector> out;
  for (const auto& c : components) {
    IntVector v = c.cycle;
    auto lead = std::find_if(v.begin(), v.end(), [](long long x) { return x != 0; });
    if (lead != v.end() && *lead < 0)
      for (auto& x : v) x = -x;
    out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace solenoid
