#include "solenoid/homology.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace solenoid {

namespace {

// Generic SNF is used while the boundary matrix stays below this many entries;
// beyond it the incidence structure (two opposite unit entries per column or
// row, connected graph) determines the invariant factors directly.
constexpr std::size_t kDenseSmithLimit = std::size_t{1} << 20;

Face least_corner_rotation(const CoverDescription& cover, int start, const Word& w) {
  int best_pos = 0, best = start, cur = start;
  for (std::size_t k = 0; k + 1 < w.size(); ++k) {
    cur = cover.action()(cur, w[k]);
    if (cur < best) best = cur, best_pos = static_cast<int>(k) + 1;
  }
  return Face{best, rotate(w, static_cast<std::size_t>(best_pos))};
}

// Edge and sign of a letter read at coset `cur`; returns the next coset.
struct Step {
  int edge;
  int sign;
  int next;
};
Step step(const CoverDescription& cover, int cur, Letter x) {
  int next = cover.action()(cur, x);
  return {cover.edge_id(x > 0 ? cur : next, generator_of(x)), x > 0 ? 1 : -1, next};
}

void certify_free_homology(const CoverComplex& cx, int expected_rank, bool dual_connected) {
  const auto v = static_cast<std::size_t>(cx.vertex_count());
  const auto e = static_cast<std::size_t>(cx.edge_count());
  const auto f = cx.faces().size();
  std::size_t rank1 = v - 1, rank2 = f - 1;
  auto all_units = [](const std::vector<BigInt>& d) {
    return std::all_of(d.begin(), d.end(), [](const BigInt& x) { return x == 1; });
  };
  if (v * e <= kDenseSmithLimit) {
    auto d1 = smith_invariants(cx.boundary1());
    if (!all_units(d1)) throw std::logic_error("boundary map 1 has non-unit invariant factors");
    rank1 = d1.size();
  }
  if (e * f <= kDenseSmithLimit) {
    auto d2 = smith_invariants(cx.boundary2());
    if (!all_units(d2)) throw std::logic_error("torsion in H_1 of the filled cover");
    rank2 = d2.size();
  } else if (!dual_connected) {
    throw std::logic_error("dual graph is disconnected");
  }
  if (rank1 != v - 1 || rank2 != f - 1)
    throw std::logic_error("boundary ranks do not match a closed connected surface");
  if (static_cast<int>(e - rank1 - rank2) != expected_rank)
    throw std::logic_error("rank of H_1 differs from 2 g_K");
}

}  // namespace

CoverComplex::CoverComplex(const CoverDescription& cover) : cover_(&cover) {
  const Presentation& pres = cover.presentation();
  if (pres.closed()) {
    for (int i = 0; i < cover.degree(); ++i) faces_.push_back(least_corner_rotation(cover, i, pres.relator()));
  } else {
    for (std::size_t c = 0; c < pres.peripherals().size(); ++c) {
      Word inv = inverse(pres.peripherals()[c]);
      for (const auto& cyc : cover.boundary_orbits()[c]) {
        Word w;
        for (std::size_t k = 0; k < cyc.size(); ++k) w = concat(w, inv);
        faces_.push_back(least_corner_rotation(cover, cyc.front(), w));
      }
    }
  }
  std::sort(faces_.begin(), faces_.end(), [](const Face& a, const Face& b) {
    return a.base != b.base ? a.base < b.base : lex_less(a.word, b.word);
  });
  pos_.assign(static_cast<std::size_t>(edge_count()), -1);
  neg_.assign(static_cast<std::size_t>(edge_count()), -1);
  std::size_t total = 0;
  for (std::size_t fi = 0; fi < faces_.size(); ++fi) {
    int cur = faces_[fi].base;
    total += faces_[fi].word.size();
    for (Letter x : faces_[fi].word) {
      Step s = step(cover, cur, x);
      int& slot = s.sign > 0 ? pos_[static_cast<std::size_t>(s.edge)] : neg_[static_cast<std::size_t>(s.edge)];
      if (slot != -1) throw std::logic_error("edge side covered twice");
      slot = static_cast<int>(fi);
      cur = s.next;
    }
    if (cur != faces_[fi].base) throw std::logic_error("face word is not closed");
  }
  if (total != 2 * static_cast<std::size_t>(edge_count()))
    throw std::logic_error("surface condition fails: face lengths do not sum to 2E");
  int chi = vertex_count() - edge_count() + static_cast<int>(faces_.size());
  if (chi != 2 - 2 * cover.cover_genus()) throw std::logic_error("Euler characteristic mismatch");
}

IntVector CoverComplex::walk_chain(int start, const Word& w) const {
  IntVector chain(static_cast<std::size_t>(edge_count()), 0);
  int cur = start;
  for (Letter x : w) {
    Step s = step(*cover_, cur, x);
    chain[static_cast<std::size_t>(s.edge)] += s.sign;
    cur = s.next;
  }
  return chain;
}

IntMatrix CoverComplex::boundary1() const {
  IntMatrix m(static_cast<std::size_t>(vertex_count()), static_cast<std::size_t>(edge_count()));
  for (int i = 0; i < vertex_count(); ++i)
    for (int x = 0; x < cover_->rank(); ++x) {
      auto e = static_cast<std::size_t>(cover_->edge_id(i, x));
      m(static_cast<std::size_t>(cover_->action()(i, letter(x))), e) += 1;
      m(static_cast<std::size_t>(i), e) -= 1;
    }
  return m;
}

IntMatrix CoverComplex::boundary2() const {
  IntMatrix m(static_cast<std::size_t>(edge_count()), faces_.size());
  for (int e = 0; e < edge_count(); ++e) {
    m(static_cast<std::size_t>(e), static_cast<std::size_t>(positive_face(e))) += 1;
    m(static_cast<std::size_t>(e), static_cast<std::size_t>(negative_face(e))) -= 1;
  }
  return m;
}

IntVector HomologyBasis::evaluate(const IntVector& chain) const {
  IntVector out(static_cast<std::size_t>(rank), 0);
  for (std::size_t e = 0; e < chain.size(); ++e) {
    if (!chain[e]) continue;
    for (auto [i, v] : by_edge[e]) out[static_cast<std::size_t>(i)] += chain[e] * v;
  }
  return out;
}

HomologyBasis basis_from_parts(const CoverComplex& cx, std::vector<int> cotree,
                               std::vector<SparseCochain> cocycles) {
  const CoverDescription& cover = cx.cover();
  HomologyBasis b;
  b.rank = static_cast<int>(cotree.size());
  b.cotree_edges = std::move(cotree);
  b.cocycles = std::move(cocycles);
  b.by_edge.assign(static_cast<std::size_t>(cx.edge_count()), {});
  for (std::size_t i = 0; i < b.cocycles.size(); ++i)
    for (auto [e, v] : b.cocycles[i]) b.by_edge[static_cast<std::size_t>(e)].push_back({static_cast<int>(i), v});
  for (int e : b.cotree_edges) {
    const SchreierGenerator& s =
        cover.schreier_generators()[static_cast<std::size_t>(cover.schreier_index(e))];
    b.cycles.push_back(cx.walk_chain(0, s.word));
  }
  return b;
}

HomologyBasis homology_basis(const CoverComplex& cx) {
  const CoverDescription& cover = cx.cover();
  const int E = cx.edge_count();
  const int F = static_cast<int>(cx.faces().size());
  // Dual spanning tree over faces through edges outside the primal tree.
  std::vector<std::vector<int>> incident(static_cast<std::size_t>(F));
  for (int e = 0; e < E; ++e) {
    if (cover.schreier_index(e) < 0) continue;
    incident[static_cast<std::size_t>(cx.positive_face(e))].push_back(e);
    incident[static_cast<std::size_t>(cx.negative_face(e))].push_back(e);
  }
  std::vector<int> up_edge(static_cast<std::size_t>(F), -1), up_face(static_cast<std::size_t>(F), -1),
      depth(static_cast<std::size_t>(F), -1);
  std::vector<char> in_dual_tree(static_cast<std::size_t>(E), 0);
  std::deque<int> queue{0};
  depth[0] = 0;
  while (!queue.empty()) {
    int f = queue.front();
    queue.pop_front();
    for (int e : incident[static_cast<std::size_t>(f)]) {
      int g = cx.positive_face(e) == f ? cx.negative_face(e) : cx.positive_face(e);
      if (depth[static_cast<std::size_t>(g)] >= 0) continue;
      depth[static_cast<std::size_t>(g)] = depth[static_cast<std::size_t>(f)] + 1;
      up_edge[static_cast<std::size_t>(g)] = e;
      up_face[static_cast<std::size_t>(g)] = f;
      in_dual_tree[static_cast<std::size_t>(e)] = 1;
      queue.push_back(g);
    }
  }
  bool dual_connected = std::all_of(depth.begin(), depth.end(), [](int d) { return d >= 0; });
  certify_free_homology(cx, 2 * cover.cover_genus(), dual_connected);

  std::vector<int> cotree;
  for (int e = 0; e < E; ++e)
    if (cover.schreier_index(e) >= 0 && !in_dual_tree[static_cast<std::size_t>(e)]) cotree.push_back(e);
  if (static_cast<int>(cotree.size()) != 2 * cover.cover_genus())
    throw std::logic_error("cotree size differs from 2 g_K");

  // Unit circulation around the dual cycle of each cotree edge: along the edge
  // from its positive face to its negative face, then back through the tree.
  std::vector<SparseCochain> cocycles;
  for (int c : cotree) {
    SparseCochain phi{{c, 1}};
    int from = cx.negative_face(c), to = cx.positive_face(c);
    SparseCochain down;
    auto dir = [&](int e, int a) { return cx.positive_face(e) == a ? 1LL : -1LL; };
    while (from != to) {
      if (depth[static_cast<std::size_t>(from)] >= depth[static_cast<std::size_t>(to)]) {
        int e = up_edge[static_cast<std::size_t>(from)];
        phi.push_back({e, dir(e, from)});
        from = up_face[static_cast<std::size_t>(from)];
      } else {
        int e = up_edge[static_cast<std::size_t>(to)];
        down.push_back({e, dir(e, up_face[static_cast<std::size_t>(to)])});
        to = up_face[static_cast<std::size_t>(to)];
      }
    }
    phi.insert(phi.end(), down.rbegin(), down.rend());
    std::sort(phi.begin(), phi.end());
    cocycles.push_back(std::move(phi));
  }
  HomologyBasis b = basis_from_parts(cx, std::move(cotree), std::move(cocycles));

  for (const Face& f : cx.faces()) {
    IntVector v = b.evaluate(cx.walk_chain(f.base, f.word));
    if (std::any_of(v.begin(), v.end(), [](long long x) { return x != 0; }))
      throw std::logic_error("cochain fails the cocycle condition");
  }
  for (int j = 0; j < b.rank; ++j) {
    IntVector v = b.evaluate(b.cycles[static_cast<std::size_t>(j)]);
    for (int i = 0; i < b.rank; ++i)
      if (v[static_cast<std::size_t>(i)] != (i == j)) throw std::logic_error("cycles and cocycles are not dual");
  }
  return b;
}

IntMatrix cup_matrix(const CoverComplex& cx, const HomologyBasis& b) {
  const CoverDescription& cover = cx.cover();
  const auto n = static_cast<std::size_t>(b.rank);
  Matrix<Checked> acc(n, n);
  std::vector<Checked> prefix(n);
  for (const Face& f : cx.faces()) {
    std::fill(prefix.begin(), prefix.end(), Checked(0));
    int cur = f.base;
    for (Letter x : f.word) {
      Step s = step(cover, cur, x);
      const auto& vals = b.by_edge[static_cast<std::size_t>(s.edge)];
      // For an inverse letter the prefix runs through the letter itself.
      if (s.sign < 0)
        for (auto [i, v] : vals) prefix[static_cast<std::size_t>(i)] -= Checked(v);
      for (auto [j, v] : vals) {
        Checked psi = Checked(s.sign) * Checked(v);
        for (std::size_t i = 0; i < n; ++i)
          if (prefix[i].v) acc(i, static_cast<std::size_t>(j)) += prefix[i] * psi;
      }
      if (s.sign > 0)
        for (auto [i, v] : vals) prefix[static_cast<std::size_t>(i)] += Checked(v);
      cur = s.next;
    }
  }
  IntMatrix cup(n, n);
  for (std::size_t k = 0; k < acc.a.size(); ++k) cup.a[k] = acc.a[k].v;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (cup(i, j) + cup(j, i) != 0) throw std::logic_error("cup product is not antisymmetric");
  return cup;
}

IntersectionForm intersection_form(const CoverComplex& cx, const HomologyBasis& basis) {
  IntersectionForm f;
  f.cup = cup_matrix(cx, basis);
  IntMatrix inv = unimodular_inverse(f.cup);
  f.matrix = inv;
  for (auto& x : f.matrix.a) x = -x;
  return f;
}

IntVector cycle_class(const Word& w, const CoverComplex& cx, const HomologyBasis& basis, int start) {
  if (cx.cover().action().walk(start, w) != start)
    throw InputError("word " + format_word(w) + " does not lift to a closed loop");
  return basis.evaluate(cx.walk_chain(start, w));
}

IntVector translate_chain(const CoverDescription& cover, const IntVector& chain, int j) {
  if (!cover.normal()) throw std::logic_error("deck translation needs a normal subgroup");
  IntVector out(chain.size(), 0);
  const int r = cover.rank();
  for (std::size_t e = 0; e < chain.size(); ++e) {
    if (!chain[e]) continue;
    int i = static_cast<int>(e) / r, x = static_cast<int>(e) % r;
    out[static_cast<std::size_t>(cover.edge_id(cover.deck(j, i), x))] += chain[e];
  }
  return out;
}

std::vector<IntMatrix> deck_matrices(const CoverComplex& cx, const HomologyBasis& b) {
  const CoverDescription& cover = cx.cover();
  std::vector<IntMatrix> out;
  const auto n = static_cast<std::size_t>(b.rank);
  for (int x = 0; x < cover.rank(); ++x) {
    int j = cover.action()(0, letter(x));
    IntMatrix t(n, n);
    for (std::size_t k = 0; k < n; ++k) {
      IntVector col = b.evaluate(translate_chain(cover, b.cycles[k], j));
      for (std::size_t i = 0; i < n; ++i) t(i, k) = col[i];
    }
    out.push_back(std::move(t));
  }
  return out;
}

IntVector unfilled_coordinates(const CoverComplex& cx, const HomologyBasis& basis, const IntVector& chain,
                               long long modulus) {
  const CoverDescription& cover = cx.cover();
  IntVector out;
  if (cover.presentation().closed()) {
    out = basis.evaluate(chain);
  } else {
    out.assign(cover.schreier_generators().size(), 0);
    for (std::size_t e = 0; e < chain.size(); ++e) {
      int s = cover.schreier_index(static_cast<int>(e));
      if (s >= 0) out[static_cast<std::size_t>(s)] = chain[e];
    }
  }
  for (auto& x : out) x = mod(x, modulus);
  return out;
}

IntVector subgroup_homology_image(const Word& w, const CoverComplex& cx, const HomologyBasis& basis,
                                  long long modulus) {
  if (cx.cover().action().walk(0, w) != 0)
    throw InputError("word " + format_word(w) + " is not in the subgroup");
  return unfilled_coordinates(cx, basis, cx.walk_chain(0, w), modulus);
}

IntMatrix unfilled_deck_action(const CoverComplex& cx, const HomologyBasis& basis, int j, long long modulus) {
  const CoverDescription& cover = cx.cover();
  std::vector<IntVector> chains;
  if (cover.presentation().closed()) {
    chains = basis.cycles;
  } else {
    for (const auto& s : cover.schreier_generators()) chains.push_back(cx.walk_chain(0, s.word));
  }
  IntMatrix m(chains.size(), chains.size());
  for (std::size_t k = 0; k < chains.size(); ++k) {
    IntVector col = unfilled_coordinates(cx, basis, translate_chain(cover, chains[k], j), modulus);
    for (std::size_t i = 0; i < col.size(); ++i) m(i, k) = col[i];
  }
  return m;
}

CoverHomology::CoverHomology(CoverDescription c)
    : cover(std::move(c)), complex(cover), basis(homology_basis(complex)), form(intersection_form(complex, basis)) {}

CoverHomology::CoverHomology(CoverDescription c, std::vector<int> cotree, std::vector<SparseCochain> cocycles,
                             IntersectionForm f)
    : cover(std::move(c)),
      complex(cover),
      basis(basis_from_parts(complex, std::move(cotree), std::move(cocycles))),
      form(std::move(f)) {}

}  // namespace solenoid
