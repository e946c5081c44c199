#include "solenoid/covers.hpp"

#include <boost/functional/hash.hpp>
#include <algorithm>
#include <cctype>
#include <climits>
#include <deque>
#include <unordered_map>

namespace solenoid {

namespace {

using Perm = std::vector<int>;

struct PermHash {
  std::size_t operator()(const Perm& p) const { return boost::hash_range(p.begin(), p.end()); }
};

std::vector<Perm> inverses(const std::vector<Perm>& perms) {
  std::vector<Perm> inv;
  for (const Perm& p : perms) {
    Perm q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) q[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
    inv.push_back(std::move(q));
  }
  return inv;
}

// Letters in the fixed traversal order a, A, b, B, ...
std::vector<Letter> traversal_letters(int rank) {
  std::vector<Letter> out;
  for (int g = 0; g < rank; ++g) {
    out.push_back(letter(g));
    out.push_back(letter(g, true));
  }
  return out;
}

struct Tree {
  std::vector<int> parent, order;
  std::vector<Letter> entering;
};

// Breadth-first tree from coset 0; parent is -1 for unreached cosets.
Tree bfs_tree(const QuotientMap& q) {
  const CosetAction act(q);
  const std::size_t d = static_cast<std::size_t>(q.degree);
  Tree t{std::vector<int>(d, -1), {0}, std::vector<Letter>(d, 0)};
  std::vector<char> seen(d, 0);
  seen[0] = 1;
  const auto letters = traversal_letters(static_cast<int>(q.perms.size()));
  for (std::size_t head = 0; head < t.order.size(); ++head) {
    int i = t.order[head];
    for (Letter x : letters) {
      int j = act(i, x);
      if (seen[static_cast<std::size_t>(j)]) continue;
      seen[static_cast<std::size_t>(j)] = 1;
      t.parent[static_cast<std::size_t>(j)] = i;
      t.entering[static_cast<std::size_t>(j)] = x;
      t.order.push_back(j);
    }
  }
  return t;
}

// Deck maps D_j(i) = j . t_i for all j, row-major; empty when the action is
// not regular (some D_j fails to commute with the generators).
std::vector<int> deck_table(const QuotientMap& q, const Tree& t) {
  const CosetAction act(q);
  const std::size_t d = static_cast<std::size_t>(q.degree);
  std::vector<int> table(d * d);
  for (std::size_t j = 0; j < d; ++j) {
    int* row = &table[j * d];
    row[0] = static_cast<int>(j);
    for (std::size_t k = 1; k < t.order.size(); ++k) {
      auto i = static_cast<std::size_t>(t.order[k]);
      row[i] = act(row[static_cast<std::size_t>(t.parent[i])], t.entering[i]);
    }
    for (std::size_t x = 0; x < q.perms.size(); ++x)
      for (std::size_t i = 0; i < d; ++i)
        if (row[static_cast<std::size_t>(q.perms[x][i])] != q.perms[x][static_cast<std::size_t>(row[i])])
          return {};
  }
  return table;
}

bool is_power_of(long long d, long long p) {
  while (d > 1 && d % p == 0) d /= p;
  return d == 1;
}

std::size_t checked_degree(std::size_t d, int p, std::size_t k, std::size_t cap) {
  std::size_t deg = d;
  for (std::size_t t = 0; t < k; ++t) {
    if (deg > cap / static_cast<std::size_t>(p))
      throw BudgetExhausted("cover degree exceeds cap " + std::to_string(cap));
    deg *= static_cast<std::size_t>(p);
  }
  if (deg > cap) throw BudgetExhausted("cover degree exceeds cap " + std::to_string(cap));
  return deg;
}

QuotientMap finish(const QuotientMap& raw, std::size_t cap) {
  QuotientMap c = canonicalize(raw);
  if (!deck_table(c, bfs_tree(c)).empty()) return c;
  return canonicalize(normal_core(c, cap));
}

}  // namespace

bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long k = 2; k * k <= p; ++k)
    if (p % k == 0) return false;
  return true;
}

QuotientMap identity_map(const Presentation& pres, int prime) {
  return QuotientMap{prime, 1, std::vector<Perm>(static_cast<std::size_t>(pres.rank()), Perm{0})};
}

CosetAction::CosetAction(const QuotientMap& q) : fwd_(q.perms), inv_(inverses(q.perms)) {}

QuotientMap parse_cycle_map(std::string_view text, const Presentation& pres, int prime) {
  auto fail = [&](const std::string& what) {
    return InputError("malformed map \"" + std::string(text) + "\": " + what);
  };
  std::vector<std::vector<Perm>> cycles(static_cast<std::size_t>(pres.rank()));
  std::vector<char> given(static_cast<std::size_t>(pres.rank()), 0);
  int degree = 1;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && text[pos] == ' ') ++pos;
  };
  skip();
  while (pos < text.size()) {
    char g = text[pos];
    if (g < 'a' || g - 'a' >= pres.rank()) throw fail("unknown generator '" + std::string(1, g) + "'");
    auto gen = static_cast<std::size_t>(g - 'a');
    if (given[gen]) throw fail("generator '" + std::string(1, g) + "' given twice");
    given[gen] = 1;
    ++pos;
    if (pos >= text.size() || text[pos] != ':') throw fail("expected ':' after '" + std::string(1, g) + "'");
    ++pos;
    skip();
    while (pos < text.size() && text[pos] == '(') {
      auto close = text.find(')', pos);
      if (close == std::string_view::npos) throw fail("unclosed '('");
      std::string body(text.substr(pos + 1, close - pos - 1));
      pos = close + 1;
      Perm cyc;
      bool separated = body.find_first_of(" ,") != std::string::npos;
      std::string tok;
      auto flush = [&] {
        if (tok.empty()) return;
        cyc.push_back(std::stoi(tok));
        tok.clear();
      };
      for (char ch : body) {
        if (std::isdigit(static_cast<unsigned char>(ch))) {
          tok.push_back(ch);
          if (!separated) flush();
        } else if (ch == ' ' || ch == ',') {
          flush();
        } else {
          throw fail("bad point '" + std::string(1, ch) + "'");
        }
      }
      flush();
      for (int x : cyc) degree = std::max(degree, x + 1);
      if (!cyc.empty()) cycles[gen].push_back(std::move(cyc));
      skip();
    }
    if (pos < text.size()) {
      if (text[pos] != ',') throw fail("unexpected '" + std::string(1, text[pos]) + "'");
      ++pos;
      skip();
    }
  }
  QuotientMap q{prime, degree, {}};
  for (auto& cs : cycles) {
    Perm p(static_cast<std::size_t>(degree));
    for (int i = 0; i < degree; ++i) p[static_cast<std::size_t>(i)] = i;
    std::vector<char> used(static_cast<std::size_t>(degree), 0);
    for (auto& c : cs)
      for (std::size_t k = 0; k < c.size(); ++k) {
        if (used[static_cast<std::size_t>(c[k])]++) throw fail("point " + std::to_string(c[k]) + " repeated");
        p[static_cast<std::size_t>(c[k])] = c[(k + 1) % c.size()];
      }
    q.perms.push_back(std::move(p));
  }
  return q;
}

std::string format_cycle_map(const QuotientMap& q) {
  std::string out;
  for (std::size_t x = 0; x < q.perms.size(); ++x) {
    if (x) out += ",";
    out += format_word({letter(static_cast<int>(x))}) + ":";
    std::vector<char> seen(static_cast<std::size_t>(q.degree), 0);
    bool any = false;
    for (int i = 0; i < q.degree; ++i) {
      if (seen[static_cast<std::size_t>(i)] || q.perms[x][static_cast<std::size_t>(i)] == i) continue;
      out += "(";
      for (int j = i; !seen[static_cast<std::size_t>(j)]; j = q.perms[x][static_cast<std::size_t>(j)]) {
        seen[static_cast<std::size_t>(j)] = 1;
        if (j != i && q.degree > 10) out += " ";
        out += std::to_string(j);
      }
      out += ")";
      any = true;
    }
    if (!any) out += "()";
  }
  return out;
}

QuotientMap canonicalize(const QuotientMap& q) {
  Tree t = bfs_tree(q);
  if (t.order.size() != static_cast<std::size_t>(q.degree)) throw InputError("action is not transitive");
  std::vector<int> label(static_cast<std::size_t>(q.degree));
  for (std::size_t k = 0; k < t.order.size(); ++k) label[static_cast<std::size_t>(t.order[k])] = static_cast<int>(k);
  QuotientMap c{q.prime, q.degree, q.perms};
  for (std::size_t x = 0; x < q.perms.size(); ++x)
    for (std::size_t i = 0; i < q.perms[x].size(); ++i)
      c.perms[x][static_cast<std::size_t>(label[i])] = label[static_cast<std::size_t>(q.perms[x][i])];
  return c;
}

std::string canonical_serialization(const QuotientMap& q) {
  std::string s = std::to_string(q.degree);
  for (const Perm& p : q.perms) {
    s += "|";
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i) s += " ";
      s += std::to_string(p[i]);
    }
  }
  return s;
}

QuotientMap normal_core(const QuotientMap& q, std::size_t cap) {
  const std::size_t n = static_cast<std::size_t>(q.degree);
  Perm id(n);
  for (std::size_t i = 0; i < n; ++i) id[i] = static_cast<int>(i);
  std::unordered_map<Perm, int, PermHash> index{{id, 0}};
  std::vector<Perm> elems{id};
  std::vector<Perm> gens = q.perms;
  auto ginv = inverses(q.perms);
  gens.insert(gens.end(), ginv.begin(), ginv.end());
  std::vector<std::vector<int>> right(gens.size());
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (std::size_t x = 0; x < gens.size(); ++x) {
      Perm h(n);
      for (std::size_t i = 0; i < n; ++i) h[i] = gens[x][static_cast<std::size_t>(elems[head][i])];
      auto [it, fresh] = index.try_emplace(h, static_cast<int>(elems.size()));
      if (fresh) {
        if (elems.size() >= cap)
          throw BudgetExhausted("normal core exceeds degree cap " + std::to_string(cap));
        elems.push_back(std::move(h));
      }
      right[x].push_back(it->second);
    }
  }
  QuotientMap core{q.prime, static_cast<int>(elems.size()), {}};
  for (std::size_t x = 0; x < q.perms.size(); ++x) core.perms.push_back(right[x]);
  return core;
}

CoverDescription::CoverDescription(const Presentation& pres, QuotientMap q, Normality normality)
    : pres_(pres), q_(std::move(q)), action_(q_) {
  const int r = pres_.rank();
  const int d = q_.degree;
  if (!is_prime(q_.prime)) throw InputError("p = " + std::to_string(q_.prime) + " is not prime");
  if (static_cast<int>(q_.perms.size()) != r)
    throw InputError("map gives " + std::to_string(q_.perms.size()) + " permutations for " +
                     std::to_string(r) + " generators");
  for (const Perm& p : q_.perms) {
    std::vector<char> hit(static_cast<std::size_t>(d), 0);
    if (static_cast<int>(p.size()) != d) throw InputError("permutation of wrong degree");
    for (int x : p) {
      if (x < 0 || x >= d || hit[static_cast<std::size_t>(x)]++) throw InputError("not a permutation");
    }
  }
  if (!is_power_of(d, q_.prime))
    throw InputError("degree " + std::to_string(d) + " is not a power of " + std::to_string(q_.prime));
  Tree t = bfs_tree(q_);
  if (static_cast<int>(t.order.size()) != d) throw InputError("action is not transitive");
  if (pres_.closed())
    for (int i = 0; i < d; ++i)
      if (action_.walk(i, pres_.relator()) != i) throw InputError("relator does not act trivially");
  deck_ = deck_table(q_, t);
  if (deck_.empty() && normality == Normality::required) throw InputError("subgroup is not normal");
  parent_ = std::move(t.parent);
  entering_ = std::move(t.entering);
  order_ = std::move(t.order);

  schreier_of_edge_.assign(static_cast<std::size_t>(d * r), 0);
  for (int j = 1; j < d; ++j) {
    Letter x = entering(j);
    int from = x > 0 ? parent(j) : j;
    schreier_of_edge_[static_cast<std::size_t>(edge_id(from, generator_of(x)))] = -1;
  }
  for (int i = 0; i < d; ++i)
    for (int x = 0; x < r; ++x) {
      auto e = static_cast<std::size_t>(edge_id(i, x));
      if (schreier_of_edge_[e] == -1) continue;
      schreier_of_edge_[e] = static_cast<int>(schreier_.size());
      Word w = concat(concat(tree_word(i), {letter(x)}), inverse(tree_word(action_(i, letter(x)))));
      schreier_.push_back({i, x, free_reduce(w)});
    }

  for (const Word& c : pres_.peripherals()) {
    std::vector<int> perm = word_permutation(c);
    std::vector<std::vector<int>> cycles;
    std::vector<char> seen(static_cast<std::size_t>(d), 0);
    for (int i = 0; i < d; ++i) {
      if (seen[static_cast<std::size_t>(i)]) continue;
      std::vector<int> cyc;
      for (int j = i; !seen[static_cast<std::size_t>(j)]; j = perm[static_cast<std::size_t>(j)]) {
        seen[static_cast<std::size_t>(j)] = 1;
        cyc.push_back(j);
      }
      cycles.push_back(std::move(cyc));
    }
    punctures_ += static_cast<int>(cycles.size());
    orbits_.push_back(std::move(cycles));
  }
  int twice_genus = 2 - punctures_ - d * pres_.signature().euler_characteristic();
  if (twice_genus < 0 || twice_genus % 2) throw std::logic_error("inconsistent cover topology");
  genus_ = twice_genus / 2;
}

Word CoverDescription::tree_word(int coset) const {
  Word w;
  for (int c = coset; c != 0; c = parent(c)) w.push_back(entering(c));
  std::reverse(w.begin(), w.end());
  return w;
}

std::vector<int> CoverDescription::word_permutation(const Word& w) const {
  std::vector<int> p(static_cast<std::size_t>(degree()));
  for (int i = 0; i < degree(); ++i) p[static_cast<std::size_t>(i)] = action_.walk(i, w);
  return p;
}

Word CoverDescription::rewrite(const Word& w) const {
  Word out;
  int cur = 0;
  for (Letter x : w) {
    int next = action_(cur, x);
    int from = x > 0 ? cur : next;
    int s = schreier_index(edge_id(from, generator_of(x)));
    if (s >= 0) out.push_back(x > 0 ? s + 1 : -(s + 1));
    cur = next;
  }
  if (cur != 0) throw InputError("word " + format_word(w) + " is not in the subgroup");
  return free_reduce(out);
}

Word CoverDescription::expand(const Word& sw) const {
  Word out;
  for (Letter s : sw) {
    const Word& g = schreier_[static_cast<std::size_t>(generator_of(s))].word;
    out = concat(out, s > 0 ? g : inverse(g));
  }
  return free_reduce(out);
}

AbelianQuotient h1_mod_p(const CoverDescription& cover, int p) {
  const std::size_t ns = cover.schreier_generators().size();
  AbelianQuotient aq;
  if (!cover.presentation().closed()) {
    aq.rank = ns;
    for (std::size_t s = 0; s < ns; ++s) {
      IntVector e(ns, 0);
      e[s] = 1;
      aq.images.push_back(std::move(e));
    }
    return aq;
  }
  std::vector<IntVector> rows;
  const Word& rel = cover.presentation().relator();
  for (int i = 0; i < cover.degree(); ++i) {
    IntVector row(ns, 0);
    int cur = i;
    for (Letter x : rel) {
      int next = cover.action()(cur, x);
      int s = cover.schreier_index(cover.edge_id(x > 0 ? cur : next, generator_of(x)));
      if (s >= 0) row[static_cast<std::size_t>(s)] += x > 0 ? 1 : -1;
      cur = next;
    }
    rows.push_back(std::move(row));
  }
  ModEchelon ech = echelon_mod(std::move(rows), ns, p);
  aq.rank = ns - ech.pivots.size();
  for (std::size_t s = 0; s < ns; ++s) {
    IntVector e(ns, 0);
    e[s] = 1;
    aq.images.push_back(quotient_coordinates(ech, std::move(e), p));
  }
  return aq;
}

QuotientMap abelian_extension(const CoverDescription& cover, const std::vector<IntVector>& images,
                              int p, std::size_t cap, bool take_core) {
  const std::size_t k = images.empty() ? 0 : images[0].size();
  const std::size_t d = static_cast<std::size_t>(cover.degree());
  const std::size_t deg = checked_degree(d, p, k, cap);
  const std::size_t fiber = deg / d;
  const int r = cover.rank();
  QuotientMap raw{p, static_cast<int>(deg), std::vector<Perm>(static_cast<std::size_t>(r), Perm(deg))};
  std::vector<int> digits(k);
  for (std::size_t i = 0; i < d; ++i)
    for (int x = 0; x < r; ++x) {
      std::size_t target = static_cast<std::size_t>(cover.quotient().perms[static_cast<std::size_t>(x)][i]);
      int s = cover.schreier_index(cover.edge_id(static_cast<int>(i), x));
      for (std::size_t v = 0; v < fiber; ++v) {
        std::size_t code = v, out = 0, scale = 1;
        for (std::size_t t = 0; t < k; ++t) {
          long long digit = static_cast<long long>(code % static_cast<std::size_t>(p));
          code /= static_cast<std::size_t>(p);
          if (s >= 0) digit = (digit + images[static_cast<std::size_t>(s)][t]) % p;
          out += static_cast<std::size_t>(digit) * scale;
          scale *= static_cast<std::size_t>(p);
        }
        raw.perms[static_cast<std::size_t>(x)][i * fiber + v] = static_cast<int>(target * fiber + out);
      }
    }
  return take_core ? finish(raw, cap) : canonicalize(raw);
}

QuotientMap compose_covers(const CoverDescription& outer, const QuotientMap& inner, std::size_t cap) {
  const std::size_t ns = outer.schreier_generators().size();
  if (inner.perms.size() != ns)
    throw InputError("inner map has " + std::to_string(inner.perms.size()) + " permutations for " +
                     std::to_string(ns) + " Schreier generators");
  const std::size_t d = static_cast<std::size_t>(outer.degree());
  const std::size_t e = static_cast<std::size_t>(inner.degree);
  if (d * e > cap) throw BudgetExhausted("cover degree exceeds cap " + std::to_string(cap));
  const CosetAction in(inner);
  if (outer.presentation().closed())
    for (int i = 0; i < outer.degree(); ++i) {
      Word lifted = outer.rewrite(concat(concat(outer.tree_word(i), outer.presentation().relator()),
                                         inverse(outer.tree_word(i))));
      for (int j = 0; j < inner.degree; ++j)
        if (in.walk(j, lifted) != j) throw InputError("inner map violates a lifted relator");
    }
  const int r = outer.rank();
  QuotientMap raw{outer.prime(), static_cast<int>(d * e), std::vector<Perm>(static_cast<std::size_t>(r), Perm(d * e))};
  for (std::size_t i = 0; i < d; ++i)
    for (int x = 0; x < r; ++x) {
      auto target = static_cast<std::size_t>(outer.quotient().perms[static_cast<std::size_t>(x)][i]);
      int s = outer.schreier_index(outer.edge_id(static_cast<int>(i), x));
      for (std::size_t j = 0; j < e; ++j) {
        std::size_t jj = s < 0 ? j : static_cast<std::size_t>(inner.perms[static_cast<std::size_t>(s)][j]);
        raw.perms[static_cast<std::size_t>(x)][i * e + j] = static_cast<int>(target * e + jj);
      }
    }
  return finish(raw, cap);
}

QuotientMap frattini_kernel(const CoverDescription& cover, int p, std::size_t cap) {
  return abelian_extension(cover, h1_mod_p(cover, p).images, p, cap);
}

QuotientMap frattini_kernel(const Presentation& pres, int p, bool fill_punctures, std::size_t cap) {
  CoverDescription base(pres, identity_map(pres, p));
  const std::size_t r = static_cast<std::size_t>(pres.rank());
  const std::size_t k = fill_punctures ? static_cast<std::size_t>(2 * pres.genus()) : r;
  std::vector<IntVector> images(r, IntVector(k, 0));
  for (std::size_t x = 0; x < k; ++x) images[x][x] = 1;
  return abelian_extension(base, images, p, cap);
}

std::size_t hyperplane_count(std::size_t rank, int p) {
  std::size_t total = 0, pw = 1;
  for (std::size_t i = 0; i < rank; ++i) {
    if (total > (SIZE_MAX >> 2) / static_cast<std::size_t>(p)) return SIZE_MAX;
    total += pw;
    pw *= static_cast<std::size_t>(p);
  }
  return total;
}

std::vector<IntVector> hyperplane_functionals(std::size_t rank, int p) {
  std::vector<IntVector> out;
  for (std::size_t lead = rank; lead-- > 0;) {
    std::size_t tail = rank - lead - 1;
    std::size_t count = 1;
    for (std::size_t t = 0; t < tail; ++t) count *= static_cast<std::size_t>(p);
    for (std::size_t c = 0; c < count; ++c) {
      IntVector f(rank, 0);
      f[lead] = 1;
      std::size_t code = c;
      for (std::size_t t = rank; t-- > lead + 1;) {
        f[t] = static_cast<long long>(code % static_cast<std::size_t>(p));
        code /= static_cast<std::size_t>(p);
      }
      out.push_back(std::move(f));
    }
  }
  return out;
}

std::vector<QuotientMap> enumerate_index_p_kernels(const Presentation& pres, int p) {
  CoverDescription base(pres, identity_map(pres, p));
  std::vector<QuotientMap> out;
  for (const IntVector& f : hyperplane_functionals(static_cast<std::size_t>(pres.rank()), p)) {
    std::vector<IntVector> images;
    for (long long c : f) images.push_back({c});
    out.push_back(abelian_extension(base, images, p, static_cast<std::size_t>(p)));
  }
  return out;
}

std::vector<IntVector> leading_functionals(std::size_t rank, int p, std::size_t limit) {
  std::vector<IntVector> out;
  if (rank == 0) return out;
  const auto up = static_cast<unsigned long long>(p);
  for (unsigned long long n = 1; out.size() < limit; ++n) {
    IntVector f(rank, 0);
    unsigned long long code = n;
    std::size_t t = rank;
    while (code && t > 0) f[--t] = static_cast<long long>(code % up), code /= up;
    if (code) break;  // every functional has been listed
    auto lead = std::find_if(f.begin(), f.end(), [](long long x) { return x != 0; });
    if (*lead == 1) out.push_back(std::move(f));
  }
  return out;
}

std::vector<IntVector> invariant_functionals(const CoverDescription& cover, const AbelianQuotient& aq, int p,
                                             std::size_t limit) {
  const std::size_t rank = aq.rank;
  // f is invariant iff it kills img(t_j s t_j^-1) - img(s) for generators j = 0 . x.
  std::vector<IntVector> rows;
  const auto& gens = cover.schreier_generators();
  for (int x = 0; x < cover.rank(); ++x) {
    int j = cover.action()(0, letter(x));
    if (j == 0) continue;
    for (std::size_t s = 0; s < gens.size(); ++s) {
      IntVector diff(rank, 0);
      int cur = j;
      for (Letter y : gens[s].word) {
        int next = cover.action()(cur, y);
        int idx = cover.schreier_index(cover.edge_id(y > 0 ? cur : next, generator_of(y)));
        if (idx >= 0)
          for (std::size_t i = 0; i < rank; ++i) diff[i] += (y > 0 ? 1 : -1) * aq.images[static_cast<std::size_t>(idx)][i];
        cur = next;
      }
      for (std::size_t i = 0; i < rank; ++i) diff[i] -= aq.images[s][i];
      rows.push_back(std::move(diff));
    }
  }
  ModEchelon ech = echelon_mod(rows, rank, p);
  std::vector<IntVector> null;
  for (std::size_t c = 0, k = 0; c < rank; ++c) {
    if (k < ech.pivots.size() && ech.pivots[k] == c) {
      ++k;
      continue;
    }
    IntVector v(rank, 0);
    v[c] = 1;
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) v[ech.pivots[r]] = mod(-ech.rows[r][c], p);
    null.push_back(std::move(v));
  }
  std::vector<IntVector> out;
  for (const IntVector& coef : leading_functionals(null.size(), p, limit)) {
    IntVector f(rank, 0);
    for (std::size_t i = 0; i < null.size(); ++i)
      for (std::size_t c = 0; c < rank; ++c) f[c] = mod(f[c] + coef[i] * null[i][c], p);
    auto lead = std::find_if(f.begin(), f.end(), [](long long v) { return v != 0; });
    long long inv = 1;
    while (inv * *lead % p != 1) ++inv;
    for (auto& v : f) v = v * inv % p;
    out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace solenoid
