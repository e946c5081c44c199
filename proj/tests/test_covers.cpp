#include <set>

#include "doctest.h"
#include "solenoid/covers.hpp"
#include "solenoid/word_problem.hpp"

using namespace solenoid;

namespace {

const Presentation g1n1{SurfaceSignature::make(1, 1)};
const Presentation g2n0{SurfaceSignature::make(2, 0)};
const Presentation g0n4{SurfaceSignature::make(0, 4)};

void check_cover_invariants(const CoverDescription& c) {
  const Presentation& pres = c.presentation();
  const int d = c.degree();
  CHECK(2 - 2 * c.cover_genus() - c.cover_punctures() == d * pres.signature().euler_characteristic());
  if (!pres.closed())
    CHECK(c.schreier_generators().size() ==
          static_cast<std::size_t>(1 + d * (2 * pres.genus() + pres.punctures() - 2)));
  CHECK(c.schreier_generators().size() == static_cast<std::size_t>(d * (pres.rank() - 1) + 1));
  for (const auto& orbits : c.boundary_orbits()) {
    std::size_t total = 0;
    for (const auto& cyc : orbits) total += cyc.size();
    CHECK(total == static_cast<std::size_t>(d));
  }
  for (std::size_t s = 0; s < c.schreier_generators().size(); ++s) {
    const Word& w = c.schreier_generators()[s].word;
    CHECK(c.action().walk(0, w) == 0);
    CHECK(c.rewrite(w) == Word{static_cast<Letter>(s + 1)});
  }
  // Deck elements form a regular group: each row is a permutation sending 0 to j,
  // and composition of rows stays in the table.
  for (int j = 0; j < d; ++j) {
    CHECK(c.deck(j, 0) == j);
    std::set<int> row;
    for (int i = 0; i < d; ++i) row.insert(c.deck(j, i));
    CHECK(row.size() == static_cast<std::size_t>(d));
  }
  for (int j = 0; j < std::min(d, 8); ++j)
    for (int k = 0; k < std::min(d, 8); ++k) {
      int jk = c.deck(j, c.deck(k, 0));
      for (int i = 0; i < d; ++i) CHECK(c.deck(j, c.deck(k, i)) == c.deck(jk, i));
    }
}

// Regular action of (Z/p)^k on Schreier generators through the given images.
QuotientMap abelian_inner(const std::vector<IntVector>& images, int p) {
  std::size_t k = images[0].size(), n = 1;
  for (std::size_t t = 0; t < k; ++t) n *= static_cast<std::size_t>(p);
  QuotientMap q{p, static_cast<int>(n), {}};
  for (const IntVector& img : images) {
    std::vector<int> perm(n);
    for (std::size_t v = 0; v < n; ++v) {
      std::size_t code = v, out = 0, scale = 1;
      for (std::size_t t = 0; t < k; ++t) {
        out += static_cast<std::size_t>((static_cast<long long>(code % p) + img[t]) % p) * scale;
        code /= static_cast<std::size_t>(p);
        scale *= static_cast<std::size_t>(p);
      }
      perm[v] = static_cast<int>(out);
    }
    q.perms.push_back(perm);
  }
  return q;
}

}  // namespace

TEST_CASE("cycle map text") {
  QuotientMap q = parse_cycle_map("a:(01),b:()", g1n1, 2);
  CHECK(q.degree == 2);
  CHECK(q.perms[0] == std::vector<int>{1, 0});
  CHECK(q.perms[1] == std::vector<int>{0, 1});
  CHECK(format_cycle_map(q) == "a:(01),b:()");
  QuotientMap big = parse_cycle_map("a:(0 1 2 3 4 5 6 7 8 9 10 11), b:()", g1n1, 2);
  CHECK(big.degree == 12);
  CHECK(parse_cycle_map(format_cycle_map(big), g1n1, 2) == big);
  CHECK_THROWS_WITH_AS(parse_cycle_map("a:(01),z:()", g1n1, 2), doctest::Contains("'z'"), InputError);
  CHECK_THROWS_AS(parse_cycle_map("a:(011)", g1n1, 2), InputError);
}

TEST_CASE("build_cover examples") {
  CoverDescription c(g1n1, parse_cycle_map("a:(01),b:()", g1n1, 2));
  CHECK(c.cover_genus() == 1);
  CHECK(c.cover_punctures() == 2);
  check_cover_invariants(c);

  for (const QuotientMap& q : enumerate_index_p_kernels(g2n0, 2)) {
    CoverDescription k(g2n0, q);
    CHECK(k.cover_genus() == 3);
    CHECK(k.cover_punctures() == 0);
    check_cover_invariants(k);
  }
  CoverDescription id(g1n1, identity_map(g1n1, 2));
  CHECK(id.cover_genus() == 1);
  CHECK(id.cover_punctures() == 1);
  check_cover_invariants(id);

  CHECK_THROWS_AS(CoverDescription(g1n1, parse_cycle_map("a:(01)(23),b:()", g1n1, 2)), InputError);
  CHECK_THROWS_AS(CoverDescription(g1n1, parse_cycle_map("a:(012),b:()", g1n1, 2)), InputError);
  // a = (0 1 2 3), b = (1 3) generate a dihedral group acting non-regularly.
  CHECK_THROWS_WITH_AS(CoverDescription(g1n1, parse_cycle_map("a:(0123),b:(13)", g1n1, 2)),
                       doctest::Contains("not normal"), InputError);
  CHECK_THROWS_WITH_AS(CoverDescription(g2n0, parse_cycle_map("a:(01),b:(01),c:(01)(23),d:()", g2n0, 2)),
                       doctest::Contains("transitive"), InputError);
}

TEST_CASE("rewriting") {
  CoverDescription c(g1n1, parse_cycle_map("a:(01),b:()", g1n1, 2));
  const auto& gens = c.schreier_generators();
  REQUIRE(gens.size() == 3);
  Word a2 = c.rewrite(g1n1.parse("aa"));
  REQUIRE(a2.size() == 1);
  CHECK(gens[static_cast<std::size_t>(a2[0] - 1)].coset == 1);
  CHECK(gens[static_cast<std::size_t>(a2[0] - 1)].generator == 0);
  Word b = c.rewrite(g1n1.parse("b"));
  REQUIRE(b.size() == 1);
  CHECK(gens[static_cast<std::size_t>(b[0] - 1)].coset == 0);
  CHECK(gens[static_cast<std::size_t>(b[0] - 1)].generator == 1);
  CHECK_THROWS_WITH_AS(c.rewrite(g1n1.parse("a")), doctest::Contains("not in the subgroup"), InputError);
  for (const char* w : {"aBAb", "abAB", "aabbAA", "baBAAbab"}) {
    Word x = g1n1.parse(w);
    if (c.action().walk(0, x) != 0) continue;
    CHECK(c.expand(c.rewrite(x)) == free_reduce(x));
  }
}

TEST_CASE("frattini kernels and index-p kernels") {
  CHECK(frattini_kernel(g1n1, 2, false, kDefaultDegreeCap).degree == 4);
  CHECK(frattini_kernel(g2n0, 2, false, kDefaultDegreeCap).degree == 16);
  CHECK(frattini_kernel(g1n1, 3, false, kDefaultDegreeCap).degree == 9);
  CHECK(frattini_kernel(g0n4, 2, true, kDefaultDegreeCap).degree == 1);
  CHECK(frattini_kernel(Presentation(SurfaceSignature::make(1, 2)), 2, true, kDefaultDegreeCap).degree == 4);

  CoverDescription k(g1n1, parse_cycle_map("a:(01),b:()", g1n1, 2));
  QuotientMap f = frattini_kernel(k, 2, kDefaultDegreeCap);
  CHECK(f.degree == 2 * 8);
  CHECK(h1_mod_p(k, 2).rank == 3);
  CoverDescription fc(g1n1, f);
  check_cover_invariants(fc);

  CHECK(enumerate_index_p_kernels(g1n1, 2).size() == 3);
  CHECK(enumerate_index_p_kernels(g2n0, 2).size() == 15);
  CHECK(enumerate_index_p_kernels(g1n1, 3).size() == 4);
  CHECK(enumerate_index_p_kernels(g0n4, 3).size() == 13);
  for (auto [pres, p] : {std::pair{&g1n1, 3}, std::pair{&g2n0, 2}}) {
    auto ks = enumerate_index_p_kernels(*pres, p);
    std::set<std::string> distinct;
    for (const auto& q : ks) distinct.insert(canonical_serialization(q));
    CHECK(distinct.size() == ks.size());
    CHECK(ks.size() == hyperplane_count(static_cast<std::size_t>(pres->rank()), p));
  }
  CHECK_THROWS_AS(frattini_kernel(g2n0, 2, false, 8), BudgetExhausted);
}

TEST_CASE("closed-surface frattini kernel of a cover") {
  auto ks = enumerate_index_p_kernels(g2n0, 2);
  CoverDescription k(g2n0, ks[0]);
  AbelianQuotient aq = h1_mod_p(k, 2);
  CHECK(aq.rank == 6);  // 2 g_K with g_K = 3
}

TEST_CASE("compose agrees with the abelian extension") {
  CoverDescription k(g1n1, parse_cycle_map("a:(01),b:()", g1n1, 2));
  AbelianQuotient aq = h1_mod_p(k, 2);
  QuotientMap via_compose = compose_covers(k, abelian_inner(aq.images, 2), kDefaultDegreeCap);
  CHECK(via_compose == frattini_kernel(k, 2, kDefaultDegreeCap));

  auto ks = enumerate_index_p_kernels(g2n0, 3);
  CoverDescription k3(g2n0, ks[5]);
  AbelianQuotient aq3 = h1_mod_p(k3, 3);
  std::vector<IntVector> first;
  for (const IntVector& v : aq3.images) first.push_back({v[0]});
  QuotientMap a = abelian_extension(k3, first, 3, kDefaultDegreeCap);
  QuotientMap b = compose_covers(k3, abelian_inner(first, 3), kDefaultDegreeCap);
  CHECK(a == b);
  CoverDescription cd(g2n0, a);
  check_cover_invariants(cd);
  CHECK(cd.degree() % 9 == 0);
}

TEST_CASE("compose identities") {
  CoverDescription id(g1n1, identity_map(g1n1, 2));
  QuotientMap q = canonicalize(parse_cycle_map("a:(01),b:()", g1n1, 2));
  CHECK(compose_covers(id, q, 64) == q);
  // Two index-2 steps: the composite has degree 4 and is normal here.
  CoverDescription k(g1n1, q);
  QuotientMap inner{2, 2, {{1, 0}, {1, 0}, {1, 0}}};
  QuotientMap two = compose_covers(k, inner, 64);
  CoverDescription c(g1n1, two);
  check_cover_invariants(c);
  CHECK(c.degree() % 4 == 0);
}

TEST_CASE("normal core of a non-normal action") {
  QuotientMap q = parse_cycle_map("a:(0123),b:(13)", g1n1, 2);
  QuotientMap core = canonicalize(normal_core(q, 64));
  CHECK(core.degree == 8);  // dihedral group of order 8
  CoverDescription c(g1n1, core);
  check_cover_invariants(c);
  CHECK_THROWS_AS(normal_core(q, 4), BudgetExhausted);
}

TEST_CASE("canonical form identifies relabelled maps") {
  QuotientMap q = frattini_kernel(g1n1, 2, false, 64);
  // Conjugate the labels by a permutation fixing 0.
  std::vector<int> sigma{0, 3, 1, 2};
  QuotientMap r{2, 4, q.perms};
  for (std::size_t x = 0; x < q.perms.size(); ++x)
    for (std::size_t i = 0; i < 4; ++i)
      r.perms[x][static_cast<std::size_t>(sigma[i])] = sigma[static_cast<std::size_t>(q.perms[x][i])];
  CHECK(canonicalize(r) == q);
  CHECK(canonical_serialization(q).rfind("4|", 0) == 0);
}

TEST_CASE("covers over the four-punctured sphere") {
  for (const QuotientMap& q : enumerate_index_p_kernels(g0n4, 2)) {
    CoverDescription c(g0n4, q);
    check_cover_invariants(c);
    CoverDescription f(g0n4, frattini_kernel(c, 2, 64));
    check_cover_invariants(f);
  }
}
