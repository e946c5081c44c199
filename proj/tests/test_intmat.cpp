#include <functional>
#include <random>

#include "doctest.h"
#include "solenoid/intmat.hpp"

using namespace solenoid;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int range) {
  std::uniform_int_distribution<int> d(-range, range);
  IntMatrix m(r, c);
  for (auto& x : m.a) x = d(rng);
  return m;
}

// Cofactor expansion; independent of the Bareiss route.
long long cofactor_det(const IntMatrix& m) {
  const std::size_t n = m.rows;
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  long long s = 0;
  for (std::size_t j = 0; j < n; ++j) {
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = m(r, c);
    s += (j % 2 ? -1 : 1) * m(0, j) * cofactor_det(minor);
  }
  return s;
}

long long gcd_ll(long long a, long long b) { return b == 0 ? (a < 0 ? -a : a) : gcd_ll(b, a % b); }

// Determinantal divisors: d_k = gcd of k x k minors; invariants d_k / d_{k-1}.
std::vector<long long> invariants_by_minors(const IntMatrix& m) {
  std::vector<long long> dk{1};
  const std::size_t lim = std::min(m.rows, m.cols);
  for (std::size_t k = 1; k <= lim; ++k) {
    long long g = 0;
    std::vector<std::size_t> rs, cs;
    std::function<void(std::size_t)> pick_cols;
    std::function<void(std::size_t)> pick_rows = [&](std::size_t start) {
      if (rs.size() == k) {
        pick_cols(0);
        return;
      }
      for (std::size_t i = start; i < m.rows; ++i) {
        rs.push_back(i);
        pick_rows(i + 1);
        rs.pop_back();
      }
    };
    pick_cols = [&](std::size_t start) {
      if (cs.size() == k) {
        IntMatrix sub(k, k);
        for (std::size_t a = 0; a < k; ++a)
          for (std::size_t b = 0; b < k; ++b) sub(a, b) = m(rs[a], cs[b]);
        g = gcd_ll(g, cofactor_det(sub));
        return;
      }
      for (std::size_t j = start; j < m.cols; ++j) {
        cs.push_back(j);
        pick_cols(j + 1);
        cs.pop_back();
      }
    };
    pick_rows(0);
    if (g == 0) break;
    dk.push_back(g);
  }
  std::vector<long long> inv;
  for (std::size_t k = 1; k < dk.size(); ++k) inv.push_back(dk[k] / dk[k - 1]);
  return inv;
}

IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, int steps) {
  IntMatrix q = identity_matrix(n);
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int s = 0; s < steps; ++s) {
    std::size_t i = idx(rng), j = idx(rng);
    if (i == j) continue;
    int c = coef(rng);
    for (std::size_t k = 0; k < n; ++k) q(i, k) += c * q(j, k);
  }
  return q;
}

}  // namespace

TEST_CASE("smith invariants match determinantal divisors") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 200; ++t) {
    IntMatrix m = random_matrix(rng, 1 + rng() % 4, 1 + rng() % 4, 6);
    auto got = smith_invariants(m);
    auto want = invariants_by_minors(m);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == want[i]);
  }
}

TEST_CASE("smith invariants survive int64 overflow") {
  IntMatrix m(2, 2);
  m(0, 0) = 3037000500LL;
  m(0, 1) = 3037000499LL;
  m(1, 0) = 3037000499LL;
  m(1, 1) = 3037000498LL;
  auto d = smith_invariants(m);
  REQUIRE(d.size() == 2);
  CHECK(d[0] == 1);
  CHECK(d[1] == 1);  // det = -1
}

TEST_CASE("determinant and unimodular inverse") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 200; ++t) {
    IntMatrix m = random_matrix(rng, 1 + rng() % 5, 0, 0);
    m = random_matrix(rng, m.rows, m.rows, 5);
    CHECK(determinant(m) == cofactor_det(m));
  }
  for (int t = 0; t < 100; ++t) {
    std::size_t n = 1 + rng() % 8;
    IntMatrix q = random_unimodular(rng, n, 30);
    IntMatrix inv = unimodular_inverse(q);
    CHECK(multiply(q, inv) == identity_matrix(n));
    CHECK(multiply(inv, q) == identity_matrix(n));
  }
  IntMatrix two = identity_matrix(2);
  two(1, 1) = 2;
  CHECK_THROWS_AS(unimodular_inverse(two), std::domain_error);
}

TEST_CASE("hermite form depends only on the lattice") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    std::size_t k = 1 + rng() % 4, n = 2 + rng() % 4;
    IntMatrix gens = random_matrix(rng, k, n, 4);
    std::vector<IntVector> rows;
    for (std::size_t i = 0; i < k; ++i) rows.emplace_back(gens.a.begin() + i * n, gens.a.begin() + (i + 1) * n);
    // Same lattice: unimodular recombination plus a redundant sum row.
    IntMatrix q = random_unimodular(rng, k, 10);
    IntMatrix mixed = multiply(q, gens);
    std::vector<IntVector> rows2;
    for (std::size_t i = 0; i < k; ++i) rows2.emplace_back(mixed.a.begin() + i * n, mixed.a.begin() + (i + 1) * n);
    IntVector sum(n, 0);
    for (auto& r : rows)
      for (std::size_t j = 0; j < n; ++j) sum[j] += r[j];
    rows2.push_back(sum);
    CHECK(hermite_rows(rows) == hermite_rows(rows2));
  }
}

TEST_CASE("symplectic basis of congruent forms") {
  std::mt19937_64 rng(4);
  for (std::size_t n : {2, 4, 6, 8}) {
    for (int t = 0; t < 20; ++t) {
      IntMatrix q = random_unimodular(rng, n, 25);
      IntMatrix m = multiply(multiply(transpose(q), standard_symplectic(n)), q);
      IntMatrix p = symplectic_basis(m);
      CHECK(multiply(multiply(transpose(p), m), p) == standard_symplectic(n));
    }
  }
  IntMatrix degenerate(2, 2);
  degenerate(0, 1) = 2;
  degenerate(1, 0) = -2;
  CHECK_THROWS_AS(symplectic_basis(degenerate), std::domain_error);
}

TEST_CASE("echelon mod p and quotient coordinates") {
  // span{(1,1,0)} in F_2^3: quotient has rank 2, (1,1,0) maps to zero.
  ModEchelon e = echelon_mod({{1, 1, 0}, {3, 3, 0}}, 3, 2);
  CHECK(e.rows.size() == 1);
  CHECK(quotient_coordinates(e, {1, 1, 0}, 2) == IntVector{0, 0});
  CHECK(quotient_coordinates(e, {1, 0, 1}, 2) == IntVector{1, 1});
  ModEchelon f = echelon_mod({{1, 2}, {2, 1}}, 2, 3);
  CHECK(f.rows.size() == 1);  // rows are dependent mod 3
}
