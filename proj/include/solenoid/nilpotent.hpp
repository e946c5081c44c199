#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "solenoid/surface.hpp"

namespace solenoid {

// Bracket convention throughout: [x,y] = x^-1 y^-1 x y.

// Generators are leaves; a node [left, right] indexes two earlier elements.
struct BasicCommutator {
  int weight = 1;
  int generator = -1;  // leaves only
  int left = -1, right = -1;
  int index_in_weight = 0;  // 1-based position among elements of equal weight
};

// Hall basic commutators on `rank` generators through weight `weight`.
// Elements are ordered by weight; within a weight, [u,v] precede [u',v'] when
// u < u', or u = u' and v < v'.  [u,v] is basic iff u > v and, when u = [x,y],
// y <= v.
class HallBasis {
 public:
  HallBasis(int rank, int weight);

  int rank() const { return rank_; }
  int max_weight() const { return weight_; }
  std::size_t size() const { return elems_.size(); }
  const BasicCommutator& operator[](std::size_t i) const { return elems_[i]; }
  // Number of elements of each weight 1..max_weight.
  std::vector<std::size_t> counts() const;
  // Index of the basic commutator [u,v]; nothing when it is not basic or too heavy.
  std::optional<int> bracket(int u, int v) const;
  std::string format(int i) const;
  Word expand(int i) const;

 private:
  int rank_, weight_;
  std::vector<BasicCommutator> elems_;
  std::map<std::pair<int, int>, int> brackets_;
};

// (1/i) sum_{d | i} mu(d) r^{i/d}.
long long witt_count(int rank, int weight);

// Exponents h of the collected form prod_i u_i^{h_i} (basis order) with
// w = prod u_i^{h_i} modulo the (max_weight + 1)-th lower central term.
struct NilpotentExpansion {
  int weight = 0;
  std::vector<long long> exponents;  // indexed like the basis
};

// Collection in the free group: letters are moved left one basic commutator
// at a time with y c = c y [y,c] and y c^-1 = c^-1 y^(c^-1), dropping terms
// heavier than the basis.
NilpotentExpansion collect(const Word& w, const HallBasis& basis);
// Free presentations only; closed surfaces raise InputError.
NilpotentExpansion collect(const Word& w, const Presentation& pres, int weight);

// Noncommutative power series in X_1..X_r truncated above `degree`.
class MagnusSeries {
 public:
  MagnusSeries(int rank, int degree);
  static MagnusSeries one(int rank, int degree);
  // x_k -> 1 + X_k, x_k^-1 -> 1 - X_k + X_k^2 - ...
  static MagnusSeries of_letter(Letter x, int rank, int degree);

  int rank() const { return rank_; }
  int degree() const { return degree_; }
  long long coefficient(const std::vector<int>& monomial) const;
  const std::map<std::vector<int>, long long>& terms() const { return terms_; }
  // Homogeneous part of the given degree.
  std::map<std::vector<int>, long long> part(int d) const;

  MagnusSeries operator*(const MagnusSeries& o) const;
  MagnusSeries operator-(const MagnusSeries& o) const;
  // Requires constant term 1.
  MagnusSeries inverse() const;
  bool operator==(const MagnusSeries& o) const { return terms_ == o.terms_; }

  void add(const std::vector<int>& monomial, long long c);

 private:
  int rank_, degree_;
  std::map<std::vector<int>, long long> terms_;  // zero coefficients are never stored
};

MagnusSeries magnus_truncation(const Word& w, int rank, int degree);

// Lie polynomial of a basic commutator: X_k for leaves, [L(u), L(v)] for nodes.
std::map<std::vector<int>, long long> lie_polynomial(const HallBasis& basis, int i);

// Exponents of the collected form recovered from Magnus series alone: at each
// weight the lowest homogeneous part is solved against the Lie polynomials and
// the corresponding product is divided off.  An independent route to collect().
std::vector<long long> magnus_coordinates(const Word& w, const HallBasis& basis);

// Whether alpha lies in <delta><delta'>, judged through the collected forms.
struct DoubleCosetResult {
  enum class Status { member, excluded, undecided };
  Status status = Status::undecided;
  long long s = 0, t = 0;  // member: delta^s delta'^t = alpha exactly
  int weight = 0;          // excluded: lowest weight with no solution mod the modulus
};
std::string to_string(DoubleCosetResult::Status s);

// Exponents of delta^s delta'^t are integer polynomials of degree <= weight in
// (s, t), so residues of s and t modulo modulus * p^{v_p(weight!)} decide the
// congruences; integer candidates with |s|, |t| <= bound are checked exactly.
DoubleCosetResult double_coset_test(const Word& delta, const Word& delta2, const Word& alpha,
                                    const Presentation& pres, int weight, long long modulus, int bound = 32);

// Smallest l with w outside K_l in the Frattini tower K_0 = Pi, K_{l+1} =
// ker(K_l -> H_1(K_l; F_p)); nothing when the tower outgrows `cap` cosets or
// max_depth is passed.  Throws InputError for the trivial word.
struct ResidualDepth {
  std::optional<int> depth;
  std::vector<int> degrees;  // [Pi : K_l] for the levels built
};
ResidualDepth residual_p_depth(const Word& w, const Presentation& pres, int p, int max_depth,
                               std::size_t cap = 4096);

}  // namespace solenoid
