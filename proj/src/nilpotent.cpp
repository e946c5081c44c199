#include "solenoid/nilpotent.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>

#include "solenoid/covers.hpp"
#include "solenoid/intmat.hpp"
#include "solenoid/word_problem.hpp"

namespace solenoid {

namespace {

using Rational = boost::multiprecision::cpp_rational;
using Poly = std::map<std::vector<int>, long long>;

long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow();
  return r;
}

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow();
  return r;
}

void poly_add(Poly& p, const std::vector<int>& m, long long c) {
  if (c == 0) return;
  auto [it, inserted] = p.emplace(m, c);
  if (!inserted) {
    it->second = checked_add(it->second, c);
    if (it->second == 0) p.erase(it);
  }
}

Poly poly_bracket(const Poly& x, const Poly& y) {
  Poly out;
  for (const auto& [mx, cx] : x)
    for (const auto& [my, cy] : y) {
      std::vector<int> xy = mx, yx = my;
      xy.insert(xy.end(), my.begin(), my.end());
      yx.insert(yx.end(), mx.begin(), mx.end());
      poly_add(out, xy, checked_mul(cx, cy));
      poly_add(out, yx, -checked_mul(cx, cy));
    }
  return out;
}

void require_free(const Presentation& pres) {
  if (pres.closed()) throw InputError("collection needs a free group (a punctured surface)");
}

// Generalized binomial coefficient C(s, a) for any integer s.
long long binomial(long long s, int a) {
  BigInt num = 1, den = 1;
  for (int k = 0; k < a; ++k) num *= s - k, den *= k + 1;
  BigInt q = num / den;
  if (q > BigInt(INT64_MAX) || q < BigInt(INT64_MIN)) throw Overflow();
  return static_cast<long long>(q);
}

struct Term {
  int c;
  int e;  // +1 or -1
};

class Collector {
 public:
  explicit Collector(const HallBasis& basis) : basis_(basis) {}

  NilpotentExpansion run(const Word& w) {
    std::vector<Term> tail;
    for (Letter x : free_reduce(w)) tail.push_back({generator_of(x), x > 0 ? 1 : -1});
    NilpotentExpansion out{basis_.max_weight(), std::vector<long long>(basis_.size(), 0)};
    for (int c = 0; c < static_cast<int>(basis_.size()); ++c) {
      std::vector<Term> rest;
      long long e = 0;
      // Every occurrence of c moves left past `rest`, conjugating it.
      for (const Term& t : tail) {
        if (t.c != c) {
          rest.push_back(t);
          continue;
        }
        rest = conjugate(rest, c, t.e);
        e += t.e;
      }
      out.exponents[static_cast<std::size_t>(c)] = e;
      tail = std::move(rest);
    }
    if (!tail.empty()) throw std::logic_error("collection left terms behind");
    return out;
  }

 private:
  // [y, c] when it is light enough; terms in the uncollected part are always
  // basic relative to the commutator being collected.
  std::optional<int> next(int y, int c) const {
    if (basis_[static_cast<std::size_t>(y)].weight + basis_[static_cast<std::size_t>(c)].weight >
        basis_.max_weight())
      return std::nullopt;
    auto b = basis_.bracket(y, c);
    if (!b) throw std::logic_error("collection met a non-basic commutator");
    return b;
  }

  // y^(c^-1) = y ([y,c]^(c^-1))^-1.
  void conjugate_inverse(int y, int sign, std::vector<Term>& out) const {
    std::vector<Term> w{{y, 1}};
    if (auto yc = next(y, c_)) {
      std::vector<Term> sub;
      conjugate_inverse(*yc, 1, sub);
      for (auto it = sub.rbegin(); it != sub.rend(); ++it) w.push_back({it->c, -it->e});
    }
    if (sign > 0) {
      out.insert(out.end(), w.begin(), w.end());
    } else {
      for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->c, -it->e});
    }
  }

  std::vector<Term> conjugate(const std::vector<Term>& rest, int c, int delta) {
    c_ = c;
    std::vector<Term> out;
    for (const Term& t : rest) {
      if (delta > 0) {
        // y^c = y [y,c] and (y^-1)^c = [y,c]^-1 y^-1.
        auto yc = next(t.c, c);
        if (t.e > 0) {
          out.push_back(t);
          if (yc) out.push_back({*yc, 1});
        } else {
          if (yc) out.push_back({*yc, -1});
          out.push_back(t);
        }
      } else {
        conjugate_inverse(t.c, t.e, out);
      }
    }
    return out;
  }

  const HallBasis& basis_;
  int c_ = 0;
};

// Solves part = sum_j h_j L_j over the integers for the basis elements of one weight.
std::vector<long long> solve_lie(const Poly& part, const std::vector<Poly>& lie) {
  std::vector<std::vector<int>> monos;
  for (const auto& [m, c] : part) monos.push_back(m);
  for (const Poly& l : lie)
    for (const auto& [m, c] : l) monos.push_back(m);
  std::sort(monos.begin(), monos.end());
  monos.erase(std::unique(monos.begin(), monos.end()), monos.end());
  const std::size_t n = lie.size(), rows = monos.size();
  std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(n + 1));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t j = 0; j < n; ++j) {
      auto it = lie[j].find(monos[r]);
      if (it != lie[j].end()) a[r][j] = it->second;
    }
    auto it = part.find(monos[r]);
    if (it != part.end()) a[r][n] = it->second;
  }
  std::size_t row = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t col = 0; col < n && row < rows; ++col) {
    std::size_t piv = row;
    while (piv < rows && a[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[row]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || a[r][col] == 0) continue;
      Rational f = a[r][col] / a[row][col];
      for (std::size_t k = col; k <= n; ++k) a[r][k] -= f * a[row][k];
    }
    pivot_col.push_back(col);
    ++row;
  }
  if (pivot_col.size() != n) throw std::logic_error("Lie polynomials are dependent");
  for (std::size_t r = row; r < rows; ++r)
    if (a[r][n] != 0) throw std::logic_error("graded part is not a Lie element");
  std::vector<long long> h(n);
  for (std::size_t r = 0; r < n; ++r) {
    Rational v = a[r][n] / a[r][pivot_col[r]];
    if (boost::multiprecision::denominator(v) != 1) throw std::logic_error("non-integral Lie coordinate");
    h[pivot_col[r]] = static_cast<long long>(boost::multiprecision::numerator(v));
  }
  return h;
}

}  // namespace

HallBasis::HallBasis(int rank, int weight) : rank_(rank), weight_(weight) {
  if (rank < 1 || weight < 1) throw InputError("Hall basis needs rank >= 1 and weight >= 1");
  for (int k = 0; k < rank; ++k) elems_.push_back(BasicCommutator{1, k, -1, -1, k + 1});
  for (int n = 2; n <= weight; ++n) {
    const int existing = static_cast<int>(elems_.size());
    int count = 0;
    for (int u = 0; u < existing; ++u)
      for (int v = 0; v < u; ++v) {
        const BasicCommutator& cu = elems_[static_cast<std::size_t>(u)];
        if (cu.weight + elems_[static_cast<std::size_t>(v)].weight != n) continue;
        if (cu.right > v) continue;
        brackets_[{u, v}] = static_cast<int>(elems_.size());
        elems_.push_back(BasicCommutator{n, -1, u, v, ++count});
      }
  }
}

std::vector<std::size_t> HallBasis::counts() const {
  std::vector<std::size_t> out(static_cast<std::size_t>(weight_), 0);
  for (const auto& e : elems_) ++out[static_cast<std::size_t>(e.weight - 1)];
  return out;
}

std::optional<int> HallBasis::bracket(int u, int v) const {
  auto it = brackets_.find({u, v});
  if (it == brackets_.end()) return std::nullopt;
  return it->second;
}

std::string HallBasis::format(int i) const {
  const BasicCommutator& e = elems_[static_cast<std::size_t>(i)];
  if (e.generator >= 0) return std::string(1, static_cast<char>('a' + e.generator));
  return "[" + format(e.left) + "," + format(e.right) + "]";
}

Word HallBasis::expand(int i) const {
  const BasicCommutator& e = elems_[static_cast<std::size_t>(i)];
  if (e.generator >= 0) return Word{letter(e.generator)};
  Word x = expand(e.left), y = expand(e.right);
  return free_reduce(concat(concat(inverse(x), inverse(y)), concat(x, y)));
}

long long witt_count(int rank, int weight) {
  auto mobius = [](int n) {
    int mu = 1;
    for (int q = 2; q * q <= n; ++q) {
      if (n % q) continue;
      n /= q;
      if (n % q == 0) return 0;
      mu = -mu;
    }
    return n > 1 ? -mu : mu;
  };
  long long total = 0;
  for (int d = 1; d <= weight; ++d) {
    if (weight % d) continue;
    long long pw = 1;
    for (int k = 0; k < weight / d; ++k) pw = checked_mul(pw, rank);
    total = checked_add(total, mobius(d) * pw);
  }
  return total / weight;
}

NilpotentExpansion collect(const Word& w, const HallBasis& basis) {
  for (Letter x : w)
    if (generator_of(x) >= basis.rank()) throw InputError("word uses a generator outside the basis");
  return Collector(basis).run(w);
}

NilpotentExpansion collect(const Word& w, const Presentation& pres, int weight) {
  require_free(pres);
  return collect(w, HallBasis(pres.rank(), weight));
}

MagnusSeries::MagnusSeries(int rank, int degree) : rank_(rank), degree_(degree) {}

MagnusSeries MagnusSeries::one(int rank, int degree) {
  MagnusSeries s(rank, degree);
  s.add({}, 1);
  return s;
}

MagnusSeries MagnusSeries::of_letter(Letter x, int rank, int degree) {
  MagnusSeries s = one(rank, degree);
  const int k = generator_of(x);
  std::vector<int> m;
  for (int d = 1; d <= degree; ++d) {
    m.push_back(k);
    if (x > 0) {
      if (d == 1) s.add(m, 1);
    } else {
      s.add(m, d % 2 ? -1 : 1);
    }
  }
  return s;
}

void MagnusSeries::add(const std::vector<int>& monomial, long long c) {
  if (static_cast<int>(monomial.size()) > degree_) return;
  poly_add(terms_, monomial, c);
}

long long MagnusSeries::coefficient(const std::vector<int>& monomial) const {
  auto it = terms_.find(monomial);
  return it == terms_.end() ? 0 : it->second;
}

std::map<std::vector<int>, long long> MagnusSeries::part(int d) const {
  std::map<std::vector<int>, long long> out;
  for (const auto& [m, c] : terms_)
    if (static_cast<int>(m.size()) == d) out.emplace(m, c);
  return out;
}

MagnusSeries MagnusSeries::operator*(const MagnusSeries& o) const {
  MagnusSeries out(rank_, degree_);
  for (const auto& [mx, cx] : terms_)
    for (const auto& [my, cy] : o.terms_) {
      if (static_cast<int>(mx.size() + my.size()) > degree_) continue;
      std::vector<int> m = mx;
      m.insert(m.end(), my.begin(), my.end());
      out.add(m, checked_mul(cx, cy));
    }
  return out;
}

MagnusSeries MagnusSeries::operator-(const MagnusSeries& o) const {
  MagnusSeries out = *this;
  for (const auto& [m, c] : o.terms_) out.add(m, -c);
  return out;
}

MagnusSeries MagnusSeries::inverse() const {
  if (coefficient({}) != 1) throw std::logic_error("series is not invertible over the integers");
  // (1 + A)^-1 = sum_k (-A)^k; A has no constant term so degree bounds the sum.
  MagnusSeries a = *this - one(rank_, degree_);
  MagnusSeries neg(rank_, degree_);
  for (const auto& [m, c] : a.terms_) neg.add(m, -c);
  MagnusSeries out = one(rank_, degree_), pw = one(rank_, degree_);
  for (int k = 1; k <= degree_; ++k) {
    pw = pw * neg;
    for (const auto& [m, c] : pw.terms_) out.add(m, c);
  }
  return out;
}

MagnusSeries magnus_truncation(const Word& w, int rank, int degree) {
  MagnusSeries s = MagnusSeries::one(rank, degree);
  for (Letter x : w) s = s * MagnusSeries::of_letter(x, rank, degree);
  return s;
}

std::map<std::vector<int>, long long> lie_polynomial(const HallBasis& basis, int i) {
  const BasicCommutator& e = basis[static_cast<std::size_t>(i)];
  if (e.generator >= 0) return Poly{{{e.generator}, 1}};
  return poly_bracket(lie_polynomial(basis, e.left), lie_polynomial(basis, e.right));
}

std::vector<long long> magnus_coordinates(const Word& w, const HallBasis& basis) {
  const int r = basis.rank(), deg = basis.max_weight();
  MagnusSeries m = magnus_truncation(w, r, deg);
  std::vector<long long> h(basis.size(), 0);
  for (int weight = 1; weight <= deg; ++weight) {
    for (int d = 1; d < weight; ++d)
      if (!m.part(d).empty()) throw std::logic_error("lower graded part survived");
    std::vector<int> idx;
    std::vector<Poly> lie;
    for (int i = 0; i < static_cast<int>(basis.size()); ++i)
      if (basis[static_cast<std::size_t>(i)].weight == weight) idx.push_back(i), lie.push_back(lie_polynomial(basis, i));
    std::vector<long long> sol = solve_lie(m.part(weight), lie);
    MagnusSeries q = MagnusSeries::one(r, deg);
    for (std::size_t j = 0; j < idx.size(); ++j) {
      h[static_cast<std::size_t>(idx[j])] = sol[j];
      MagnusSeries u = magnus_truncation(basis.expand(idx[j]), r, deg);
      if (sol[j] < 0) u = u.inverse();
      for (long long k = 0; k < (sol[j] < 0 ? -sol[j] : sol[j]); ++k) q = q * u;
    }
    m = q.inverse() * m;
  }
  if (m != MagnusSeries::one(r, deg)) throw std::logic_error("Magnus peeling left a remainder");
  return h;
}

std::string to_string(DoubleCosetResult::Status s) {
  switch (s) {
    case DoubleCosetResult::Status::member: return "member";
    case DoubleCosetResult::Status::excluded: return "excluded";
    case DoubleCosetResult::Status::undecided: return "undecided";
  }
  return "undecided";
}

DoubleCosetResult double_coset_test(const Word& delta, const Word& delta2, const Word& alpha,
                                    const Presentation& pres, int weight, long long modulus, int bound) {
  require_free(pres);
  if (free_reduce(delta).empty() || free_reduce(delta2).empty()) throw InputError("double coset of a trivial word");
  if (weight < 1) throw InputError("weight must be positive");
  if (modulus < 2) throw InputError("modulus must be a prime power");
  long long p = 2;
  while (modulus % p) ++p;
  for (long long m = modulus; m > 1; m /= p)
    if (m % p) throw InputError("modulus must be a prime power");

  HallBasis basis(pres.rank(), weight);
  const std::size_t nb = basis.size();
  const std::vector<long long> target = collect(alpha, basis).exponents;

  // Newton coefficients c[a][b] of each exponent in the binomial basis C(s,a) C(t,b).
  const int n = weight + 1;
  std::vector<std::vector<std::vector<long long>>> grid(static_cast<std::size_t>(n),
                                                         std::vector<std::vector<long long>>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) grid[a][b] = collect(concat(power(delta, a), power(delta2, b)), basis).exponents;
  auto coeff = grid;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (std::size_t k = 0; k < nb; ++k) {
        long long c = 0;
        for (int i = 0; i <= a; ++i)
          for (int j = 0; j <= b; ++j) {
            long long sign = (a - i + b - j) % 2 ? -1 : 1;
            c = checked_add(c, checked_mul(sign * binomial(a, i) * binomial(b, j), grid[i][j][k]));
          }
        coeff[a][b][k] = c;
      }
  // Largest weight index whose exponents all match; weight + 1 for a full match.
  auto first_failure = [&](long long s, long long t, long long mod) {
    std::vector<long long> bs(static_cast<std::size_t>(n)), bt(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) bs[a] = binomial(s, a), bt[a] = binomial(t, a);
    for (std::size_t k = 0; k < nb; ++k) {
      long long v = 0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) v = checked_add(v, checked_mul(coeff[a][b][k], checked_mul(bs[a], bt[b])));
      bool equal = mod ? solenoid::mod(v - target[k], mod) == 0 : v == target[k];
      if (!equal) return basis[k].weight;
    }
    return weight + 1;
  };

  DoubleCosetResult out;
  int vp = 0;
  for (int k = 2; k <= weight; ++k)
    for (int x = k; x % p == 0; x /= static_cast<int>(p)) ++vp;
  long long period = modulus;
  for (int k = 0; k < vp; ++k) period *= p;
  if (period <= 4096) {
    int best = 0;
    for (long long s = 0; s < period && best <= weight; ++s)
      for (long long t = 0; t < period && best <= weight; ++t) best = std::max(best, first_failure(s, t, modulus));
    if (best <= weight) {
      out.status = DoubleCosetResult::Status::excluded;
      out.weight = best;
      return out;
    }
  }
  std::vector<std::pair<long long, long long>> cands;
  for (long long s = -bound; s <= bound; ++s)
    for (long long t = -bound; t <= bound; ++t) cands.emplace_back(s, t);
  std::stable_sort(cands.begin(), cands.end(), [](const auto& x, const auto& y) {
    return std::llabs(x.first) + std::llabs(x.second) < std::llabs(y.first) + std::llabs(y.second);
  });
  const Word alpha_inv = inverse(alpha);
  for (auto [s, t] : cands) {
    if (first_failure(s, t, 0) <= weight) continue;
    if (free_reduce(concat(concat(power(delta, s), power(delta2, t)), alpha_inv)).empty()) {
      out.status = DoubleCosetResult::Status::member;
      out.s = s, out.t = t;
      return out;
    }
  }
  return out;
}

ResidualDepth residual_p_depth(const Word& w, const Presentation& pres, int p, int max_depth, std::size_t cap) {
  if (!is_prime(p)) throw InputError("p must be prime");
  if (is_trivial(w, pres)) throw InputError("word " + format_word(w) + " is trivial");
  ResidualDepth out;
  CoverDescription cur(pres, identity_map(pres, p));
  out.degrees.push_back(cur.degree());
  for (int l = 1; l <= max_depth; ++l) {
    // w lies in K_{l-1}; it leaves K_l iff its image in H_1(K_{l-1}; F_p) is nonzero.
    AbelianQuotient aq = h1_mod_p(cur, p);
    IntVector img(aq.rank, 0);
    for (Letter s : cur.rewrite(w)) {
      const IntVector& v = aq.images[static_cast<std::size_t>(generator_of(s))];
      for (std::size_t k = 0; k < aq.rank; ++k) img[k] = mod(img[k] + (s > 0 ? v[k] : -v[k]), p);
    }
    if (std::any_of(img.begin(), img.end(), [](long long x) { return x != 0; })) {
      out.depth = l;
      return out;
    }
    if (l == max_depth) break;
    try {
      cur = CoverDescription(pres, frattini_kernel(cur, p, cap));
    } catch (const BudgetExhausted&) {
      break;
    }
    out.degrees.push_back(cur.degree());
  }
  return out;
}

}  // namespace solenoid
