#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace solenoid {

using BigInt = boost::multiprecision::cpp_int;

class Overflow : public std::overflow_error {
 public:
  Overflow() : std::overflow_error("int64 overflow") {}
};

// int64 that throws Overflow instead of wrapping; algorithms templated on the
// scalar run on Checked first and are repeated on BigInt when it throws.
struct Checked {
  long long v = 0;
  Checked() = default;
  Checked(long long x) : v(x) {}  // NOLINT: implicit by design
  friend Checked operator+(Checked a, Checked b) {
    long long r;
    if (__builtin_add_overflow(a.v, b.v, &r)) throw Overflow();
    return r;
  }
  friend Checked operator-(Checked a, Checked b) {
    long long r;
    if (__builtin_sub_overflow(a.v, b.v, &r)) throw Overflow();
    return r;
  }
  friend Checked operator*(Checked a, Checked b) {
    long long r;
    if (__builtin_mul_overflow(a.v, b.v, &r)) throw Overflow();
    return r;
  }
  friend Checked operator/(Checked a, Checked b) {
    if (a.v == INT64_MIN && b.v == -1) throw Overflow();
    return a.v / b.v;
  }
  friend Checked operator%(Checked a, Checked b) { return b.v == -1 ? 0 : a.v % b.v; }
  Checked operator-() const { return Checked(0) - *this; }
  Checked& operator+=(Checked b) { return *this = *this + b; }
  Checked& operator-=(Checked b) { return *this = *this - b; }
  friend auto operator<=>(Checked a, Checked b) = default;
};

template <class T>
struct Matrix {
  std::size_t rows = 0, cols = 0;
  std::vector<T> a;
  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
  T& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  bool operator==(const Matrix&) const = default;
};

using IntMatrix = Matrix<long long>;
using IntVector = std::vector<long long>;

IntMatrix identity_matrix(std::size_t n);
IntMatrix transpose(const IntMatrix& m);
IntMatrix multiply(const IntMatrix& x, const IntMatrix& y);
IntVector apply(const IntMatrix& m, const IntVector& v);
long long bilinear(const IntVector& x, const IntMatrix& m, const IntVector& y);
IntMatrix standard_symplectic(std::size_t n);  // blocks [[0,1],[-1,0]]

// Smith normal form diagonal: nonzero invariant factors d1 | d2 | ..., positive.
std::vector<BigInt> smith_invariants(const IntMatrix& m);

BigInt determinant(const IntMatrix& m);

// Exact inverse of a unimodular matrix; throws std::domain_error otherwise.
IntMatrix unimodular_inverse(const IntMatrix& m);

// Row Hermite normal form of the lattice spanned by `rows`; zero rows dropped.
std::vector<IntVector> hermite_rows(const std::vector<IntVector>& rows);

// P with P^T M P = standard_symplectic and |det P| = 1, for M skew and
// unimodular; throws std::domain_error otherwise.
IntMatrix symplectic_basis(const IntMatrix& m);

// Reduced row echelon form over F_p; returns the nonzero rows and pivot columns.
struct ModEchelon {
  std::vector<IntVector> rows;
  std::vector<std::size_t> pivots;
};
ModEchelon echelon_mod(std::vector<IntVector> rows, std::size_t cols, long long p);
// Coordinates of v in F_p^cols / span(ech) on the non-pivot columns.
IntVector quotient_coordinates(const ModEchelon& ech, IntVector v, long long p);

long long mod(long long x, long long m);

}  // namespace solenoid
