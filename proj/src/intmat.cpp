#include "solenoid/intmat.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace solenoid {

namespace {

Checked abs_of(Checked x) { return x.v < 0 ? -x : x; }
BigInt abs_of(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }
BigInt to_big(Checked x) { return BigInt(x.v); }
BigInt to_big(const BigInt& x) { return x; }

long long to_ll(const BigInt& x) {
  if (x > std::numeric_limits<long long>::max() || x < std::numeric_limits<long long>::min())
    throw Overflow();
  return x.convert_to<long long>();
}
long long to_ll(Checked x) { return x.v; }

template <class T>
Matrix<T> convert(const IntMatrix& m) {
  Matrix<T> r(m.rows, m.cols);
  for (std::size_t i = 0; i < m.a.size(); ++i) r.a[i] = T(m.a[i]);
  return r;
}

template <class T>
void swap_rows(Matrix<T>& m, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < m.cols; ++c) std::swap(m(i, c), m(j, c));
}

template <class T>
void swap_cols(Matrix<T>& m, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < m.rows; ++r) std::swap(m(r, i), m(r, j));
}

// row_i -= q * row_j
template <class T>
void row_axpy(Matrix<T>& m, std::size_t i, std::size_t j, const T& q) {
  for (std::size_t c = 0; c < m.cols; ++c)
    if (m(j, c) != T(0)) m(i, c) = m(i, c) - q * m(j, c);
}

template <class T>
void col_axpy(Matrix<T>& m, std::size_t i, std::size_t j, const T& q) {
  for (std::size_t r = 0; r < m.rows; ++r)
    if (m(r, j) != T(0)) m(r, i) = m(r, i) - q * m(r, j);
}

template <class T>
std::vector<BigInt> diagonal_of(Matrix<T> m) {
  std::vector<BigInt> diag;
  const std::size_t lim = std::min(m.rows, m.cols);
  for (std::size_t t = 0; t < lim; ++t) {
    // Pivot: the first unit entry by columns, else the least nonzero entry.
    std::size_t pr = 0, pc = 0;
    T best(0);
    for (std::size_t c = t; c < m.cols && best != T(1); ++c)
      for (std::size_t r = t; r < m.rows; ++r) {
        T v = abs_of(m(r, c));
        if (v != T(0) && (best == T(0) || v < best)) {
          best = v, pr = r, pc = c;
          if (best == T(1)) break;
        }
      }
    if (best == T(0)) break;
    swap_rows(m, t, pr);
    swap_cols(m, t, pc);
    for (;;) {
      bool clean = true;
      for (std::size_t r = t + 1; r < m.rows; ++r) {
        if (m(r, t) == T(0)) continue;
        row_axpy(m, r, t, T(m(r, t) / m(t, t)));
        if (m(r, t) != T(0)) clean = false;
      }
      for (std::size_t c = t + 1; c < m.cols; ++c) {
        if (m(t, c) == T(0)) continue;
        col_axpy(m, c, t, T(m(t, c) / m(t, t)));
        if (m(t, c) != T(0)) clean = false;
      }
      if (clean) break;
      // A remainder is smaller than the pivot: move it into place.
      std::size_t br = t, bc = t;
      for (std::size_t r = t + 1; r < m.rows; ++r)
        if (m(r, t) != T(0) && abs_of(m(r, t)) < abs_of(m(br, bc))) br = r, bc = t;
      for (std::size_t c = t + 1; c < m.cols; ++c)
        if (m(t, c) != T(0) && abs_of(m(t, c)) < abs_of(m(br, bc))) br = t, bc = c;
      swap_rows(m, t, br);
      swap_cols(m, t, bc);
    }
    diag.push_back(abs_of(to_big(m(t, t))));
  }
  return diag;
}

template <class T>
IntMatrix inverse_of(const IntMatrix& in) {
  const std::size_t n = in.rows;
  Matrix<T> m(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = T(in(i, j));
    m(i, n + i) = T(1);
  }
  for (std::size_t c = 0; c < n; ++c) {
    // Euclid on column c among rows >= c until one nonzero remains.
    for (;;) {
      std::size_t piv = n;
      for (std::size_t r = c; r < n; ++r)
        if (m(r, c) != T(0) && (piv == n || abs_of(m(r, c)) < abs_of(m(piv, c)))) piv = r;
      if (piv == n) throw std::domain_error("matrix is singular");
      swap_rows(m, c, piv);
      bool done = true;
      for (std::size_t r = c + 1; r < n; ++r) {
        if (m(r, c) == T(0)) continue;
        row_axpy(m, r, c, T(m(r, c) / m(c, c)));
        if (m(r, c) != T(0)) done = false;
      }
      if (done) break;
    }
    if (abs_of(m(c, c)) != T(1)) throw std::domain_error("matrix is not unimodular");
    if (m(c, c) == T(-1))
      for (std::size_t j = 0; j < 2 * n; ++j) m(c, j) = -m(c, j);
  }
  for (std::size_t c = n; c-- > 0;)
    for (std::size_t r = 0; r < c; ++r)
      if (m(r, c) != T(0)) row_axpy(m, r, c, T(m(r, c)));
  IntMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = to_ll(m(i, n + j));
  return out;
}

template <class T>
std::vector<std::vector<T>> hermite_of(const std::vector<IntVector>& rows_in) {
  if (rows_in.empty()) return {};
  const std::size_t cols = rows_in[0].size();
  std::vector<std::vector<T>> rows;
  for (const auto& r : rows_in) {
    std::vector<T> v(cols);
    for (std::size_t j = 0; j < cols; ++j) v[j] = T(r[j]);
    rows.push_back(std::move(v));
  }
  auto axpy = [&](std::vector<T>& x, const std::vector<T>& y, const T& q) {
    for (std::size_t j = 0; j < cols; ++j)
      if (y[j] != T(0)) x[j] = x[j] - q * y[j];
  };
  std::size_t top = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < cols && top < rows.size(); ++c) {
    for (;;) {
      std::size_t piv = rows.size();
      for (std::size_t r = top; r < rows.size(); ++r)
        if (rows[r][c] != T(0) && (piv == rows.size() || abs_of(rows[r][c]) < abs_of(rows[piv][c])))
          piv = r;
      if (piv == rows.size()) break;
      std::swap(rows[top], rows[piv]);
      bool done = true;
      for (std::size_t r = top + 1; r < rows.size(); ++r) {
        if (rows[r][c] == T(0)) continue;
        axpy(rows[r], rows[top], T(rows[r][c] / rows[top][c]));
        if (rows[r][c] != T(0)) done = false;
      }
      if (done) {
        if (rows[top][c] < T(0))
          for (auto& x : rows[top]) x = -x;
        pivots.push_back(c);
        ++top;
        break;
      }
    }
  }
  rows.resize(top);
  // Reduce entries above each pivot into [0, pivot).
  for (std::size_t k = 0; k < top; ++k) {
    std::size_t c = pivots[k];
    for (std::size_t r = 0; r < k; ++r) {
      T q = rows[r][c] / rows[k][c];
      if (rows[r][c] - q * rows[k][c] < T(0)) q = q - T(1);
      if (q != T(0)) axpy(rows[r], rows[k], q);
    }
  }
  return rows;
}

BigInt big_bilinear(const std::vector<BigInt>& x, const IntMatrix& m, const std::vector<BigInt>& y) {
  BigInt s = 0;
  for (std::size_t i = 0; i < m.rows; ++i) {
    if (x[i] == 0) continue;
    BigInt t = 0;
    for (std::size_t j = 0; j < m.cols; ++j)
      if (m(i, j) != 0 && y[j] != 0) t += m(i, j) * y[j];
    s += x[i] * t;
  }
  return s;
}

}  // namespace

long long mod(long long x, long long m) { return ((x % m) + m) % m; }

IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix transpose(const IntMatrix& m) {
  IntMatrix t(m.cols, m.rows);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) t(j, i) = m(i, j);
  return t;
}

IntMatrix multiply(const IntMatrix& x, const IntMatrix& y) {
  IntMatrix r(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      Checked a = x(i, k);
      if (a.v == 0) continue;
      for (std::size_t j = 0; j < y.cols; ++j) r(i, j) = (Checked(r(i, j)) + a * Checked(y(k, j))).v;
    }
  return r;
}

IntVector apply(const IntMatrix& m, const IntVector& v) {
  IntVector r(m.rows, 0);
  for (std::size_t i = 0; i < m.rows; ++i) {
    Checked s = 0;
    for (std::size_t j = 0; j < m.cols; ++j) s += Checked(m(i, j)) * Checked(v[j]);
    r[i] = s.v;
  }
  return r;
}

long long bilinear(const IntVector& x, const IntMatrix& m, const IntVector& y) {
  Checked s = 0;
  IntVector my = apply(m, y);
  for (std::size_t i = 0; i < x.size(); ++i) s += Checked(x[i]) * Checked(my[i]);
  return s.v;
}

IntMatrix standard_symplectic(std::size_t n) {
  IntMatrix j(n, n);
  for (std::size_t i = 0; i + 1 < n; i += 2) {
    j(i, i + 1) = 1;
    j(i + 1, i) = -1;
  }
  return j;
}

std::vector<BigInt> smith_invariants(const IntMatrix& m) {
  std::vector<BigInt> d;
  try {
    d = diagonal_of(convert<Checked>(m));
  } catch (const Overflow&) {
    d = diagonal_of(convert<BigInt>(m));
  }
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      BigInt g = boost::multiprecision::gcd(d[i], d[j]);
      BigInt l = d[i] / g * d[j];
      d[i] = g;
      d[j] = l;
    }
  return d;
}

BigInt determinant(const IntMatrix& in) {
  const std::size_t n = in.rows;
  if (n == 0) return 1;
  Matrix<BigInt> m = convert<BigInt>(in);
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && m(r, k) == 0) ++r;
      if (r == n) return 0;
      swap_rows(m, k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  if (m.rows != m.cols) throw std::domain_error("matrix is not square");
  try {
    return inverse_of<Checked>(m);
  } catch (const Overflow&) {
    return inverse_of<BigInt>(m);
  }
}

std::vector<IntVector> hermite_rows(const std::vector<IntVector>& rows) {
  std::vector<IntVector> out;
  try {
    for (auto& r : hermite_of<Checked>(rows)) {
      IntVector v;
      for (auto x : r) v.push_back(x.v);
      out.push_back(std::move(v));
    }
  } catch (const Overflow&) {
    out.clear();
    for (auto& r : hermite_of<BigInt>(rows)) {
      IntVector v;
      for (auto& x : r) v.push_back(to_ll(x));
      out.push_back(std::move(v));
    }
  }
  return out;
}

IntMatrix symplectic_basis(const IntMatrix& m) {
  const std::size_t n = m.rows;
  if (n % 2) throw std::domain_error("odd rank form");
  std::vector<std::vector<BigInt>> work;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<BigInt> e(n, 0);
    e[i] = 1;
    work.push_back(std::move(e));
  }
  std::vector<std::vector<BigInt>> chosen;
  while (!work.empty()) {
    std::vector<BigInt> e = work[0];
    // f with B(e, f) = 1 as an extended-gcd combination of the others.
    std::vector<BigInt> f(n, 0);
    BigInt g = 0;
    for (std::size_t k = 1; k < work.size(); ++k) {
      BigInt b = big_bilinear(e, m, work[k]);
      if (b == 0) continue;
      if (g == 0) {
        g = b;
        f = work[k];
        continue;
      }
      // x g + y b = gcd(g, b)
      BigInt x0 = 1, y0 = 0, x1 = 0, y1 = 1, r0 = g, r1 = b;
      while (r1 != 0) {
        BigInt q = r0 / r1;
        BigInt t = r0 - q * r1;
        r0 = r1, r1 = t;
        t = x0 - q * x1, x0 = x1, x1 = t;
        t = y0 - q * y1, y0 = y1, y1 = t;
      }
      for (std::size_t i = 0; i < n; ++i) f[i] = x0 * f[i] + y0 * work[k][i];
      g = r0;
    }
    if (g < 0) {
      for (auto& x : f) x = -x;
      g = -g;
    }
    if (g != 1) throw std::domain_error("form is not unimodular");
    chosen.push_back(e);
    chosen.push_back(f);
    std::vector<IntVector> projected;
    for (std::size_t k = 1; k < work.size(); ++k) {
      BigInt bwf = big_bilinear(work[k], m, f), bwe = big_bilinear(work[k], m, e);
      IntVector v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = to_ll(work[k][i] - bwf * e[i] + bwe * f[i]);
      projected.push_back(std::move(v));
    }
    work.clear();
    for (auto& r : hermite_rows(projected)) {
      std::vector<BigInt> v;
      for (auto x : r) v.push_back(x);
      work.push_back(std::move(v));
    }
    if (work.size() + chosen.size() != n) throw std::domain_error("form is degenerate");
  }
  IntMatrix p(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) p(i, j) = to_ll(chosen[j][i]);
  if (multiply(multiply(transpose(p), m), p) != standard_symplectic(n))
    throw std::domain_error("symplectic reduction failed");
  if (abs_of(determinant(p)) != 1) throw std::domain_error("symplectic basis is not unimodular");
  return p;
}

ModEchelon echelon_mod(std::vector<IntVector> rows, std::size_t cols, long long p) {
  ModEchelon out;
  auto inv = [p](long long a) {
    long long r = 1, b = a, e = p - 2;
    for (; e; e >>= 1, b = b * b % p)
      if (e & 1) r = r * b % p;
    return r;
  };
  for (auto& r : rows)
    for (auto& x : r) x = mod(x, p);
  std::size_t top = 0;
  for (std::size_t c = 0; c < cols && top < rows.size(); ++c) {
    std::size_t piv = top;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[top], rows[piv]);
    long long s = inv(rows[top][c]);
    for (auto& x : rows[top]) x = x * s % p;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == top || rows[r][c] == 0) continue;
      long long q = rows[r][c];
      for (std::size_t j = 0; j < cols; ++j)
        if (rows[top][j]) rows[r][j] = mod(rows[r][j] - q * rows[top][j], p);
    }
    out.pivots.push_back(c);
    ++top;
  }
  rows.resize(top);
  out.rows = std::move(rows);
  return out;
}

IntVector quotient_coordinates(const ModEchelon& ech, IntVector v, long long p) {
  for (auto& x : v) x = mod(x, p);
  for (std::size_t k = 0; k < ech.pivots.size(); ++k) {
    long long q = v[ech.pivots[k]];
    if (!q) continue;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (ech.rows[k][j]) v[j] = mod(v[j] - q * ech.rows[k][j], p);
  }
  IntVector out;
  std::size_t k = 0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (k < ech.pivots.size() && ech.pivots[k] == j) {
      ++k;
      continue;
    }
    out.push_back(v[j]);
  }
  return out;
}

}  // namespace solenoid
