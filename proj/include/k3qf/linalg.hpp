#pragma once

#include <algorithm>
#include <vector>

#include "k3qf/arith.hpp"
#include "k3qf/matrix.hpp"

namespace k3qf {

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

inline RatMatrix to_rational(const IntMatrix& m) {
  return m.map([](const Integer& x) { return Rational(x); });
}

inline RatVector to_rational(const IntVector& v) { return {v.begin(), v.end()}; }

/// Fraction-free (Bareiss) determinant.
inline Integer determinant(const IntMatrix& m) {
  if (!m.is_square()) throw Error(Errc::dimension_mismatch, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int sgn_flip = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t piv = k + 1;
      while (piv < n && a(piv, k) == 0) ++piv;
      if (piv == n) return 0;
      a.swap_rows(k, piv);
      sgn_flip = -sgn_flip;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sgn_flip * a(n - 1, n - 1);
}

inline Rational determinant(const RatMatrix& m) {
  if (!m.is_square()) throw Error(Errc::dimension_mismatch, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix a = m;
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a(piv, k) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      a.swap_rows(k, piv);
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      Rational f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

/// Rank over Q.
template <class T>
std::size_t rank(const Matrix<T>& m) {
  RatMatrix a = m.map([](const T& x) { return Rational(x); });
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t piv = r;
    while (piv < a.rows() && a(piv, c) == 0) ++piv;
    if (piv == a.rows()) continue;
    a.swap_rows(r, piv);
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (a(i, c) == 0) continue;
      Rational f = a(i, c) / a(r, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

/// Row-style Hermite normal form: upper echelon, positive pivots, entries above each pivot
/// reduced into [0, pivot). Zero rows are dropped, so the result is a basis of the row lattice.
inline IntMatrix hermite_normal_form(const IntMatrix& m) {
  IntMatrix a = m;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    // Extended-gcd row operations fold column c into row r.
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (a(i, c) == 0) continue;
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a(r, c).get_mpz_t(), a(i, c).get_mpz_t());
      Integer x = a(r, c) / g, y = a(i, c) / g;
      for (std::size_t j = c; j < a.cols(); ++j) {
        Integer top = s * a(r, j) + t * a(i, j);
        Integer bot = x * a(i, j) - y * a(r, j);
        a(r, j) = top;
        a(i, j) = bot;
      }
    }
    if (a(r, c) == 0) continue;
    if (a(r, c) < 0)
      for (std::size_t j = c; j < a.cols(); ++j) a(r, j) = -a(r, j);
    for (std::size_t i = 0; i < r; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), a(i, c).get_mpz_t(), a(r, c).get_mpz_t());
      if (q == 0) continue;
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= q * a(r, j);
    }
    ++r;
  }
  IntMatrix out(r, a.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  return out;
}

/// Z-basis (as rows) of {x in Z^n : A x = 0}, via unimodular column reduction of A.
/// The result is saturated: it spans (ker A) tensor Q intersected with Z^n.
inline IntMatrix integer_kernel(const IntMatrix& a_in) {
  const std::size_t n = a_in.cols();
  IntMatrix a = a_in;
  IntMatrix u = IntMatrix::identity(n);
  std::size_t piv = 0;
  for (std::size_t i = 0; i < a.rows() && piv < n; ++i) {
    for (std::size_t j = piv + 1; j < n; ++j) {
      if (a(i, j) == 0) continue;
      if (a(i, piv) == 0) {
        a.swap_cols(piv, j);
        u.swap_cols(piv, j);
        continue;
      }
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a(i, piv).get_mpz_t(), a(i, j).get_mpz_t());
      Integer x = a(i, piv) / g, y = a(i, j) / g;
      // [col_piv col_j] <- [col_piv col_j] * [[s, -y], [t, x]], determinant 1.
      auto combine = [&](IntMatrix& m) {
        for (std::size_t k = 0; k < m.rows(); ++k) {
          Integer cp = s * m(k, piv) + t * m(k, j);
          Integer cj = x * m(k, j) - y * m(k, piv);
          m(k, piv) = cp;
          m(k, j) = cj;
        }
      };
      combine(a);
      combine(u);
    }
    if (a(i, piv) != 0) ++piv;
  }
  IntMatrix basis(n - piv, n);
  for (std::size_t k = piv; k < n; ++k)
    for (std::size_t r = 0; r < n; ++r) basis(k - piv, r) = u(r, k);
  return hermite_normal_form(basis);
}

/// Integer row matrix with the same Q-row-space as `rows` (denominators cleared per row).
inline IntMatrix clear_denominators(const RatMatrix& rows) {
  IntMatrix out(rows.rows(), rows.cols());
  for (std::size_t i = 0; i < rows.rows(); ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < rows.cols(); ++j) l = lcm(l, rows(i, j).get_den());
    for (std::size_t j = 0; j < rows.cols(); ++j) out(i, j) = Integer(rows(i, j) * l);
  }
  return out;
}

/// Z-basis (as rows, in HNF) of (Q-span of rows) intersected with Z^n.
inline IntMatrix saturate(const IntMatrix& rows) {
  if (rows.rows() == 0) return IntMatrix(0, rows.cols());
  return integer_kernel(integer_kernel(rows));
}

/// Index of the lattice spanned by `rows` inside its saturation.
inline Integer saturation_index(const IntMatrix& rows) {
  IntMatrix h = hermite_normal_form(rows);
  IntMatrix s = saturate(rows);
  if (h.rows() != s.rows()) throw Error(Errc::degenerate, "rows are linearly dependent");
  // Both are echelon with the same pivot columns, so h = M s with M triangular.
  Integer prod_h = 1, prod_s = 1;
  std::size_t c = 0;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    while (h(i, c) == 0) ++c;
    prod_h *= h(i, c);
  }
  c = 0;
  for (std::size_t i = 0; i < s.rows(); ++i) {
    while (s(i, c) == 0) ++c;
    prod_s *= s(i, c);
  }
  return prod_h / prod_s;
}

}  // namespace k3qf
