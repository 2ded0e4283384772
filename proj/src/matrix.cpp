#include "sok/matrix.hpp"

#include "sok/error.hpp"

#include <optional>
#include <utility>

namespace sok {

RationalMatrix to_rational(const IntegerMatrix& m) {
  RationalMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

IntegerMatrix to_integer(const RationalMatrix& m) {
  IntegerMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (denominator(m(i, j)) != 1) {
        throw Error(ErrorCode::ValidationFailure,
                    "matrix entry is not an integer: " + format_rational(m(i, j)));
      }
      r(i, j) = numerator(m(i, j));
    }
  return r;
}

namespace {

// Row operation row_a += k * row_b applied to A and mirrored on U.
void add_row(IntegerMatrix& A, IntegerMatrix& U, std::size_t a, std::size_t b,
             const Integer& k) {
  for (std::size_t j = 0; j < A.cols(); ++j) A(a, j) += k * A(b, j);
  for (std::size_t j = 0; j < U.cols(); ++j) U(a, j) += k * U(b, j);
}

void add_col(IntegerMatrix& A, IntegerMatrix& V, std::size_t a, std::size_t b,
             const Integer& k) {
  for (std::size_t i = 0; i < A.rows(); ++i) A(i, a) += k * A(i, b);
  for (std::size_t i = 0; i < V.rows(); ++i) V(i, a) += k * V(i, b);
}

std::optional<std::pair<std::size_t, std::size_t>> smallest_pivot(
    const IntegerMatrix& A, std::size_t t) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  Integer best_abs;
  for (std::size_t i = t; i < A.rows(); ++i)
    for (std::size_t j = t; j < A.cols(); ++j) {
      if (A(i, j) == 0) continue;
      Integer a = abs(A(i, j));
      if (!best || a < best_abs) {
        best = {i, j};
        best_abs = a;
      }
    }
  return best;
}

}  // namespace

SmithForm smith_normal_form(const IntegerMatrix& M) {
  IntegerMatrix A = M;
  IntegerMatrix U = IntegerMatrix::identity(M.rows());
  IntegerMatrix V = IntegerMatrix::identity(M.cols());
  const std::size_t limit = std::min(M.rows(), M.cols());
  std::size_t t = 0;
  for (; t < limit; ++t) {
    for (;;) {
      auto pivot = smallest_pivot(A, t);
      if (!pivot) goto done;
      A.swap_rows(t, pivot->first);
      U.swap_rows(t, pivot->first);
      A.swap_cols(t, pivot->second);
      V.swap_cols(t, pivot->second);

      bool clean = true;
      for (std::size_t i = t + 1; i < A.rows(); ++i) {
        if (A(i, t) == 0) continue;
        add_row(A, U, i, t, Integer(-(A(i, t) / A(t, t))));
        if (A(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < A.cols(); ++j) {
        if (A(t, j) == 0) continue;
        add_col(A, V, j, t, Integer(-(A(t, j) / A(t, t))));
        if (A(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Enforce divisibility of the trailing block by the pivot.
      std::optional<std::size_t> offender;
      for (std::size_t i = t + 1; i < A.rows() && !offender; ++i)
        for (std::size_t j = t + 1; j < A.cols(); ++j)
          if (A(i, j) % A(t, t) != 0) {
            offender = i;
            break;
          }
      if (offender) {
        add_row(A, U, t, *offender, Integer(1));
        continue;
      }
      break;
    }
    if (A(t, t) < 0) {
      for (std::size_t j = 0; j < A.cols(); ++j) A(t, j) = -A(t, j);
      for (std::size_t j = 0; j < U.cols(); ++j) U(t, j) = -U(t, j);
    }
  }
done:
  return SmithForm{std::move(U), std::move(A), std::move(V), t};
}

EchelonForm rref(const RationalMatrix& M) {
  RationalMatrix A = M;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < A.cols() && r < A.rows(); ++c) {
    std::size_t p = r;
    while (p < A.rows() && A(p, c) == 0) ++p;
    if (p == A.rows()) continue;
    A.swap_rows(r, p);
    Rational inv = 1 / A(r, c);
    for (std::size_t j = 0; j < A.cols(); ++j) A(r, j) *= inv;
    for (std::size_t i = 0; i < A.rows(); ++i) {
      if (i == r || A(i, c) == 0) continue;
      Rational k = A(i, c);
      for (std::size_t j = 0; j < A.cols(); ++j) A(i, j) -= k * A(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  RationalMatrix R(r, A.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) R(i, j) = A(i, j);
  return {std::move(R), std::move(pivots)};
}

std::size_t rank(const RationalMatrix& M) { return rref(M).pivots.size(); }

RationalMatrix nullspace(const RationalMatrix& M) {
  auto [R, pivots] = rref(M);
  std::vector<bool> is_pivot(M.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::size_t free_count = M.cols() - pivots.size();
  RationalMatrix N(free_count, M.cols());
  std::size_t k = 0;
  for (std::size_t f = 0; f < M.cols(); ++f) {
    if (is_pivot[f]) continue;
    N(k, f) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) N(k, pivots[i]) = -R(i, f);
    ++k;
  }
  return N;
}

Rational determinant(const RationalMatrix& M) {
  if (M.rows() != M.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
  }
  RationalMatrix A = M;
  Rational det = 1;
  for (std::size_t c = 0; c < A.cols(); ++c) {
    std::size_t p = c;
    while (p < A.rows() && A(p, c) == 0) ++p;
    if (p == A.rows()) return 0;
    if (p != c) {
      A.swap_rows(p, c);
      det = -det;
    }
    det *= A(c, c);
    for (std::size_t i = c + 1; i < A.rows(); ++i) {
      if (A(i, c) == 0) continue;
      Rational k = A(i, c) / A(c, c);
      for (std::size_t j = c; j < A.cols(); ++j) A(i, j) -= k * A(c, j);
    }
  }
  return det;
}

RationalMatrix inverse(const RationalMatrix& M) {
  const std::size_t n = M.rows();
  if (n != M.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "inverse of a non-square matrix");
  }
  RationalMatrix A(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) A(i, j) = M(i, j);
    A(i, n + i) = 1;
  }
  auto [R, pivots] = rref(A);
  if (pivots.size() < n || pivots[n - 1] != n - 1) {
    throw Error(ErrorCode::NonInvertibleAction, "matrix is singular");
  }
  RationalMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = R(i, n + j);
  return inv;
}

IntegerMatrix primitive_rows(const RationalMatrix& M) {
  IntegerMatrix out(M.rows(), M.cols());
  for (std::size_t i = 0; i < M.rows(); ++i) {
    auto p = primitive(M.row(i));
    for (std::size_t j = 0; j < M.cols(); ++j) out(i, j) = p[j];
  }
  return out;
}

}  // namespace sok
