#ifndef BLANCHFIELD_LINALG_HPP
#define BLANCHFIELD_LINALG_HPP

#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Core>

#include "blanchfield/ratfunc.hpp"

namespace blanchfield {

using RfMatrix = Eigen::Matrix<RatFunc, Eigen::Dynamic, Eigen::Dynamic>;
using RfVector = Eigen::Matrix<RatFunc, Eigen::Dynamic, 1>;
using IntMatrix = Eigen::Matrix<mpz_class, Eigen::Dynamic, Eigen::Dynamic>;

class SingularMatrix : public MathError {
public:
  SingularMatrix(Eigen::Index rank, Eigen::Index size)
      : MathError("matrix is singular: rank " + std::to_string(rank) + " < " + std::to_string(size)),
        rank_(rank) {}
  Eigen::Index rank() const { return rank_; }

private:
  Eigen::Index rank_;
};

inline std::size_t pivot_weight(const RatFunc& x) { return x.complexity(); }

/// Row reduction result. `pivots[i]` is the pivot column of row i of `reduced`.
template <typename Scalar>
struct RowReduction {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> reduced;
  std::vector<Eigen::Index> pivots;
  /// Determinant of the input when it is square and reduced without `jordan`.
  Scalar det_factor{1};

  Eigen::Index rank() const { return static_cast<Eigen::Index>(pivots.size()); }
};

/// Fraction-free variant over Q: rows are cleared of denominators and
/// eliminated over Λ with exact divisions, so no gcds are taken until the
/// final entries are formed. Without `jordan` the echelon rows are only
/// determined up to scaling.
RowReduction<RatFunc> row_reduce_fraction_free(const RfMatrix& input, bool jordan, Eigen::Index pivot_cols);

/// Gaussian elimination over a field. Pivots are the fewest-term nonzero entry
/// of the current column, ties broken by the lower row. With `jordan` the
/// result is in reduced row echelon form (unit pivots, zeros above).
template <typename Derived>
RowReduction<typename Derived::Scalar> row_reduce(const Eigen::MatrixBase<Derived>& input, bool jordan,
                                                  Eigen::Index pivot_cols = -1) {
  using Scalar = typename Derived::Scalar;
  if constexpr (std::is_same_v<Scalar, RatFunc>) {
    return row_reduce_fraction_free(RfMatrix(input), jordan, pivot_cols);
  }
  RowReduction<Scalar> out;
  auto& m = out.reduced;
  m = input;
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = pivot_cols < 0 ? m.cols() : pivot_cols;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index best = -1;
    std::size_t best_weight = 0;
    for (Eigen::Index i = r; i < rows; ++i) {
      if (m(i, c).is_zero()) continue;
      const std::size_t w = pivot_weight(m(i, c));
      if (best < 0 || w < best_weight) {
        best = i;
        best_weight = w;
      }
    }
    if (best < 0) {
      out.det_factor = Scalar(0);
      continue;
    }
    if (best != r) {
      m.row(best).swap(m.row(r));
      out.det_factor = -out.det_factor;
    }
    const Scalar pivot = m(r, c);
    out.det_factor *= pivot;
    if (jordan) {
      const Scalar inv = pivot.inverse();
      for (Eigen::Index j = c; j < m.cols(); ++j)
        if (!m(r, j).is_zero()) m(r, j) *= inv;
    }
    for (Eigen::Index i = jordan ? 0 : r + 1; i < rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const Scalar factor = jordan ? m(i, c) : m(i, c) / pivot;
      for (Eigen::Index j = c; j < m.cols(); ++j) {
        if (!m(r, j).is_zero()) m(i, j) -= factor * m(r, j);
      }
    }
    out.pivots.push_back(c);
    ++r;
  }
  return out;
}

/// Rank over the fraction field.
template <typename Derived>
Eigen::Index rank_q(const Eigen::MatrixBase<Derived>& m) {
  return row_reduce(m, false).rank();
}

/// Determinant by elimination; square input required.
template <typename Derived>
typename Derived::Scalar determinant_q(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols()) throw MathError("determinant of a non-square matrix");
  if (m.rows() == 0) return Scalar(1);
  return row_reduce(m, false).det_factor;
}

/// A particular solution of m x = b, or nullopt when the system is inconsistent.
template <typename DerivedM, typename DerivedB>
std::optional<Eigen::Matrix<typename DerivedM::Scalar, Eigen::Dynamic, 1>> solve_q(
    const Eigen::MatrixBase<DerivedM>& m, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedM::Scalar;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  if (b.rows() != m.rows()) throw MathError("solve_q: right-hand side has the wrong length");
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> aug(m.rows(), m.cols() + 1);
  aug.leftCols(m.cols()) = m;
  aug.col(m.cols()) = b;
  const auto red = row_reduce(aug, true, m.cols());
  for (Eigen::Index i = red.rank(); i < m.rows(); ++i)
    if (!red.reduced(i, m.cols()).is_zero()) return std::nullopt;
  Vector x = Vector::Constant(m.cols(), Scalar(0));
  for (Eigen::Index i = 0; i < red.rank(); ++i) x(red.pivots[static_cast<std::size_t>(i)]) = red.reduced(i, m.cols());
  const Vector check = m * x;
  if (check != b) throw std::logic_error("solve_q: verification of m x = b failed");
  return x;
}

/// Exact inverse; throws SingularMatrix carrying the rank.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> inverse_q(
    const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (m.rows() != m.cols()) throw MathError("inverse of a non-square matrix");
  const Eigen::Index n = m.rows();
  Matrix aug(n, 2 * n);
  aug.leftCols(n) = m;
  aug.rightCols(n) = Matrix::Identity(n, n);
  const auto red = row_reduce(aug, true, n);
  if (red.rank() < n) throw SingularMatrix(red.rank(), n);
  Matrix inv = red.reduced.rightCols(n);
  if (Matrix(m * inv) != Matrix::Identity(n, n)) throw std::logic_error("inverse_q: verification failed");
  return inv;
}

/// Basis of the right kernel over the fraction field.
template <typename Derived>
std::vector<Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1>> kernel_basis(
    const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const auto red = row_reduce(m, true);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (auto c : red.pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<Vector> basis;
  for (Eigen::Index free = 0; free < m.cols(); ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    Vector v = Vector::Constant(m.cols(), Scalar(0));
    v(free) = Scalar(1);
    for (Eigen::Index i = 0; i < red.rank(); ++i) v(red.pivots[static_cast<std::size_t>(i)]) = -red.reduced(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Reduced echelon basis of the column space of m over the fraction field.
template <typename Derived>
std::vector<Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1>> column_space_basis(
    const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const auto red = row_reduce(Matrix(m.transpose()), true);
  std::vector<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>> basis;
  for (Eigen::Index i = 0; i < red.rank(); ++i) basis.emplace_back(red.reduced.row(i).transpose());
  return basis;
}

RfMatrix conj(const RfMatrix& m);
/// Conjugate transpose.
RfMatrix adjoint(const RfMatrix& m);
RfVector conj(const RfVector& v);
bool is_hermitian(const RfMatrix& m);
/// Whether every entry lies in Λ_S.
bool all_in_lambda_s(const RfMatrix& m);

RfMatrix to_rf(const IntMatrix& m, int nvars);

/// Determinant of a square matrix over Λ by fraction-free (Bareiss) elimination.
LaurentPoly determinant_bareiss(std::vector<std::vector<LaurentPoly>> m);

/// gcd over Λ of all k x k minors of a matrix with entries in Λ_S, after
/// clearing the (unit) denominators; normalized by strip_units. k = 0 gives 1.
LaurentPoly minors_gcd(const RfMatrix& m, Eigen::Index k);

/// Largest dimension accepted by minors_gcd.
inline constexpr Eigen::Index kMaxMinorDimension = 10;

}  // namespace blanchfield

#endif  // BLANCHFIELD_LINALG_HPP
