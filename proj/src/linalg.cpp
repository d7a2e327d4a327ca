#include "blanchfield/linalg.hpp"

#include <algorithm>

namespace blanchfield {

RfMatrix conj(const RfMatrix& m) {
  RfMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = conj(m(i, j));
  return out;
}

RfMatrix adjoint(const RfMatrix& m) { return conj(RfMatrix(m.transpose())); }

RfVector conj(const RfVector& v) {
  RfVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = conj(v(i));
  return out;
}

bool is_hermitian(const RfMatrix& m) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i; j < m.cols(); ++j)
      if (m(i, j) != conj(m(j, i))) return false;
  return true;
}

bool all_in_lambda_s(const RfMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!in_lambda_s(m(i, j))) return false;
  return true;
}

RfMatrix to_rf(const IntMatrix& m, int nvars) {
  RfMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = RatFunc(LaurentPoly(m(i, j), nvars));
  return out;
}

RowReduction<RatFunc> row_reduce_fraction_free(const RfMatrix& input, bool jordan, Eigen::Index pivot_cols) {
  const Eigen::Index rows = input.rows();
  const Eigen::Index ncols = input.cols();
  const Eigen::Index cols = pivot_cols < 0 ? ncols : pivot_cols;
  int nv = 0;
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < ncols; ++j) nv = std::max(nv, input(i, j).nvars());

  // Row i is multiplied by scale[i], a common multiple of its denominators.
  std::vector<std::vector<LaurentPoly>> m(static_cast<std::size_t>(rows));
  RatFunc scale_product(1);
  for (Eigen::Index i = 0; i < rows; ++i) {
    LaurentPoly scale(mpz_class(1), nv);
    for (Eigen::Index j = 0; j < ncols; ++j) {
      const LaurentPoly& d = input(i, j).den();
      if (!d.is_one() && !divide_exact(scale, d)) scale *= d;
    }
    auto& row = m[static_cast<std::size_t>(i)];
    row.reserve(static_cast<std::size_t>(ncols));
    for (Eigen::Index j = 0; j < ncols; ++j) {
      const RatFunc& x = input(i, j);
      if (x.is_zero()) {
        row.emplace_back(mpz_class(0), nv);
      } else if (x.den().is_one()) {
        row.push_back((x.num() * scale).with_nvars(nv));
      } else {
        auto q = divide_exact(x.num() * scale, x.den());
        if (!q) throw std::logic_error("row reduction: denominator clearing failed");
        row.push_back(q->with_nvars(nv));
      }
    }
    if (!scale.is_one()) scale_product *= RatFunc(scale);
  }

  RowReduction<RatFunc> out;
  int sign = 1;
  LaurentPoly prev(mpz_class(1), nv);
  Eigen::Index r = 0;
  bool full = true;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    std::size_t best = static_cast<std::size_t>(rows);
    for (auto i = static_cast<std::size_t>(r); i < static_cast<std::size_t>(rows); ++i) {
      const auto& x = m[i][static_cast<std::size_t>(c)];
      if (x.is_zero()) continue;
      if (best == static_cast<std::size_t>(rows) || x.size() < m[best][static_cast<std::size_t>(c)].size()) best = i;
    }
    if (best == static_cast<std::size_t>(rows)) {
      full = false;
      continue;
    }
    const auto rr = static_cast<std::size_t>(r);
    if (best != rr) {
      std::swap(m[best], m[rr]);
      sign = -sign;
    }
    const LaurentPoly pivot = m[rr][static_cast<std::size_t>(c)];
    for (auto i = jordan ? std::size_t{0} : rr + 1; i < static_cast<std::size_t>(rows); ++i) {
      if (i == rr) continue;
      const LaurentPoly factor = m[i][static_cast<std::size_t>(c)];
      for (auto j = jordan ? std::size_t{0} : static_cast<std::size_t>(c); j < static_cast<std::size_t>(ncols); ++j) {
        if (j == static_cast<std::size_t>(c)) continue;
        LaurentPoly t = m[i][j] * pivot;
        if (!factor.is_zero() && !m[rr][j].is_zero()) t -= factor * m[rr][j];
        if (!prev.is_one() && !t.is_zero()) {
          auto q = divide_exact(t, prev);
          if (!q) throw std::logic_error("row reduction: inexact fraction-free step");
          t = std::move(*q);
        }
        m[i][j] = std::move(t);
      }
      m[i][static_cast<std::size_t>(c)] = LaurentPoly(mpz_class(0), nv);
    }
    prev = pivot;
    out.pivots.push_back(c);
    ++r;
  }

  // Every pivot row now equals `prev` times its reduced echelon row.
  out.reduced = RfMatrix::Constant(rows, ncols, RatFunc(0));
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < ncols; ++j) {
      const auto& x = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (x.is_zero()) continue;
      out.reduced(i, j) = jordan && i < r ? RatFunc(x, prev) : RatFunc(x);
    }
  }
  if (rows == cols && full && r == rows) {
    RatFunc det = RatFunc(prev) / scale_product;
    out.det_factor = sign > 0 ? det : -det;
  } else {
    out.det_factor = RatFunc(0);
  }
  return out;
}

LaurentPoly determinant_bareiss(std::vector<std::vector<LaurentPoly>> m) {
  const std::size_t n = m.size();
  if (n == 0) return LaurentPoly(1);
  int sign = 1;
  LaurentPoly prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t best = n;
    for (std::size_t i = k; i < n; ++i) {
      if (m[i][k].is_zero()) continue;
      if (best == n || m[i][k].size() < m[best][k].size()) best = i;
    }
    if (best == n) return LaurentPoly(0);
    if (best != k) {
      std::swap(m[best], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        LaurentPoly t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        auto q = divide_exact(t, prev);
        if (!q) throw std::logic_error("determinant_bareiss: inexact division");
        m[i][j] = std::move(*q);
      }
      m[i][k] = LaurentPoly(0);
    }
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

namespace {

// Advances a k-combination of {0..n-1} in lexicographic order.
bool next_combination(std::vector<Eigen::Index>& c, Eigen::Index n) {
  const auto k = static_cast<Eigen::Index>(c.size());
  for (Eigen::Index i = k - 1; i >= 0; --i) {
    auto& ci = c[static_cast<std::size_t>(i)];
    if (ci < n - k + i) {
      ++ci;
      for (Eigen::Index j = i + 1; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
      return true;
    }
  }
  return false;
}

std::vector<Eigen::Index> first_combination(Eigen::Index k) {
  std::vector<Eigen::Index> c(static_cast<std::size_t>(k));
  for (Eigen::Index i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = i;
  return c;
}

}  // namespace

LaurentPoly minors_gcd(const RfMatrix& m, Eigen::Index k) {
  if (k < 0 || k > std::min(m.rows(), m.cols())) throw MathError("minors_gcd: minor size out of range");
  if (m.rows() > kMaxMinorDimension || m.cols() > kMaxMinorDimension)
    throw MathError("minors_gcd: matrix larger than " + std::to_string(kMaxMinorDimension) +
                    " in some dimension; exhaustive minor enumeration refused");
  int nv = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) nv = std::max(nv, m(i, j).nvars());
  if (k == 0) return LaurentPoly(mpz_class(1), nv);

  // Common denominator prod (1 - t_i)^{K_i}, a unit of Λ_S.
  std::array<std::int32_t, kMaxVars> clasp{};
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j).den().is_one()) continue;
      const Stripped s = strip_units(m(i, j).den());
      if (!s.core.is_one())
        throw MathError("minors_gcd: entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                        ") is not in Λ_S");
      for (std::size_t v = 0; v < clasp.size(); ++v) clasp[v] = std::max(clasp[v], s.unit.clasp[v]);
    }
  }
  LSUnit common;
  common.clasp = clasp;
  const LaurentPoly d = common.to_poly(nv);
  std::vector<std::vector<LaurentPoly>> cleared(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      auto q = divide_exact(m(i, j).num() * d, m(i, j).den());
      if (!q) throw std::logic_error("minors_gcd: denominator clearing failed");
      cleared[static_cast<std::size_t>(i)].push_back(std::move(*q));
    }
  }

  LaurentPoly g(mpz_class(0), nv);
  auto rows = first_combination(k);
  do {
    auto cols = first_combination(k);
    do {
      std::vector<std::vector<LaurentPoly>> sub(static_cast<std::size_t>(k));
      for (std::size_t a = 0; a < rows.size(); ++a)
        for (auto c : cols) sub[a].push_back(cleared[static_cast<std::size_t>(rows[a])][static_cast<std::size_t>(c)]);
      const LaurentPoly minor = determinant_bareiss(std::move(sub));
      if (!minor.is_zero()) {
        g = gcd(g, minor);
        if (g.is_one()) return g.with_nvars(nv);
      }
    } while (next_combination(cols, m.cols()));
  } while (next_combination(rows, m.rows()));
  return g.with_nvars(nv);
}

}  // namespace blanchfield
