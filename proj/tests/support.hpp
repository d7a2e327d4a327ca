#ifndef BLANCHFIELD_TESTS_SUPPORT_HPP
#define BLANCHFIELD_TESTS_SUPPORT_HPP

#include <initializer_list>
#include <map>
#include <random>

#include "blanchfield/laurent.hpp"
#include "blanchfield/linalg.hpp"
#include "blanchfield/ratfunc.hpp"
#include "blanchfield/seifert.hpp"

namespace testing_support {

using namespace blanchfield;

inline LaurentPoly P(const char* s, int nvars = 1) { return parse_laurent(s, nvars); }
inline RatFunc F(const char* s, int nvars = 1) { return parse_ratfunc(s, nvars); }

inline LaurentPoly random_poly(std::mt19937_64& rng, int nvars, int max_terms, int min_exp, int max_exp,
                               int coef_bound = 4) {
  std::uniform_int_distribution<int> nterms(1, max_terms);
  std::uniform_int_distribution<int> ex(min_exp, max_exp);
  std::uniform_int_distribution<int> co(-coef_bound, coef_bound);
  std::vector<Term> terms;
  const int k = nterms(rng);
  for (int i = 0; i < k; ++i) {
    ExpVec e;
    for (int v = 0; v < nvars; ++v) e[v] = ex(rng);
    terms.push_back(Term{e, mpz_class(co(rng))});
  }
  return LaurentPoly::from_terms(nvars, std::move(terms));
}

inline LaurentPoly random_nonzero_poly(std::mt19937_64& rng, int nvars, int max_terms, int min_exp, int max_exp,
                                       int coef_bound = 4) {
  while (true) {
    LaurentPoly p = random_poly(rng, nvars, max_terms, min_exp, max_exp, coef_bound);
    if (!p.is_zero()) return p;
  }
}

/// Schoolbook product accumulated in a plain map; independent of the
/// library's multiplication path.
inline LaurentPoly naive_product(const LaurentPoly& a, const LaurentPoly& b) {
  std::map<std::array<std::int32_t, kMaxVars>, mpz_class> acc;
  for (const auto& s : a.terms())
    for (const auto& t : b.terms()) {
      std::array<std::int32_t, kMaxVars> e{};
      for (int i = 0; i < kMaxVars; ++i) e[static_cast<std::size_t>(i)] = s.exp[i] + t.exp[i];
      acc[e] += s.coef * t.coef;
    }
  std::vector<Term> terms;
  for (auto& [e, c] : acc) {
    if (c == 0) continue;
    ExpVec v;
    v.e = e;
    terms.push_back(Term{v, c});
  }
  return LaurentPoly::from_terms(std::max(a.nvars(), b.nvars()), std::move(terms));
}

/// Laplace expansion along the first row.
inline RatFunc cofactor_determinant(const RfMatrix& m) {
  const Eigen::Index n = m.rows();
  if (n == 0) return RatFunc(1);
  if (n == 1) return m(0, 0);
  RatFunc det(0);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (m(0, j).is_zero()) continue;
    RfMatrix minor(n - 1, n - 1);
    for (Eigen::Index r = 1; r < n; ++r) {
      Eigen::Index cc = 0;
      for (Eigen::Index c = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, cc++) = m(r, c);
      }
    }
    RatFunc term = m(0, j) * cofactor_determinant(minor);
    if (j % 2 == 0)
      det += term;
    else
      det -= term;
  }
  return det;
}

inline RatFunc random_ratfunc(std::mt19937_64& rng, int nvars, int max_terms = 3) {
  LaurentPoly num = random_poly(rng, nvars, max_terms, -1, 2, 3);
  LaurentPoly den = random_nonzero_poly(rng, nvars, 2, 0, 1, 2);
  return RatFunc(num, den);
}

/// Random element of Λ_S: Laurent polynomial over a random power of (1 - t_i).
inline RatFunc random_lambda_s(std::mt19937_64& rng, int nvars, int max_terms = 3) {
  LaurentPoly num = random_poly(rng, nvars, max_terms, -1, 1, 3);
  std::uniform_int_distribution<int> k(0, 1);
  LSUnit u;
  for (int i = 0; i < nvars; ++i) u.clasp[static_cast<std::size_t>(i)] = k(rng);
  return RatFunc(num, u.to_poly(nvars));
}


inline IntMatrix int_matrix(std::initializer_list<std::initializer_list<long>> rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = r == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(rows.begin()->size());
  IntMatrix m(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (long x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

inline IntMatrix random_int_matrix(std::mt19937_64& rng, Eigen::Index r, Eigen::Index c, int bound = 2) {
  std::uniform_int_distribution<int> co(-bound, bound);
  IntMatrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = co(rng);
  return m;
}

/// Random family with A^{-eps} = (A^eps)^T, which makes the assembled matrix
/// hermitian.
inline SeifertFamily random_family(std::mt19937_64& rng, int mu, Eigen::Index n, int bound = 2) {
  SeifertFamily f;
  f.mu = mu;
  f.n = n;
  for (const auto& eps : SignVec::all(mu)) {
    SignVec opposite = eps;
    for (auto& e : opposite.signs) e = -e;
    if (f.mats.count(opposite)) {
      f.mats[eps] = f.mats[opposite].transpose();
    } else {
      f.mats[eps] = random_int_matrix(rng, n, n, bound);
    }
  }
  return f;
}

inline BoundarySeifert random_boundary(std::mt19937_64& rng, int components, int max_genus, int bound = 2) {
  std::uniform_int_distribution<int> gen(0, max_genus);
  BoundarySeifert b;
  do {
    b.genera.clear();
    for (int i = 0; i < components; ++i) b.genera.push_back(gen(rng));
  } while (b.size() == 0);
  b.A = random_int_matrix(rng, b.size(), b.size(), bound);
  for (Eigen::Index r = 0; r < b.size(); ++r)
    for (Eigen::Index c = r + 1; c < b.size(); ++c)
      if (b.color_of(r) != b.color_of(c)) b.A(c, r) = b.A(r, c);
  return b;
}

/// Random vector with Laurent polynomial entries.
inline RfVector random_lambda_vector(std::mt19937_64& rng, Eigen::Index n, int nvars) {
  RfVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = RatFunc(random_poly(rng, nvars, 2, -1, 1, 2));
  return v;
}

}  // namespace testing_support

#endif  // BLANCHFIELD_TESTS_SUPPORT_HPP
