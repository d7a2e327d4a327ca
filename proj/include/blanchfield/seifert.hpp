#ifndef BLANCHFIELD_SEIFERT_HPP
#define BLANCHFIELD_SEIFERT_HPP

#include <map>
#include <string>
#include <vector>

#include "blanchfield/linalg.hpp"

namespace blanchfield {

/// Hermitian check failed; the message names the first offending entry pair.
class NotHermitian : public ValidationError {
public:
  NotHermitian(Eigen::Index i, Eigen::Index j);
  Eigen::Index row() const { return row_; }
  Eigen::Index col() const { return col_; }

private:
  Eigen::Index row_;
  Eigen::Index col_;
};

/// Sequence of signs eps_1..eps_mu, each +1 or -1.
struct SignVec {
  std::vector<int> signs;

  /// Text key over {+,-}, e.g. "-+". The unicode minus sign is accepted too.
  static SignVec parse(const std::string& key, int mu);
  std::string key() const;
  /// All 2^mu sign vectors, ordered with '-' before '+' lexicographically.
  static std::vector<SignVec> all(int mu);

  friend bool operator<(const SignVec& a, const SignVec& b) { return a.signs < b.signs; }
  friend bool operator==(const SignVec& a, const SignVec& b) = default;
};

/// Generalized Seifert matrices A^eps of a C-complex, one per sign vector.
struct SeifertFamily {
  int mu = 1;
  Eigen::Index n = 0;
  std::map<SignVec, IntMatrix> mats;

  /// Throws ValidationError unless all 2^mu keys are present and n x n.
  void validate() const;
};

/// Seifert matrix of a boundary link: one block row/column of size 2 g_i per
/// component, off-diagonal blocks with A_ij = A_ji^T.
struct BoundarySeifert {
  std::vector<int> genera;
  IntMatrix A;

  int components() const { return static_cast<int>(genera.size()); }
  Eigen::Index size() const;
  /// Zero-based component owning row/column `index`.
  int color_of(Eigen::Index index) const;
  void validate() const;
};

/// Hermitian matrix over Λ_S in mu variables.
class CMatrix {
public:
  CMatrix() = default;
  /// Validates hermitian-ness and Λ_S entries.
  CMatrix(int mu, RfMatrix h);

  int mu() const { return mu_; }
  Eigen::Index size() const { return h_.rows(); }
  const RfMatrix& matrix() const { return h_; }
  const RatFunc& operator()(Eigen::Index i, Eigen::Index j) const { return h_(i, j); }

  friend bool operator==(const CMatrix& a, const CMatrix& b) { return a.mu_ == b.mu_ && a.h_ == b.h_; }

private:
  int mu_ = 1;
  RfMatrix h_;
};

/// H = sum over eps of prod_i (1 - t_i^{eps_i}) A^eps.
CMatrix assemble(const SeifertFamily& f);

/// (1 - t) A^T + (1 - t^-1) A in one variable.
CMatrix knot_c_matrix(const IntMatrix& A);

/// Block diagonal matrix with blocks t_i I_{2 g_i}.
RfMatrix tau(const std::vector<int>& genera);

/// u = prod_j (1 - t_j) in the given number of variables.
LaurentPoly boundary_unit(int components);

/// H = u conj(u) (I - tau)^{-1} (A - tau A^T) with u = prod_j (1 - t_j).
CMatrix boundary_matrix(const BoundarySeifert& b);

/// Class of a^T (A - tau A^T)^{-1} (tau - I) conj(c); throws SingularMatrix
/// when A - tau A^T is singular.
QmodLS boundary_pairing_value(const BoundarySeifert& b, const RfVector& a, const RfVector& c);

/// The closed form read on coker(conj H): -lambda_H(a, c) equals
/// boundary_pairing_value(b, a / u, c / u).
QmodLS boundary_closed_form(const BoundarySeifert& b, const RfVector& a, const RfVector& c);

}  // namespace blanchfield

#endif  // BLANCHFIELD_SEIFERT_HPP
