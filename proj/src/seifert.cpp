#include "blanchfield/seifert.hpp"

namespace blanchfield {

namespace {

std::string position(Eigen::Index i, Eigen::Index j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

}  // namespace

NotHermitian::NotHermitian(Eigen::Index i, Eigen::Index j)
    : ValidationError(i == j ? "matrix is not hermitian: diagonal entry " + position(i, j) + " is not self-conjugate"
                             : "matrix is not hermitian: entry " + position(i, j) +
                                   " is not the conjugate of entry " + position(j, i)),
      row_(i),
      col_(j) {}

SignVec SignVec::parse(const std::string& key, int mu) {
  SignVec s;
  for (std::size_t i = 0; i < key.size();) {
    if (key[i] == '+') {
      s.signs.push_back(1);
      ++i;
    } else if (key[i] == '-') {
      s.signs.push_back(-1);
      ++i;
    } else if (key.compare(i, 3, "\xE2\x88\x92") == 0) {  // U+2212
      s.signs.push_back(-1);
      i += 3;
    } else {
      throw ValidationError("sign key \"" + key + "\" contains a character other than '+' or '-'");
    }
  }
  if (static_cast<int>(s.signs.size()) != mu)
    throw ValidationError("sign key \"" + key + "\" has length " + std::to_string(s.signs.size()) + ", expected " +
                          std::to_string(mu));
  return s;
}

std::string SignVec::key() const {
  std::string out;
  for (int e : signs) out += e > 0 ? '+' : '-';
  return out;
}

std::vector<SignVec> SignVec::all(int mu) {
  std::vector<SignVec> out;
  for (unsigned bits = 0; bits < (1u << mu); ++bits) {
    SignVec s;
    for (int i = mu - 1; i >= 0; --i) s.signs.push_back((bits >> i) & 1u ? 1 : -1);
    out.push_back(std::move(s));
  }
  return out;
}

void SeifertFamily::validate() const {
  if (mu < 1 || mu > kMaxVars)
    throw ValidationError("mu = " + std::to_string(mu) + " outside the supported range 1.." + std::to_string(kMaxVars));
  for (const auto& s : SignVec::all(mu)) {
    auto it = mats.find(s);
    if (it == mats.end()) throw ValidationError("missing matrix for sign key \"" + s.key() + "\"");
    if (it->second.rows() != n || it->second.cols() != n)
      throw ValidationError("matrix for sign key \"" + s.key() + "\" is " + std::to_string(it->second.rows()) + "x" +
                            std::to_string(it->second.cols()) + ", expected " + std::to_string(n) + "x" +
                            std::to_string(n));
  }
  if (mats.size() != (std::size_t{1} << mu)) throw ValidationError("unexpected extra sign keys");
}

Eigen::Index BoundarySeifert::size() const {
  Eigen::Index g = 0;
  for (int gi : genera) g += 2 * gi;
  return g;
}

int BoundarySeifert::color_of(Eigen::Index index) const {
  Eigen::Index start = 0;
  for (int i = 0; i < components(); ++i) {
    start += 2 * genera[static_cast<std::size_t>(i)];
    if (index < start) return i;
  }
  throw std::out_of_range("BoundarySeifert::color_of: index past the matrix");
}

void BoundarySeifert::validate() const {
  if (genera.empty()) throw ValidationError("boundary link needs at least one component");
  if (components() > kMaxVars)
    throw ValidationError(std::to_string(components()) + " components exceed the supported " + std::to_string(kMaxVars));
  for (int g : genera)
    if (g < 0) throw ValidationError("negative genus " + std::to_string(g));
  const Eigen::Index g = size();
  if (A.rows() != g || A.cols() != g)
    throw ValidationError("boundary Seifert matrix is " + std::to_string(A.rows()) + "x" + std::to_string(A.cols()) +
                          ", expected " + std::to_string(g) + "x" + std::to_string(g) + " from the genera");
  for (Eigen::Index r = 0; r < g; ++r)
    for (Eigen::Index c = r + 1; c < g; ++c)
      if (color_of(r) != color_of(c) && A(r, c) != A(c, r))
        throw ValidationError("off-diagonal blocks violate A_ij = A_ji^T at entry " + position(r, c) + " (blocks " +
                              std::to_string(color_of(r) + 1) + "," + std::to_string(color_of(c) + 1) + ")");
}

CMatrix::CMatrix(int mu, RfMatrix h) : mu_(mu), h_(std::move(h)) {
  if (h_.rows() != h_.cols()) throw ValidationError("C-complex matrix must be square");
  for (Eigen::Index i = 0; i < h_.rows(); ++i) {
    for (Eigen::Index j = i; j < h_.cols(); ++j) {
      if (!in_lambda_s(h_(i, j))) throw ValidationError("entry " + position(i, j) + " is not in Λ_S");
      if (h_(i, j) != conj(h_(j, i))) throw NotHermitian(i, j);
    }
  }
  for (Eigen::Index i = 0; i < h_.rows(); ++i)
    for (Eigen::Index j = 0; j < h_.cols(); ++j) h_(i, j) = h_(i, j).with_nvars(mu_);
}

CMatrix assemble(const SeifertFamily& f) {
  f.validate();
  RfMatrix h = RfMatrix::Constant(f.n, f.n, RatFunc(LaurentPoly(mpz_class(0), f.mu)));
  for (const auto& [eps, a] : f.mats) {
    LaurentPoly weight(mpz_class(1), f.mu);
    for (int i = 0; i < f.mu; ++i) weight *= LaurentPoly::one_minus(f.mu, i, eps.signs[static_cast<std::size_t>(i)]);
    for (Eigen::Index r = 0; r < f.n; ++r)
      for (Eigen::Index c = 0; c < f.n; ++c)
        if (a(r, c) != 0) h(r, c) += RatFunc(weight.scaled(a(r, c)));
  }
  return CMatrix(f.mu, std::move(h));
}

CMatrix knot_c_matrix(const IntMatrix& A) {
  if (A.rows() != A.cols()) throw ValidationError("Seifert matrix must be square");
  const LaurentPoly plus = LaurentPoly::one_minus(1, 0, 1);
  const LaurentPoly minus = LaurentPoly::one_minus(1, 0, -1);
  RfMatrix h(A.rows(), A.cols());
  for (Eigen::Index r = 0; r < A.rows(); ++r)
    for (Eigen::Index c = 0; c < A.cols(); ++c) h(r, c) = RatFunc(plus.scaled(A(c, r)) + minus.scaled(A(r, c)));
  return CMatrix(1, std::move(h));
}

RfMatrix tau(const std::vector<int>& genera) {
  const int nv = static_cast<int>(genera.size());
  Eigen::Index g = 0;
  for (int gi : genera) g += 2 * gi;
  RfMatrix out = RfMatrix::Constant(g, g, RatFunc(LaurentPoly(mpz_class(0), nv)));
  Eigen::Index k = 0;
  for (int i = 0; i < nv; ++i)
    for (int j = 0; j < 2 * genera[static_cast<std::size_t>(i)]; ++j, ++k) out(k, k) = RatFunc(LaurentPoly::variable(nv, i));
  return out;
}

LaurentPoly boundary_unit(int components) {
  LaurentPoly u(mpz_class(1), components);
  for (int j = 0; j < components; ++j) u *= LaurentPoly::one_minus(components, j);
  return u;
}

CMatrix boundary_matrix(const BoundarySeifert& b) {
  b.validate();
  const int nv = b.components();
  const LaurentPoly u = boundary_unit(nv);
  const LaurentPoly uu = u * conj(u);
  const Eigen::Index g = b.size();
  RfMatrix h(g, g);
  for (Eigen::Index r = 0; r < g; ++r) {
    // Row r of (I - tau)^{-1} is e_r / (1 - t_i) with i the color of r.
    const int i = b.color_of(r);
    const LaurentPoly ti = LaurentPoly::variable(nv, i);
    const LaurentPoly lead = *divide_exact(uu, LaurentPoly::one_minus(nv, i));
    for (Eigen::Index c = 0; c < g; ++c) {
      const LaurentPoly entry = LaurentPoly(b.A(r, c), nv) - ti.scaled(b.A(c, r));
      h(r, c) = RatFunc(lead * entry);
    }
  }
  return CMatrix(nv, std::move(h));
}

QmodLS boundary_pairing_value(const BoundarySeifert& b, const RfVector& a, const RfVector& c) {
  b.validate();
  const Eigen::Index g = b.size();
  if (a.size() != g || c.size() != g)
    throw ValidationError("boundary pairing vectors must have length " + std::to_string(g));
  const int nv = b.components();
  const RfMatrix t = tau(b.genera);
  const RfMatrix a_rf = to_rf(b.A, nv);
  const RfMatrix m = a_rf - t * RfMatrix(a_rf.transpose());
  RfVector rhs = conj(c);
  for (Eigen::Index i = 0; i < g; ++i) rhs(i) *= t(i, i) - RatFunc(1);
  const auto x = solve_q(m, rhs);
  if (!x) throw SingularMatrix(rank_q(m), g);
  if (rank_q(m) < g) throw SingularMatrix(rank_q(m), g);
  RatFunc value(LaurentPoly(mpz_class(0), nv));
  for (Eigen::Index i = 0; i < g; ++i)
    if (!a(i).is_zero()) value += a(i) * (*x)(i);
  return {value};
}

QmodLS boundary_closed_form(const BoundarySeifert& b, const RfVector& a, const RfVector& c) {
  const RatFunc inv = RatFunc(boundary_unit(b.components())).inverse();
  return boundary_pairing_value(b, RfVector(a * inv), RfVector(c * inv));
}

}  // namespace blanchfield
