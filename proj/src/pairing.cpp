#include "blanchfield/pairing.hpp"

#include <random>

namespace blanchfield {

namespace {

void require_lambda_s(const RfVector& v, Eigen::Index n, const char* name) {
  if (v.size() != n)
    throw ValidationError(std::string(name) + " has length " + std::to_string(v.size()) + ", expected " +
                          std::to_string(n));
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!in_lambda_s(v(i)))
      throw ValidationError(std::string(name) + " entry " + std::to_string(i + 1) + " is not in Λ_S");
}

RfVector with_nvars(const RfVector& v, int nv) {
  RfVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = v(i).with_nvars(nv);
  return out;
}

}  // namespace

NotTorsion::NotTorsion(Eigen::Index rank, Eigen::Index augmented_rank)
    : MathError("vector is not torsion: rank of conj(H) over Q is " + std::to_string(rank) +
                " but appending the vector raises it to " + std::to_string(augmented_rank)),
      rank_(rank),
      augmented_rank_(augmented_rank) {}

LaurentPoly symmetrize(const LaurentPoly& p) {
  const int nv = p.nvars();
  const Stripped s = strip_units(p);
  LaurentPoly core = s.core;
  const Stripped c = strip_units(conj(core));
  if (c.core != core) throw SymmetrizationError("conj(delta) is not delta up to a Λ_S-unit");
  // conj(core) = sign * t^a * core.
  int sign = c.unit.sign;
  ExpVec a = c.unit.monomial;
  for (int i = 0; i < kMaxVars; ++i)
    if (c.unit.clasp[static_cast<std::size_t>(i)] != 0)
      throw std::logic_error("symmetrize: unexpected (1 - t) factor in conj(core)");
  for (int i = 0; i < nv; ++i) {
    if (a[i] % 2 != 0) {
      // conj(1 - t_i) = -t_i^{-1} (1 - t_i).
      core *= LaurentPoly::one_minus(nv, i);
      sign = -sign;
      a[i] -= 1;
    }
  }
  if (sign < 0) throw SymmetrizationError("conj(delta) = -t^a delta; no Λ_S-unit makes delta self-conjugate");
  ExpVec half;
  for (int i = 0; i < nv; ++i) half[i] = a[i] / 2;
  LaurentPoly out = core.shifted(half).with_nvars(nv);
  if (conj(out) != out) throw std::logic_error("symmetrize: result is not self-conjugate");
  return out;
}

TorsionData torsion_order(const CMatrix& H) {
  TorsionData td;
  td.H = H;
  td.rho = rank_q(H.matrix());
  td.free_rank = H.size() - td.rho;
  if (td.rho == 0) {
    td.delta = LaurentPoly(mpz_class(1), H.mu());
    return td;
  }
  const LaurentPoly g = minors_gcd(H.matrix(), td.rho);
  if (g.is_zero()) throw std::logic_error("torsion_order: all minors of size rank vanish");
  td.delta = symmetrize(g.with_nvars(H.mu()));
  return td;
}

LaurentPoly alexander_tor(const CMatrix& H) { return torsion_order(H).delta; }

bool is_torsion(const CMatrix& H, const RfVector& v) {
  require_lambda_s(v, H.size(), "vector");
  return solve_q(conj(H.matrix()), with_nvars(v, H.mu())).has_value();
}

RfVector torsion_preimage(const TorsionData& td, const RfVector& v) {
  require_lambda_s(v, td.H.size(), "vector");
  const Eigen::Index n = td.H.size();
  const int nv = td.H.mu();
  PreimageSolver local;
  PreimageSolver& s = td.solver ? *td.solver : local;
  std::call_once(s.once, [&] {
    // Dividing each row by its content first keeps the elimination small;
    // boundary matrices carry a factor u conj(u) in every row.
    const RfMatrix ch = conj(td.H.matrix());
    RfMatrix aug = RfMatrix::Constant(n, 2 * n, RatFunc(LaurentPoly(mpz_class(0), nv)));
    for (Eigen::Index i = 0; i < n; ++i) {
      RatFunc content(LaurentPoly(mpz_class(0), nv));
      for (Eigen::Index j = 0; j < n; ++j) {
        if (ch(i, j).is_zero()) continue;
        if (content.is_zero())
          content = ch(i, j);
        else
          content = RatFunc(detail::poly_gcd(content.num(), ch(i, j).num()), content.den() * ch(i, j).den());
      }
      if (content.is_zero()) content = RatFunc(LaurentPoly(mpz_class(1), nv));
      for (Eigen::Index j = 0; j < n; ++j) aug(i, j) = ch(i, j) / content;
      aug(i, n + i) = RatFunc(LaurentPoly(mpz_class(1), nv));
      s.row_scale.push_back(content.inverse());
    }
    auto red = row_reduce(aug, true, n);
    s.ops = red.reduced.rightCols(n);
    s.pivots = std::move(red.pivots);
  });
  RfVector rhs = with_nvars(v, nv) * RatFunc(td.delta);
  for (Eigen::Index i = 0; i < n; ++i) rhs(i) *= s.row_scale[static_cast<std::size_t>(i)];
  const RfVector y = s.ops * rhs;
  const auto rank = static_cast<Eigen::Index>(s.pivots.size());
  for (Eigen::Index i = rank; i < n; ++i) {
    if (!y(i).is_zero()) {
      RfMatrix aug(n, n + 1);
      aug.leftCols(n) = conj(td.H.matrix());
      aug.col(n) = v;
      throw NotTorsion(td.rho, rank_q(aug));
    }
  }
  RfVector x = RfVector::Constant(n, RatFunc(LaurentPoly(mpz_class(0), nv)));
  for (Eigen::Index i = 0; i < rank; ++i) x(s.pivots[static_cast<std::size_t>(i)]) = y(i);
  return x;
}

RatFunc pairing_value(const TorsionData& td, const RfVector& v0, const RfVector& w0) {
  const RatFunc numerator = (v0.transpose() * td.H.matrix() * conj(w0))(0, 0);
  const RatFunc d(td.delta);
  return numerator / (d * d);
}

QmodLS pair(const TorsionData& td, const RfVector& v, const RfVector& w, Convention sign) {
  const Eigen::Index n = td.H.size();
  require_lambda_s(v, n, "v");
  require_lambda_s(w, n, "w");
  if (n == 0) return {RatFunc(0)};
  const RatFunc value = pairing_value(td, torsion_preimage(td, v), torsion_preimage(td, w));
  if (!in_lambda_s(value * RatFunc(td.delta))) throw std::logic_error("pair: delta * value is not in Λ_S");
  return {sign == Convention::Lambda ? value : -value};
}

BlForm blanchfield_matrix(const TorsionData& td) {
  BlForm form;
  form.source = td;
  form.kind = BlForm::Kind::FullMatrix;
  form.sign = Convention::Blanchfield;
  const Eigen::Index n = td.H.size();
  if (n == 0) return form;
  const RfMatrix inv = inverse_q(td.H.matrix());
  const RatFunc d(td.delta);
  form.matrix.resize(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!in_lambda_s(inv(i, j) * d)) throw std::logic_error("blanchfield_matrix: delta * entry is not in Λ_S");
      form.matrix[static_cast<std::size_t>(i)].push_back(QmodLS{-inv(i, j)});
    }
  }
  return form;
}

BlForm sampled_form(const TorsionData& td, const std::vector<RfVector>& vectors, Convention sign) {
  BlForm form;
  form.source = td;
  form.kind = BlForm::Kind::Sampled;
  form.sign = sign;
  std::vector<RfVector> pre;
  for (const auto& v : vectors) pre.push_back(torsion_preimage(td, v));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    for (std::size_t j = 0; j < vectors.size(); ++j) {
      const RatFunc value = pairing_value(td, pre[i], pre[j]);
      form.samples.push_back({vectors[i], vectors[j], QmodLS{sign == Convention::Lambda ? value : -value}});
    }
  }
  return form;
}

std::vector<RfVector> torsion_samples(const CMatrix& H, std::size_t count, std::uint64_t seed) {
  const int nv = H.mu();
  const Eigen::Index n = H.size();
  std::vector<RfVector> basis;
  for (RfVector b : column_space_basis(conj(H.matrix()))) {
    LaurentPoly clear(mpz_class(1), nv);
    for (Eigen::Index i = 0; i < n; ++i)
      if (!b(i).den().is_one() && !divide_exact(clear, b(i).den())) clear *= b(i).den();
    basis.push_back(b * RatFunc(clear));
  }
  std::vector<RfVector> out;
  if (basis.empty()) {
    out.assign(count, RfVector::Constant(n, RatFunc(LaurentPoly(mpz_class(0), nv))));
    return out;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-2, 2);
  std::uniform_int_distribution<int> expo(-1, 1);
  std::uniform_int_distribution<int> var(0, nv - 1);
  auto random_scalar = [&] {
    LaurentPoly p(mpz_class(coef(rng)), nv);
    p += LaurentPoly::monomial(nv, ExpVec::unit(var(rng), expo(rng)), coef(rng));
    return RatFunc(p);
  };
  while (out.size() < count) {
    RfVector v = RfVector::Constant(n, RatFunc(LaurentPoly(mpz_class(0), nv)));
    for (const auto& b : basis) v += b * random_scalar();
    bool zero = true;
    for (Eigen::Index i = 0; i < n; ++i) zero = zero && v(i).is_zero();
    if (!zero || out.size() + 1 == count) out.push_back(std::move(v));
  }
  return out;
}

}  // namespace blanchfield
