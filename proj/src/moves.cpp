#include "blanchfield/moves.hpp"

namespace blanchfield {

namespace {

RatFunc zero(int nv) { return RatFunc(LaurentPoly(mpz_class(0), nv)); }

RfMatrix zeros(Eigen::Index r, Eigen::Index c, int nv) { return RfMatrix::Constant(r, c, zero(nv)); }

RfMatrix identity(Eigen::Index n, int nv) {
  RfMatrix m = zeros(n, n, nv);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = RatFunc(LaurentPoly(mpz_class(1), nv));
  return m;
}

// [I; 0] scaled by s: the inclusion of the first n coordinates into m.
RfMatrix inclusion(Eigen::Index n, Eigen::Index m, const RatFunc& s, int nv) {
  RfMatrix out = zeros(m, n, nv);
  for (Eigen::Index i = 0; i < n; ++i) out(i, i) = s;
  return out;
}

bool is_unit(const RatFunc& x) { return !x.is_zero() && is_unit_ls(x.num()) && x.den_core().is_one(); }

RfMatrix conj_inverse(const RfMatrix& e) { return inverse_q(conj(e)); }

std::string describe(const RfVector& v, int nv) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v(i), nv);
  return s + ")";
}

}  // namespace

Transformed stabilize0(const CMatrix& H) {
  const int nv = H.mu();
  const Eigen::Index n = H.size();
  RfMatrix m = zeros(n + 1, n + 1, nv);
  m.topLeftCorner(n, n) = H.matrix();
  CMatrix out(nv, std::move(m));
  return {out, {H, out, inclusion(n, n + 1, RatFunc(LaurentPoly(mpz_class(1), nv)), nv)}};
}

Transformed stabilize2(const CMatrix& H, const RfVector& xi, const RatFunc& lam, const RatFunc& alpha) {
  const int nv = H.mu();
  const Eigen::Index n = H.size();
  if (xi.size() != n) throw ValidationError("xi has length " + std::to_string(xi.size()) + ", expected " + std::to_string(n));
  for (Eigen::Index i = 0; i < n; ++i)
    if (!in_lambda_s(xi(i))) throw ValidationError("xi entry " + std::to_string(i + 1) + " is not in Λ_S");
  if (!in_lambda_s(lam) || conj(lam) != lam) throw ValidationError("lam must lie in Λ_S with conj(lam) = lam");
  if (!is_unit(alpha)) throw ValidationError("alpha = " + to_string(alpha, nv) + " is not a unit of Λ_S");

  const Eigen::Index a = n;
  const Eigen::Index b = n + 1;
  RfMatrix m = zeros(n + 2, n + 2, nv);
  m.topLeftCorner(n, n) = H.matrix();
  for (Eigen::Index i = 0; i < n; ++i) {
    m(i, a) = xi(i).with_nvars(nv);
    m(a, i) = conj(xi(i)).with_nvars(nv);
  }
  m(a, a) = lam.with_nvars(nv);
  m(a, b) = alpha.with_nvars(nv);
  m(b, a) = conj(alpha).with_nvars(nv);
  CMatrix out(nv, m);

  // Congruence M -> E M E^* onto H (+) [[0, 1], [1, 0]]:
  // rows i -= (xi_i / conj(alpha)) row b clears xi,
  // row a -= (d / conj(alpha)) row b with d + conj(d) = lam clears lam,
  // then row b is scaled by 1 / conj(alpha).
  const RatFunc abar = conj(alpha).with_nvars(nv);
  RfMatrix e = identity(n + 2, nv);
  for (Eigen::Index i = 0; i < n; ++i) e(i, b) = -(xi(i) / abar);
  const RatFunc d = lam / RatFunc(LaurentPoly::one_minus(nv, 0));
  e(a, b) = -(d / abar);
  RfMatrix s = identity(n + 2, nv);
  s(b, b) = abar.inverse();
  e = RfMatrix(s * e);

  RfMatrix expected = zeros(n + 2, n + 2, nv);
  expected.topLeftCorner(n, n) = H.matrix();
  expected(a, b) = RatFunc(LaurentPoly(mpz_class(1), nv));
  expected(b, a) = RatFunc(LaurentPoly(mpz_class(1), nv));
  if (RfMatrix(e * m * adjoint(e)) != expected) throw std::logic_error("stabilize2: base change check failed");

  // lambda_M(Q x, Q y) = lambda_{E M E^*}(x, y) with Q = conj(E)^{-1}.
  const RfMatrix q = conj_inverse(e);
  const RfMatrix map = q.leftCols(n);
  return {out, {H, out, map}};
}

CMatrix block_sum(const std::vector<CMatrix>& parts) {
  if (parts.empty()) throw ValidationError("block_sum needs at least one summand");
  const int nv = parts.front().mu();
  Eigen::Index n = 0;
  for (const auto& p : parts) {
    if (p.mu() != nv)
      throw ValidationError("block_sum: summands have different variable counts (" + std::to_string(nv) + " and " +
                            std::to_string(p.mu()) + ")");
    n += p.size();
  }
  RfMatrix m = zeros(n, n, nv);
  Eigen::Index k = 0;
  for (const auto& p : parts) {
    m.block(k, k, p.size(), p.size()) = p.matrix();
    k += p.size();
  }
  return CMatrix(nv, std::move(m));
}

Transformed unit_scale(const CMatrix& H, const LSUnit& u) {
  const int nv = H.mu();
  const RatFunc uf = RatFunc::from_unit(u, nv);
  const RatFunc factor = uf * conj(uf);
  RfMatrix m = H.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) *= factor;
  CMatrix scaled(nv, std::move(m));
  return {scaled, {scaled, H, inclusion(H.size(), H.size(), uf.inverse(), nv)}};
}

CMatrix mirror(const CMatrix& H) { return CMatrix(H.mu(), RfMatrix(-H.matrix())); }

FormIsometry mirror_isometry(const CMatrix& H) {
  return {H, mirror(H), inclusion(H.size(), H.size(), RatFunc(LaurentPoly(mpz_class(-1), H.mu())), H.mu()),
          Relation::Negating};
}

CMatrix reverse(const CMatrix& H) { return CMatrix(H.mu(), conj(H.matrix())); }

FormIsometry reverse_isometry(const CMatrix& H) {
  return {H, reverse(H), identity(H.size(), H.mu()), Relation::Conjugating};
}

ConnectedSum connected_sum(const CMatrix& H1, const CMatrix& H2, bool shared) {
  const int mu1 = H1.mu();
  const int mu2 = H2.mu();
  const int mu = shared ? mu1 + mu2 - 1 : mu1 + mu2;
  if (mu > kMaxVars)
    throw ValidationError("connected sum needs " + std::to_string(mu) + " variables; at most " +
                          std::to_string(kMaxVars) + " are supported");
  std::vector<int> first(static_cast<std::size_t>(mu1));
  std::vector<int> second(static_cast<std::size_t>(mu2));
  for (int i = 0; i < mu1; ++i) first[static_cast<std::size_t>(i)] = i;
  const int offset = shared ? mu1 - 1 : mu1;
  for (int j = 0; j < mu2; ++j) second[static_cast<std::size_t>(j)] = offset + j;

  // w1 runs over the variables only H2 carries, w2 over those only H1 carries.
  LaurentPoly w1(mpz_class(1), mu);
  LaurentPoly w2(mpz_class(1), mu);
  for (int i = 0; i < mu; ++i) {
    const bool in1 = i < mu1;
    const bool in2 = i >= offset;
    if (in2 && !in1) w1 *= LaurentPoly::one_minus(mu, i);
    if (in1 && !in2) w2 *= LaurentPoly::one_minus(mu, i);
  }
  const RatFunc u1(w1 * conj(w1));
  const RatFunc u2(w2 * conj(w2));

  auto reindex = [mu](const CMatrix& h, const std::vector<int>& target) {
    RfMatrix m(h.size(), h.size());
    for (Eigen::Index i = 0; i < h.size(); ++i)
      for (Eigen::Index j = 0; j < h.size(); ++j) m(i, j) = h(i, j).reindexed(target, mu);
    return CMatrix(mu, std::move(m));
  };
  const CMatrix a = reindex(H1, first);
  const CMatrix b = reindex(H2, second);
  const Eigen::Index n1 = a.size();
  const Eigen::Index n2 = b.size();
  RfMatrix m = zeros(n1 + n2, n1 + n2, mu);
  m.topLeftCorner(n1, n1) = a.matrix() * u1;
  m.bottomRightCorner(n2, n2) = b.matrix() * u2;
  CMatrix sum(mu, std::move(m));

  RfMatrix map1 = zeros(n1 + n2, n1, mu);
  for (Eigen::Index i = 0; i < n1; ++i) map1(i, i) = RatFunc(w1);
  RfMatrix map2 = zeros(n1 + n2, n2, mu);
  for (Eigen::Index i = 0; i < n2; ++i) map2(n1 + i, i) = RatFunc(w2);
  return {sum, {a, sum, map1}, {b, sum, map2}};
}

IsometryReport check_isometry(const FormIsometry& iso, const std::vector<RfVector>& samples) {
  IsometryReport report;
  const int nv = iso.target.mu();
  const TorsionData src = torsion_order(iso.source);
  const TorsionData dst = torsion_order(iso.target);
  std::vector<RfVector> images;
  std::vector<bool> usable;
  for (const auto& x : samples) {
    RfVector y = iso.map * x;
    if (iso.relation == Relation::Conjugating) y = conj(y);
    const bool ok = is_torsion(iso.target, y);
    if (!ok) report.violations.push_back("image of " + describe(x, nv) + " is not torsion in the target");
    images.push_back(std::move(y));
    usable.push_back(ok);
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t j = 0; j < samples.size(); ++j) {
      if (!usable[i] || !usable[j]) continue;
      ++report.pairs_checked;
      QmodLS before = pair(src, samples[i], samples[j]);
      const QmodLS after = pair(dst, images[i], images[j]);
      if (iso.relation == Relation::Negating) before = -before;
      if (iso.relation == Relation::Conjugating) before = qls_conj(before);
      if (before != after)
        report.violations.push_back("pairing differs on samples " + std::to_string(i + 1) + "," +
                                    std::to_string(j + 1) + ": expected " + to_string(before, nv) + ", got " +
                                    to_string(after, nv));
    }
  }
  return report;
}

IsometryReport check_isometry(const FormIsometry& iso, std::size_t count, std::uint64_t seed) {
  return check_isometry(iso, torsion_samples(iso.source, count, seed));
}

}  // namespace blanchfield
