#include "blanchfield/ratfunc.hpp"

#include <algorithm>
#include <ostream>

namespace blanchfield {

namespace {

LaurentPoly clasp_product(int nvars, const std::array<std::int32_t, kMaxVars>& k, int sign_filter) {
  LaurentPoly r(mpz_class(1), nvars);
  for (int i = 0; i < kMaxVars; ++i) {
    const auto e = k[static_cast<std::size_t>(i)] * sign_filter;
    if (e > 0) r *= LaurentPoly::one_minus(nvars, i).pow(static_cast<unsigned>(e));
  }
  return r;
}

LaurentPoly exact_quotient(const LaurentPoly& p, const LaurentPoly& q) {
  auto r = divide_exact(p, q);
  if (!r) throw MathError("internal error: expected exact division");
  return std::move(*r);
}

}  // namespace

RatFunc::RatFunc(const LaurentPoly& num, const LaurentPoly& den) {
  if (den.is_zero()) throw MathError("rational function with zero denominator");
  const int nv = std::max(num.nvars(), den.nvars());
  if (num.is_zero()) {
    num_ = LaurentPoly(mpz_class(0), nv);
    den_ = LaurentPoly(mpz_class(1), nv);
    return;
  }
  if (den.is_one()) {
    num_ = num.with_nvars(nv);
    den_ = LaurentPoly(mpz_class(1), nv);
    return;
  }
  Stripped sn = strip_units(num);
  Stripped sd = strip_units(den);
  if (!sn.core.is_one() && !sd.core.is_one()) {
    const LaurentPoly g = detail::poly_gcd(sn.core, sd.core);
    if (!g.is_one()) {
      sn.core = exact_quotient(sn.core, g);
      sd.core = exact_quotient(sd.core, g);
    }
  }
  LSUnit net = sn.unit * sd.unit.inverse();
  LaurentPoly n = LaurentPoly::monomial(nv, net.monomial, net.sign) * sn.core * clasp_product(nv, net.clasp, 1);
  LaurentPoly d = sd.core * clasp_product(nv, net.clasp, -1);
  num_ = n.with_nvars(nv);
  den_ = d.with_nvars(nv);
}

RatFunc RatFunc::from_unit(const LSUnit& u, int nvars) {
  LSUnit top = u;
  LSUnit bottom;
  for (std::size_t i = 0; i < u.clasp.size(); ++i) {
    top.clasp[i] = std::max(u.clasp[i], 0);
    bottom.clasp[i] = std::max(-u.clasp[i], 0);
  }
  return RatFunc(top.to_poly(nvars), bottom.to_poly(nvars));
}

LaurentPoly RatFunc::den_core() const { return strip_units(den_).core; }

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o.with_nvars(nvars());
  if (den_ == o.den_) {
    *this = RatFunc(num_ + o.num_, den_);
    return *this;
  }
  *this = RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (is_zero() || o.is_zero()) {
    *this = RatFunc(LaurentPoly(mpz_class(0), std::max(nvars(), o.nvars())));
    return *this;
  }
  if (den_.is_one() && o.den_.is_one()) {
    num_ *= o.num_;
    den_ = den_.with_nvars(num_.nvars());
    return *this;
  }
  *this = RatFunc(num_ * o.num_, den_ * o.den_);
  return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) {
  if (o.is_zero()) throw MathError("division by zero rational function");
  return *this *= o.inverse();
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw MathError("zero has no inverse");
  return RatFunc(den_, num_);
}

RatFunc RatFunc::with_nvars(int nvars) const { return RatFunc(Raw{}, num_.with_nvars(nvars), den_.with_nvars(nvars)); }

RatFunc RatFunc::reindexed(const std::vector<int>& target, int nvars) const {
  return RatFunc(num_.reindexed(target, nvars), den_.reindexed(target, nvars));
}

RatFunc conj(const RatFunc& f) { return RatFunc(conj(f.num()), conj(f.den())); }

bool in_lambda_s(const RatFunc& f) {
  if (f.den().is_one()) return true;
  return f.den_core().is_one();
}

bool qls_equal(const QmodLS& a, const QmodLS& b) { return in_lambda_s(a.rep - b.rep); }

bool operator==(const QmodLS& a, const QmodLS& b) { return qls_equal(a, b); }

QmodLS qls_conj(const QmodLS& a) { return {conj(a.rep)}; }

namespace {

// Remainder of p (nonnegative support) by d under grlex, keeping integer
// coefficients: a term is reduced when its monomial is divisible by lm(d),
// its coefficient is replaced by the nonnegative residue mod |lc(d)|.
LaurentPoly reduce_modulo(const LaurentPoly& p, const LaurentPoly& d) {
  const Term& ld = d.leading();
  const mpz_class lc_abs = abs(ld.coef);
  std::vector<Term> remainder;
  LaurentPoly rest = p;
  while (!rest.is_zero()) {
    Term lt = rest.leading();
    if (lt.exp.divisible_by(ld.exp)) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), lt.coef.get_mpz_t(), lc_abs.get_mpz_t());
      if (ld.coef < 0) q = -q;
      if (q != 0) {
        rest -= LaurentPoly::monomial(p.nvars(), lt.exp - ld.exp, q) * d;
        if (!rest.is_zero() && rest.leading().exp == lt.exp) {
          remainder.push_back(rest.leading());
          rest -= LaurentPoly::monomial(p.nvars(), lt.exp, rest.leading().coef);
        }
        continue;
      }
    }
    remainder.push_back(lt);
    rest -= LaurentPoly::monomial(p.nvars(), lt.exp, lt.coef);
  }
  return LaurentPoly::from_terms(p.nvars(), std::move(remainder));
}

// One normalization pass; see qls_canonical.
RatFunc canonical_step(const RatFunc& f) {
  if (in_lambda_s(f)) return RatFunc(LaurentPoly(mpz_class(0), f.nvars()));
  const int nv = f.nvars();
  LaurentPoly num = f.num();
  Stripped sd = strip_units(f.den());
  LaurentPoly core = sd.core;
  auto clasp = sd.unit.clasp;

  // Peel (1 - t_i) factors off the denominator: write num = a*M + (1 - t_i)*b
  // with a free of t_i, then num / ((1 - t_i)^k M) = a / (1 - t_i)^k + b / ((1 - t_i)^{k-1} M)
  // and the first summand is in Λ_S. Skipped when M(t_i = 1) does not divide
  // num(t_i = 1).
  for (int i = 0; i < nv; ++i) {
    auto& k = clasp[static_cast<std::size_t>(i)];
    if (k <= 0) continue;
    auto others = clasp;
    others[static_cast<std::size_t>(i)] = 0;
    const LaurentPoly rest = core * clasp_product(nv, others, 1);
    const LaurentPoly rest_at_one = rest.substitute(i, 1);
    const LaurentPoly factor = LaurentPoly::one_minus(nv, i);
    while (k > 0) {
      auto a = divide_exact(num.substitute(i, 1), rest_at_one);
      if (!a) break;
      num = exact_quotient(num - *a * rest, factor);
      --k;
    }
  }
  const LaurentPoly den = core * clasp_product(nv, clasp, 1);
  const ExpVec shift = num.min_exponents();
  const LaurentPoly reduced = reduce_modulo(num.shifted(-shift), den).shifted(shift);
  return RatFunc(reduced, den);
}

}  // namespace

RatFunc qls_canonical(const QmodLS& a) {
  RatFunc current = a.rep;
  for (int iter = 0; iter < 32; ++iter) {
    RatFunc next = canonical_step(current);
    if (next == current) return next;
    current = std::move(next);
  }
  return current;
}

std::string to_string(const RatFunc& f) { return to_string(f, f.nvars()); }

std::string to_string(const RatFunc& f, int nvars) {
  if (f.den().is_one()) return to_string(f.num(), nvars);
  auto wrap = [nvars](const LaurentPoly& p) {
    std::string s = to_string(p, nvars);
    return p.size() > 1 ? "(" + s + ")" : s;
  };
  return wrap(f.num()) + " / " + wrap(f.den());
}

std::string to_string(const QmodLS& c, int nvars) {
  return "[" + to_string(qls_canonical(c), nvars) + "] mod Λ_S";
}

RatFunc parse_ratfunc(std::string_view text, int nvars) {
  int depth = 0;
  std::size_t slash = std::string_view::npos;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')') --depth;
    if (text[i] == '/' && depth == 0) {
      if (slash != std::string_view::npos) throw ParseError("more than one '/' in fraction \"" + std::string(text) + "\"");
      slash = i;
    }
  }
  if (slash == std::string_view::npos) return RatFunc(parse_laurent(text, nvars));
  const LaurentPoly num = parse_laurent(text.substr(0, slash), nvars);
  const LaurentPoly den = parse_laurent(text.substr(slash + 1), nvars);
  if (den.is_zero()) throw ParseError("zero denominator in \"" + std::string(text) + "\"");
  return RatFunc(num, den);
}

std::ostream& operator<<(std::ostream& os, const RatFunc& f) { return os << to_string(f); }

}  // namespace blanchfield
