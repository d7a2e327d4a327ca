#include "blanchfield/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <ostream>
#include <queue>
#include <sstream>

namespace blanchfield {

// ---------------------------------------------------------------------------
// ExpVec

std::int64_t ExpVec::total_degree() const {
  std::int64_t d = 0;
  for (auto x : e) d += x;
  return d;
}

bool ExpVec::is_zero() const {
  return std::all_of(e.begin(), e.end(), [](std::int32_t x) { return x == 0; });
}

bool ExpVec::divisible_by(const ExpVec& other) const {
  for (int i = 0; i < kMaxVars; ++i)
    if ((*this)[i] < other[i]) return false;
  return true;
}

ExpVec operator+(const ExpVec& a, const ExpVec& b) {
  ExpVec r;
  for (int i = 0; i < kMaxVars; ++i) r[i] = a[i] + b[i];
  return r;
}

ExpVec operator-(const ExpVec& a, const ExpVec& b) {
  ExpVec r;
  for (int i = 0; i < kMaxVars; ++i) r[i] = a[i] - b[i];
  return r;
}

ExpVec operator-(const ExpVec& a) {
  ExpVec r;
  for (int i = 0; i < kMaxVars; ++i) r[i] = -a[i];
  return r;
}

int grlex_compare(const ExpVec& a, const ExpVec& b) {
  const auto da = a.total_degree();
  const auto db = b.total_degree();
  if (da != db) return da < db ? -1 : 1;
  for (int i = 0; i < kMaxVars; ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

ExpVec componentwise_min(const ExpVec& a, const ExpVec& b) {
  ExpVec r;
  for (int i = 0; i < kMaxVars; ++i) r[i] = std::min(a[i], b[i]);
  return r;
}

namespace {

bool grlex_greater(const Term& a, const Term& b) { return grlex_compare(a.exp, b.exp) > 0; }

// Merges two descending term lists, computing a + sign * b.
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, int sign) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c;
    if (i == a.size())
      c = -1;
    else if (j == b.size())
      c = 1;
    else
      c = grlex_compare(a[i].exp, b[j].exp);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(b[j]);
      if (sign < 0) out.back().coef = -out.back().coef;
      ++j;
    } else {
      mpz_class s = sign > 0 ? mpz_class(a[i].coef + b[j].coef) : mpz_class(a[i].coef - b[j].coef);
      if (s != 0) out.push_back(Term{a[i].exp, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// LaurentPoly

LaurentPoly::LaurentPoly(long c) {
  if (c != 0) terms_.push_back(Term{ExpVec{}, mpz_class(c)});
}

LaurentPoly::LaurentPoly(mpz_class c, int nvars) : nvars_(nvars) {
  if (c != 0) terms_.push_back(Term{ExpVec{}, std::move(c)});
}

LaurentPoly LaurentPoly::monomial(int nvars, const ExpVec& exp, mpz_class coef) {
  LaurentPoly p;
  p.nvars_ = nvars;
  if (coef != 0) p.terms_.push_back(Term{exp, std::move(coef)});
  return p;
}

LaurentPoly LaurentPoly::variable(int nvars, int var, std::int32_t power) {
  if (var < 0 || var >= nvars || nvars > kMaxVars) throw std::out_of_range("variable index out of range");
  return monomial(nvars, ExpVec::unit(var, power));
}

LaurentPoly LaurentPoly::one_minus(int nvars, int var, std::int32_t power) {
  return LaurentPoly(mpz_class(1), nvars) - variable(nvars, var, power);
}

LaurentPoly LaurentPoly::from_terms(int nvars, std::vector<Term> terms) {
  LaurentPoly p;
  p.nvars_ = nvars;
  p.terms_ = std::move(terms);
  p.canonicalize();
  return p;
}

void LaurentPoly::canonicalize() {
  std::sort(terms_.begin(), terms_.end(), grlex_greater);
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().exp == t.exp) {
      merged.back().coef += t.coef;
    } else {
      if (!merged.empty() && merged.back().coef == 0) merged.pop_back();
      merged.push_back(std::move(t));
    }
  }
  if (!merged.empty() && merged.back().coef == 0) merged.pop_back();
  terms_ = std::move(merged);
}

bool LaurentPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exp.is_zero());
}

bool LaurentPoly::is_one() const {
  return terms_.size() == 1 && terms_[0].exp.is_zero() && terms_[0].coef == 1;
}

mpz_class LaurentPoly::constant_term() const {
  for (const auto& t : terms_)
    if (t.exp.is_zero()) return t.coef;
  return 0;
}

ExpVec LaurentPoly::min_exponents() const {
  if (terms_.empty()) return {};
  ExpVec m = terms_.front().exp;
  for (const auto& t : terms_) m = componentwise_min(m, t.exp);
  return m;
}

ExpVec LaurentPoly::max_exponents() const {
  if (terms_.empty()) return {};
  ExpVec m = terms_.front().exp;
  for (const auto& t : terms_)
    for (int i = 0; i < kMaxVars; ++i) m[i] = std::max(m[i], t.exp[i]);
  return m;
}

LaurentPoly LaurentPoly::with_nvars(int nvars) const {
  LaurentPoly r = *this;
  r.nvars_ = std::max(nvars_, nvars);
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  nvars_ = std::max(nvars_, o.nvars_);
  terms_ = merge_terms(terms_, o.terms_, 1);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  nvars_ = std::max(nvars_, o.nvars_);
  terms_ = merge_terms(terms_, o.terms_, -1);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  const int nv = std::max(a.nvars_, b.nvars_);
  if (a.is_zero() || b.is_zero()) return LaurentPoly(mpz_class(0), nv);
  if (a.terms_.size() == 1 && a.terms_[0].exp.is_zero()) return b.scaled(a.terms_[0].coef).with_nvars(nv);
  if (b.terms_.size() == 1 && b.terms_[0].exp.is_zero()) return a.scaled(b.terms_[0].coef).with_nvars(nv);
  // Heap merge of the rows small[k] * large, one cursor per row; products
  // come out in descending order.
  const auto& small = a.terms_.size() <= b.terms_.size() ? a.terms_ : b.terms_;
  const auto& large = a.terms_.size() <= b.terms_.size() ? b.terms_ : a.terms_;
  struct Cursor {
    ExpVec exp;
    std::size_t k;
    std::size_t j;
  };
  auto lower = [](const Cursor& x, const Cursor& y) { return grlex_compare(x.exp, y.exp) < 0; };
  std::vector<Cursor> heap;
  heap.reserve(small.size());
  for (std::size_t k = 0; k < small.size(); ++k) heap.push_back(Cursor{small[k].exp + large[0].exp, k, 0});
  std::make_heap(heap.begin(), heap.end(), lower);
  LaurentPoly r;
  r.nvars_ = nv;
  mpz_class c;
  while (!heap.empty()) {
    const ExpVec e = heap.front().exp;
    c = 0;
    while (!heap.empty() && heap.front().exp == e) {
      std::pop_heap(heap.begin(), heap.end(), lower);
      Cursor& top = heap.back();
      mpz_addmul(c.get_mpz_t(), small[top.k].coef.get_mpz_t(), large[top.j].coef.get_mpz_t());
      if (++top.j < large.size()) {
        top.exp = small[top.k].exp + large[top.j].exp;
        std::push_heap(heap.begin(), heap.end(), lower);
      } else {
        heap.pop_back();
      }
    }
    if (c != 0) r.terms_.push_back(Term{e, c});
  }
  return r;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) { return *this = *this * o; }

LaurentPoly operator-(LaurentPoly a) {
  for (auto& t : a.terms_) t.coef = -t.coef;
  return a;
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].exp != b.terms_[i].exp || a.terms_[i].coef != b.terms_[i].coef) return false;
  }
  return true;
}

LaurentPoly LaurentPoly::scaled(const mpz_class& c) const {
  if (c == 0) return LaurentPoly(mpz_class(0), nvars_);
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.coef *= c;
  return r;
}

LaurentPoly LaurentPoly::shifted(const ExpVec& by) const {
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.exp = t.exp + by;
  return r;
}

LaurentPoly LaurentPoly::pow(unsigned k) const {
  LaurentPoly result(mpz_class(1), nvars_);
  LaurentPoly base = *this;
  while (k > 0) {
    if (k & 1U) result *= base;
    k >>= 1U;
    if (k > 0) base *= base;
  }
  return result;
}

LaurentPoly LaurentPoly::substitute(int var, long value) const {
  if (value != 1 && value != -1) throw std::invalid_argument("substitute supports only t = ±1");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Term s = t;
    if (value == -1 && (s.exp[var] & 1)) s.coef = -s.coef;
    s.exp[var] = 0;
    out.push_back(std::move(s));
  }
  return from_terms(nvars_, std::move(out));
}

LaurentPoly LaurentPoly::reindexed(const std::vector<int>& target, int nvars) const {
  if (nvars > kMaxVars) throw MathError("too many variables (limit " + std::to_string(kMaxVars) + ")");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Term s{ExpVec{}, t.coef};
    for (int i = 0; i < kMaxVars; ++i) {
      if (t.exp[i] == 0) continue;
      if (i >= static_cast<int>(target.size())) throw std::out_of_range("reindex map too short");
      s.exp[target[static_cast<std::size_t>(i)]] += t.exp[i];
    }
    out.push_back(std::move(s));
  }
  return from_terms(nvars, std::move(out));
}

LaurentPoly conj(const LaurentPoly& p) {
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) out.push_back(Term{-t.exp, t.coef});
  // Negation reverses grlex order exactly.
  std::reverse(out.begin(), out.end());
  return LaurentPoly::from_terms(p.nvars(), std::move(out));
}

// ---------------------------------------------------------------------------
// Division

namespace {

// Division in Z[t] for polynomials with nonnegative exponents.
std::optional<LaurentPoly> divide_poly(const LaurentPoly& p, const LaurentPoly& q) {
  const int nv = std::max(p.nvars(), q.nvars());
  const Term& lq = q.leading();
  // Any exact quotient lies in the box 0 <= e <= deg(p) - deg(q), and its
  // lowest total degree is the difference of the lowest total degrees.
  const ExpVec bound = p.max_exponents() - q.max_exponents();
  for (int i = 0; i < kMaxVars; ++i)
    if (bound[i] < 0) return std::nullopt;
  auto lowest = [](const LaurentPoly& f) { return f.terms().back().exp.total_degree(); };
  const std::int64_t low = lowest(p) - lowest(q);
  // Heap division: the pending products quotient[k] * q[j] are merged lazily,
  // so the remainder is never materialized.
  struct Pending {
    ExpVec exp;
    std::size_t k;
    std::size_t j;
  };
  auto lower = [](const Pending& a, const Pending& b) { return grlex_compare(a.exp, b.exp) < 0; };
  std::priority_queue<Pending, std::vector<Pending>, decltype(lower)> heap(lower);
  const auto& qt = q.terms();
  const auto& pt = p.terms();
  std::vector<Term> quotient;
  std::size_t i = 0;
  mpz_class c;
  while (i < pt.size() || !heap.empty()) {
    ExpVec e;
    if (heap.empty() || (i < pt.size() && grlex_compare(pt[i].exp, heap.top().exp) >= 0))
      e = pt[i].exp;
    else
      e = heap.top().exp;
    c = 0;
    if (i < pt.size() && pt[i].exp == e) c = pt[i++].coef;
    while (!heap.empty() && heap.top().exp == e) {
      Pending top = heap.top();
      heap.pop();
      mpz_submul(c.get_mpz_t(), qt[top.j].coef.get_mpz_t(), quotient[top.k].coef.get_mpz_t());
      if (++top.j < qt.size()) {
        top.exp = qt[top.j].exp + quotient[top.k].exp;
        heap.push(top);
      }
    }
    if (c == 0) continue;
    if (!e.divisible_by(lq.exp)) return std::nullopt;
    const ExpVec d = e - lq.exp;
    if (!bound.divisible_by(d)) return std::nullopt;
    if (d.total_degree() < low) return std::nullopt;
    if (!mpz_divisible_p(c.get_mpz_t(), lq.coef.get_mpz_t())) return std::nullopt;
    mpz_class qc;
    mpz_divexact(qc.get_mpz_t(), c.get_mpz_t(), lq.coef.get_mpz_t());
    quotient.push_back(Term{d, std::move(qc)});
    if (qt.size() > 1) heap.push(Pending{qt[1].exp + d, quotient.size() - 1, 1});
  }
  return LaurentPoly::from_terms(nv, std::move(quotient));
}

}  // namespace

std::optional<LaurentPoly> divide_exact(const LaurentPoly& p, const LaurentPoly& q) {
  if (q.is_zero()) throw MathError("division by the zero polynomial");
  const int nv = std::max(p.nvars(), q.nvars());
  if (p.is_zero()) return LaurentPoly(mpz_class(0), nv);
  if (q.size() == 1) {
    const Term& m = q.leading();
    std::vector<Term> out;
    out.reserve(p.size());
    for (const auto& t : p.terms()) {
      if (!mpz_divisible_p(t.coef.get_mpz_t(), m.coef.get_mpz_t())) return std::nullopt;
      out.push_back(Term{t.exp - m.exp, mpz_class(t.coef / m.coef)});
    }
    return LaurentPoly::from_terms(nv, std::move(out));
  }
  const ExpVec mp = p.min_exponents();
  const ExpVec mq = q.min_exponents();
  auto r = divide_poly(p.shifted(-mp), q.shifted(-mq));
  if (!r) return std::nullopt;
  return r->shifted(mp - mq).with_nvars(nv);
}

// ---------------------------------------------------------------------------
// Λ_S units

bool LSUnit::is_one() const {
  return sign == 1 && monomial.is_zero() &&
         std::all_of(clasp.begin(), clasp.end(), [](std::int32_t k) { return k == 0; });
}

bool LSUnit::is_polynomial() const {
  return std::all_of(clasp.begin(), clasp.end(), [](std::int32_t k) { return k >= 0; });
}

LaurentPoly LSUnit::to_poly(int nvars) const {
  if (!is_polynomial()) throw MathError("unit has negative (1 - t) powers; not a Laurent polynomial");
  LaurentPoly r = LaurentPoly::monomial(nvars, monomial, sign);
  for (int i = 0; i < kMaxVars; ++i) {
    if (clasp[static_cast<std::size_t>(i)] > 0) {
      if (i >= nvars) throw MathError("unit refers to a variable outside the ring");
      r *= LaurentPoly::one_minus(nvars, i).pow(static_cast<unsigned>(clasp[static_cast<std::size_t>(i)]));
    }
  }
  return r;
}

LSUnit LSUnit::inverse() const {
  LSUnit u;
  u.sign = sign;
  u.monomial = -monomial;
  for (std::size_t i = 0; i < clasp.size(); ++i) u.clasp[i] = -clasp[i];
  return u;
}

LSUnit LSUnit::conjugate() const {
  // conj(1 - t) = 1 - t^{-1} = -t^{-1} (1 - t).
  LSUnit u;
  u.sign = sign;
  u.monomial = -monomial;
  for (int i = 0; i < kMaxVars; ++i) {
    const auto k = clasp[static_cast<std::size_t>(i)];
    u.clasp[static_cast<std::size_t>(i)] = k;
    if (k & 1) u.sign = -u.sign;
    u.monomial[i] -= k;
  }
  return u;
}

LSUnit operator*(const LSUnit& a, const LSUnit& b) {
  LSUnit u;
  u.sign = a.sign * b.sign;
  u.monomial = a.monomial + b.monomial;
  for (std::size_t i = 0; i < a.clasp.size(); ++i) u.clasp[i] = a.clasp[i] + b.clasp[i];
  return u;
}

Stripped strip_units(const LaurentPoly& p) {
  if (p.is_zero()) throw MathError("strip_units: zero polynomial has no unit decomposition");
  Stripped s;
  s.unit.monomial = p.min_exponents();
  LaurentPoly core = p.shifted(-s.unit.monomial);
  const int nv = p.nvars();
  for (int i = 0; i < nv; ++i) {
    LaurentPoly factor = LaurentPoly::one_minus(nv, i);
    while (core.max_exponents()[i] > 0 && core.substitute(i, 1).is_zero()) {
      auto q = divide_exact(core, factor);
      if (!q) throw MathError("strip_units: internal division failure");
      core = std::move(*q);
      ++s.unit.clasp[static_cast<std::size_t>(i)];
    }
  }
  if (core.leading().coef < 0) {
    core = -core;
    s.unit.sign = -1;
  }
  s.core = std::move(core);
  return s;
}

bool is_unit_ls(const LaurentPoly& p) {
  if (p.is_zero()) return false;
  return strip_units(p).core.is_one();
}

// ---------------------------------------------------------------------------
// gcd

namespace detail {
namespace {

LaurentPoly positive_lc(LaurentPoly p) {
  if (!p.is_zero() && p.leading().coef < 0) p = -p;
  return p;
}

int main_var(const LaurentPoly& p) {
  int v = -1;
  for (const auto& t : p.terms())
    for (int i = kMaxVars - 1; i > v; --i)
      if (t.exp[i] != 0) {
        v = i;
        break;
      }
  return v;
}

std::int32_t degree_in(const LaurentPoly& p, int v) {
  std::int32_t d = 0;
  for (const auto& t : p.terms()) d = std::max(d, t.exp[v]);
  return d;
}

// Coefficients of p viewed as a polynomial in t_v, indexed by degree.
std::vector<LaurentPoly> coefficients_in(const LaurentPoly& p, int v) {
  std::vector<std::vector<Term>> buckets(static_cast<std::size_t>(degree_in(p, v)) + 1);
  for (const auto& t : p.terms()) {
    Term s = t;
    s.exp[v] = 0;
    buckets[static_cast<std::size_t>(t.exp[v])].push_back(std::move(s));
  }
  std::vector<LaurentPoly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(LaurentPoly::from_terms(p.nvars(), std::move(b)));
  return out;
}

LaurentPoly leading_coefficient_in(const LaurentPoly& p, int v, std::int32_t d) {
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    if (t.exp[v] == d) {
      Term s = t;
      s.exp[v] = 0;
      out.push_back(std::move(s));
    }
  }
  return LaurentPoly::from_terms(p.nvars(), std::move(out));
}

mpz_class integer_content(const LaurentPoly& p) {
  mpz_class g = 0;
  for (const auto& t : p.terms()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coef.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

LaurentPoly content_in(const LaurentPoly& p, int v) {
  LaurentPoly g(mpz_class(0), p.nvars());
  for (const auto& c : coefficients_in(p, v)) {
    if (c.is_zero()) continue;
    g = poly_gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

LaurentPoly exact(const LaurentPoly& p, const LaurentPoly& q) {
  auto r = divide_exact(p, q);
  if (!r) throw MathError("gcd: internal exact division failed");
  return std::move(*r);
}

LaurentPoly primitive_part_in(const LaurentPoly& p, int v) {
  return positive_lc(exact(p, content_in(p, v)));
}

// Pseudo-remainder of a by b with respect to t_v.
LaurentPoly pseudo_remainder(LaurentPoly a, const LaurentPoly& b, int v) {
  const std::int32_t db = degree_in(b, v);
  const LaurentPoly lcb = leading_coefficient_in(b, v, db);
  while (!a.is_zero()) {
    const std::int32_t da = degree_in(a, v);
    if (da < db) break;
    const LaurentPoly lca = leading_coefficient_in(a, v, da);
    a = lcb * a - lca.shifted(ExpVec::unit(v, da - db)) * b;
  }
  return a;
}

// gcd of two primitive polynomials in t_v (contents already removed).
LaurentPoly primitive_prs(LaurentPoly a, LaurentPoly b, int v) {
  if (degree_in(a, v) < degree_in(b, v)) std::swap(a, b);
  while (true) {
    LaurentPoly r = pseudo_remainder(a, b, v);
    if (r.is_zero()) return primitive_part_in(b, v);
    if (degree_in(r, v) == 0) return LaurentPoly(mpz_class(1), a.nvars());
    a = std::move(b);
    b = primitive_part_in(r, v);
  }
}


// Heuristic gcd by evaluation at a large integer (Char, Geddes and Gonnet).
// A candidate is accepted only after exact division of both inputs, so the
// heuristic never returns a wrong answer; nullopt sends the caller to the PRS.
// Inputs have nonnegative exponents.
std::optional<LaurentPoly> heuristic_gcd(const LaurentPoly& a, const LaurentPoly& b) {
  const int nv = std::max(a.nvars(), b.nvars());
  if (a.is_zero() || b.is_zero()) return std::nullopt;
  mpz_class common;
  mpz_gcd(common.get_mpz_t(), integer_content(a).get_mpz_t(), integer_content(b).get_mpz_t());
  const int v = std::max(main_var(a), main_var(b));
  if (v < 0) return LaurentPoly(common, nv);
  auto divided = [&](const LaurentPoly& p) {
    std::vector<Term> terms = p.terms();
    for (auto& t : terms) mpz_divexact(t.coef.get_mpz_t(), t.coef.get_mpz_t(), common.get_mpz_t());
    return LaurentPoly::from_terms(nv, std::move(terms));
  };
  const LaurentPoly f = divided(a);
  const LaurentPoly g = divided(b);

  auto max_norm = [](const LaurentPoly& p) {
    mpz_class m = 0;
    for (const auto& t : p.terms())
      if (abs(t.coef) > m) m = abs(t.coef);
    return m;
  };
  const std::int32_t degree = std::max(degree_in(f, v), degree_in(g, v));
  mpz_class xi = 2 * std::min(max_norm(f), max_norm(g)) + 29;

  // Evaluates t_v = xi.
  auto evaluate = [&](const LaurentPoly& p) {
    std::vector<Term> terms;
    terms.reserve(p.size());
    mpz_class power;
    for (const auto& t : p.terms()) {
      mpz_pow_ui(power.get_mpz_t(), xi.get_mpz_t(), static_cast<unsigned long>(t.exp[v]));
      Term s{t.exp, t.coef * power};
      s.exp[v] = 0;
      terms.push_back(std::move(s));
    }
    return LaurentPoly::from_terms(nv, std::move(terms));
  };

  for (int attempt = 0; attempt < 6; ++attempt) {
    if (mpz_sizeinbase(xi.get_mpz_t(), 2) * static_cast<std::size_t>(degree + 1) > 40000) return std::nullopt;
    const LaurentPoly fe = evaluate(f);
    const LaurentPoly ge = evaluate(g);
    if (!fe.is_zero() && !ge.is_zero()) {
      if (auto h = heuristic_gcd(fe, ge)) {
        // xi-adic expansion with symmetric residues, coefficientwise.
        std::vector<Term> rest = h->terms();
        std::vector<Term> out;
        const mpz_class half = xi / 2;
        for (std::int32_t i = 0; !rest.empty(); ++i) {
          std::vector<Term> next;
          for (auto& t : rest) {
            mpz_class r;
            mpz_fdiv_r(r.get_mpz_t(), t.coef.get_mpz_t(), xi.get_mpz_t());
            if (r > half) r -= xi;
            if (r != 0) {
              Term d{t.exp, r};
              d.exp[v] = i;
              out.push_back(std::move(d));
            }
            mpz_class q = t.coef - r;
            mpz_divexact(q.get_mpz_t(), q.get_mpz_t(), xi.get_mpz_t());
            if (q != 0) next.push_back(Term{t.exp, std::move(q)});
          }
          rest = std::move(next);
        }
        LaurentPoly candidate = LaurentPoly::from_terms(nv, std::move(out));
        if (!candidate.is_zero()) {
          const mpz_class c = integer_content(candidate);
          std::vector<Term> terms = candidate.terms();
          for (auto& t : terms) mpz_divexact(t.coef.get_mpz_t(), t.coef.get_mpz_t(), c.get_mpz_t());
          candidate = positive_lc(LaurentPoly::from_terms(nv, std::move(terms)));
          if (divide_exact(f, candidate) && divide_exact(g, candidate)) return candidate.scaled(common);
        }
      }
    }
    // Next evaluation point, as in the original algorithm.
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), xi.get_mpz_t());
    mpz_sqrt(root.get_mpz_t(), root.get_mpz_t());
    xi = xi * 73794 * root / 27011;
  }
  return std::nullopt;
}
}  // namespace

LaurentPoly poly_gcd(const LaurentPoly& p, const LaurentPoly& q) {
  const int nv = std::max(p.nvars(), q.nvars());
  if (p.is_zero()) return positive_lc(q.with_nvars(nv));
  if (q.is_zero()) return positive_lc(p.with_nvars(nv));
  if (p.is_one() || q.is_one()) return LaurentPoly(mpz_class(1), nv);
  if (p == q || p == -q) return positive_lc(p.with_nvars(nv));

  // Monomial factors are handled apart so that Laurent divisibility below
  // coincides with polynomial divisibility.
  const ExpVec mp = p.min_exponents();
  const ExpVec mq = q.min_exponents();
  if (!mp.is_zero() || !mq.is_zero()) {
    const ExpVec m = componentwise_min(mp, mq);
    return poly_gcd(p.shifted(-mp), q.shifted(-mq)).shifted(m);
  }

  const int vp = main_var(p);
  const int vq = main_var(q);
  if (vp < 0 && vq < 0) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), p.leading().coef.get_mpz_t(), q.leading().coef.get_mpz_t());
    return LaurentPoly(g, nv);
  }
  if (vp < 0 || vq < 0) {
    // One side is an integer: the gcd is an integer too.
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), integer_content(p).get_mpz_t(), integer_content(q).get_mpz_t());
    return LaurentPoly(g, nv);
  }
  const int v = std::max(vp, vq);
  if (vp != vq) {
    // The side free of t_v only shares factors with the other side's content.
    if (vp < v) return poly_gcd(p, content_in(q, v));
    return poly_gcd(content_in(p, v), q);
  }

  if (auto h = heuristic_gcd(p, q)) return h->with_nvars(nv);

  // Divisibility shortcut: common when folding many minors.
  if (p.size() >= q.size()) {
    if (divide_exact(p, q)) return positive_lc(q.with_nvars(nv));
  } else if (divide_exact(q, p)) {
    return positive_lc(p.with_nvars(nv));
  }

  const LaurentPoly cp = content_in(p, v);
  const LaurentPoly cq = content_in(q, v);
  const LaurentPoly c = poly_gcd(cp, cq);
  const LaurentPoly g = primitive_prs(exact(p, cp), exact(q, cq), v);
  return positive_lc((c * g).with_nvars(nv));
}

}  // namespace detail

LaurentPoly gcd(const LaurentPoly& p, const LaurentPoly& q) {
  const int nv = std::max(p.nvars(), q.nvars());
  if (p.is_zero() && q.is_zero()) return LaurentPoly(mpz_class(0), nv);
  if (p.is_zero()) return strip_units(q).core.with_nvars(nv);
  if (q.is_zero()) return strip_units(p).core.with_nvars(nv);
  LaurentPoly g = detail::poly_gcd(strip_units(p).core, strip_units(q).core);
  return strip_units(g).core.with_nvars(nv);
}

// ---------------------------------------------------------------------------
// Text form

namespace {

std::string variable_name(int i, int nvars) {
  if (nvars <= 1) return "t";
  return "t" + std::to_string(i + 1);
}

std::string monomial_string(const ExpVec& e, int nvars) {
  std::string s;
  for (int i = 0; i < kMaxVars; ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += variable_name(i, nvars);
    if (e[i] != 1) s += '^' + std::to_string(e[i]);
  }
  return s;
}

}  // namespace

std::string to_string(const LaurentPoly& p) { return to_string(p, p.nvars()); }

std::string to_string(const LaurentPoly& p, int nvars) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    const bool negative = t.coef < 0;
    const mpz_class mag = abs(t.coef);
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const std::string mono = monomial_string(t.exp, nvars);
    if (mono.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += mono;
    } else {
      out += mag.get_str() + "*" + mono;
    }
  }
  return out;
}

std::string to_string(const LSUnit& u, int nvars) {
  std::string s = u.sign < 0 ? "-" : "";
  std::string body = monomial_string(u.monomial, nvars);
  for (int i = 0; i < kMaxVars; ++i) {
    const auto k = u.clasp[static_cast<std::size_t>(i)];
    if (k == 0) continue;
    if (!body.empty()) body += '*';
    body += "(1 - " + variable_name(i, nvars) + ")";
    if (k != 1) body += "^" + std::to_string(k);
  }
  if (body.empty()) body = "1";
  return s + body;
}

namespace {

class PolyParser {
public:
  PolyParser(std::string_view text, int nvars) : text_(text), nvars_(nvars) {}

  LaurentPoly parse() {
    LaurentPoly r = expression();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character");
    return r;
  }

private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("polynomial parse error at offset " + std::to_string(pos_) + " in \"" +
                     std::string(text_) + "\": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  LaurentPoly expression() {
    LaurentPoly acc(mpz_class(0), nvars_);
    bool negative = false;
    if (accept('-'))
      negative = true;
    else
      accept('+');
    acc = term();
    if (negative) acc = -acc;
    while (true) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        break;
    }
    return acc;
  }

  LaurentPoly term() {
    LaurentPoly acc = factor();
    while (accept('*')) acc *= factor();
    return acc;
  }

  long exponent() {
    skip_ws();
    bool negative = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      negative = text_[pos_] == '-';
      ++pos_;
    }
    const mpz_class n = integer();
    if (!n.fits_sint_p()) fail("exponent out of range");
    return negative ? -n.get_si() : n.get_si();
  }

  mpz_class integer() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  LaurentPoly factor() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      LaurentPoly inner = expression();
      if (!accept(')')) fail("expected ')'");
      if (accept('^')) {
        const long k = exponent();
        if (k >= 0) return inner.pow(static_cast<unsigned>(k));
        if (inner.size() != 1 || (inner.leading().coef != 1 && inner.leading().coef != -1))
          fail("negative power of a non-monomial");
        return LaurentPoly::monomial(nvars_, -inner.leading().exp, inner.leading().coef)
            .pow(static_cast<unsigned>(-k));
      }
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return LaurentPoly(integer(), nvars_);
    if (c == 't') {
      ++pos_;
      int var = 0;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        const mpz_class idx = integer();
        if (idx < 1 || idx > nvars_) fail("variable index out of range");
        var = static_cast<int>(idx.get_si()) - 1;
      } else if (nvars_ != 1) {
        fail("bare 't' is only allowed with one variable");
      }
      long k = 1;
      if (accept('^')) k = exponent();
      return LaurentPoly::variable(nvars_, var, static_cast<std::int32_t>(k));
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  int nvars_;
  std::size_t pos_ = 0;
};

}  // namespace

LaurentPoly parse_laurent(std::string_view text, int nvars) {
  if (nvars < 1 || nvars > kMaxVars) throw ParseError("variable count out of range");
  return PolyParser(text, nvars).parse().with_nvars(nvars);
}

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << to_string(p); }

}  // namespace blanchfield
