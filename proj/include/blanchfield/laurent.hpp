#ifndef BLANCHFIELD_LAURENT_HPP
#define BLANCHFIELD_LAURENT_HPP

#include <array>
#include <iosfwd>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace blanchfield {

/// Upper bound on the number of variables t_1..t_mu carried by a polynomial.
inline constexpr int kMaxVars = 8;

class MathError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (as opposed to a mathematical obstruction).
class ValidationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ParseError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

/// Exponent vector of a Laurent monomial. Slots past the ambient variable
/// count are always zero, so vectors of different rings compare consistently.
struct ExpVec {
  std::array<std::int32_t, kMaxVars> e{};

  std::int32_t& operator[](int i) { return e[static_cast<std::size_t>(i)]; }
  std::int32_t operator[](int i) const { return e[static_cast<std::size_t>(i)]; }

  static ExpVec unit(int var, std::int32_t power = 1) {
    ExpVec v;
    v[var] = power;
    return v;
  }

  std::int64_t total_degree() const;
  bool is_zero() const;
  /// Componentwise `other <= *this`.
  bool divisible_by(const ExpVec& other) const;

  friend ExpVec operator+(const ExpVec& a, const ExpVec& b);
  friend ExpVec operator-(const ExpVec& a, const ExpVec& b);
  friend ExpVec operator-(const ExpVec& a);
  friend bool operator==(const ExpVec& a, const ExpVec& b) = default;
};

/// Graded lexicographic comparison (t1 > t2 > ...). Translation invariant, so
/// it agrees with the order on exponents shifted to be nonnegative.
int grlex_compare(const ExpVec& a, const ExpVec& b);

ExpVec componentwise_min(const ExpVec& a, const ExpVec& b);

struct Term {
  ExpVec exp;
  mpz_class coef;
};

/// Element of Z[t_1^{±1}, ..., t_mu^{±1}]. Terms are kept sorted in strictly
/// descending grlex order with no zero coefficients.
class LaurentPoly {
public:
  LaurentPoly() = default;
  LaurentPoly(long c);  // NOLINT(google-explicit-constructor)
  explicit LaurentPoly(mpz_class c, int nvars = 0);

  static LaurentPoly monomial(int nvars, const ExpVec& exp, mpz_class coef = 1);
  /// The variable t_{var+1} (zero based index).
  static LaurentPoly variable(int nvars, int var, std::int32_t power = 1);
  /// 1 - t_{var+1}^power.
  static LaurentPoly one_minus(int nvars, int var, std::int32_t power = 1);
  /// Builds from unsorted terms; like terms are merged, zeros dropped.
  static LaurentPoly from_terms(int nvars, std::vector<Term> terms);

  int nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  /// Valid only when nonzero.
  const Term& leading() const { return terms_.front(); }
  /// Coefficient of the constant monomial.
  mpz_class constant_term() const;
  /// Componentwise minimum exponent; zero vector for the zero polynomial.
  ExpVec min_exponents() const;
  ExpVec max_exponents() const;
  /// Returns a copy carrying a larger ambient variable count.
  LaurentPoly with_nvars(int nvars) const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator-(LaurentPoly a);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  LaurentPoly scaled(const mpz_class& c) const;
  LaurentPoly shifted(const ExpVec& by) const;
  LaurentPoly pow(unsigned k) const;
  /// Substitutes t_{var+1} = value.
  LaurentPoly substitute(int var, long value) const;
  /// Re-labels variable i as target[i]; `nvars` is the new ambient count.
  LaurentPoly reindexed(const std::vector<int>& target, int nvars) const;

private:
  void canonicalize();

  int nvars_ = 0;
  std::vector<Term> terms_;
};

/// The ring involution t_i -> t_i^{-1}.
LaurentPoly conj(const LaurentPoly& p);

/// Exact quotient p / q in the Laurent ring, or nullopt when q does not divide p.
std::optional<LaurentPoly> divide_exact(const LaurentPoly& p, const LaurentPoly& q);

/// A unit of Λ_S: sign * t^monomial * prod (1 - t_i)^clasp[i].
struct LSUnit {
  int sign = 1;
  ExpVec monomial;
  std::array<std::int32_t, kMaxVars> clasp{};

  bool is_one() const;
  bool is_polynomial() const;
  /// Polynomial value; requires every clasp exponent to be nonnegative.
  LaurentPoly to_poly(int nvars) const;
  LSUnit inverse() const;
  LSUnit conjugate() const;

  friend LSUnit operator*(const LSUnit& a, const LSUnit& b);
  friend bool operator==(const LSUnit& a, const LSUnit& b) = default;
};

struct Stripped {
  LaurentPoly core;
  LSUnit unit;
};

/// Factors p = unit * core where core has nonnegative support with zero
/// componentwise minimum, no (1 - t_i) factor, and positive leading
/// coefficient. Throws MathError on zero input.
Stripped strip_units(const LaurentPoly& p);

/// Whether p is ±t^a prod (1 - t_i)^{k_i}.
bool is_unit_ls(const LaurentPoly& p);

/// gcd in Λ normalized by strip_units; gcd(0, 0) = 0.
LaurentPoly gcd(const LaurentPoly& p, const LaurentPoly& q);

namespace detail {
/// gcd in Z[t_1..t_mu] of polynomials with nonnegative exponents, positive
/// leading coefficient.
LaurentPoly poly_gcd(const LaurentPoly& p, const LaurentPoly& q);
}  // namespace detail

// Text form: "3 - 2*t1*t2^-1". With one variable the name "t" is used.
std::string to_string(const LaurentPoly& p);
std::string to_string(const LaurentPoly& p, int nvars);
std::string to_string(const LSUnit& u, int nvars);
LaurentPoly parse_laurent(std::string_view text, int nvars);
std::ostream& operator<<(std::ostream& os, const LaurentPoly& p);

}  // namespace blanchfield

#endif  // BLANCHFIELD_LAURENT_HPP
