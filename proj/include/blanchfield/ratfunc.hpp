#ifndef BLANCHFIELD_RATFUNC_HPP
#define BLANCHFIELD_RATFUNC_HPP

#include <string>
#include <string_view>

#include <Eigen/Core>

#include "blanchfield/laurent.hpp"

namespace blanchfield {

/// Element of Q = Q(t_1, ..., t_mu), stored as a reduced fraction.
///
/// The denominator is kept as prod (1 - t_i)^{k_i} * core with the core in
/// strip_units normal form; signs and monomials live in the numerator. With
/// that convention equal field elements have identical (num, den) pairs.
/// Elements of Λ_S are exactly the values whose denominator core is 1.
class RatFunc {
public:
  RatFunc() : den_(1) {}
  RatFunc(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(LaurentPoly p) : num_(std::move(p)), den_(LaurentPoly(mpz_class(1), num_.nvars())) {}  // NOLINT
  RatFunc(const LaurentPoly& num, const LaurentPoly& den);

  static RatFunc from_unit(const LSUnit& u, int nvars);

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  int nvars() const { return std::max(num_.nvars(), den_.nvars()); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  /// Total term count of numerator and denominator; used for pivot choice.
  std::size_t complexity() const { return num_.size() + den_.size(); }
  /// The denominator with its (1 - t_i) factors removed.
  LaurentPoly den_core() const;

  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);

  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  friend RatFunc operator-(RatFunc a) {
    a.num_ = -a.num_;
    return a;
  }
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  RatFunc inverse() const;
  RatFunc with_nvars(int nvars) const;
  RatFunc reindexed(const std::vector<int>& target, int nvars) const;

private:
  struct Raw {};
  RatFunc(Raw, LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {}

  LaurentPoly num_;
  LaurentPoly den_;
};

RatFunc conj(const RatFunc& f);

/// Whether f lies in Λ_S (its reduced denominator is a Λ_S-unit).
bool in_lambda_s(const RatFunc& f);

/// A class in Q/Λ_S; equality is membership of the difference in Λ_S.
struct QmodLS {
  RatFunc rep;

  friend bool operator==(const QmodLS& a, const QmodLS& b);
  friend bool operator!=(const QmodLS& a, const QmodLS& b) { return !(a == b); }
  friend QmodLS operator+(const QmodLS& a, const QmodLS& b) { return {a.rep + b.rep}; }
  friend QmodLS operator-(const QmodLS& a) { return {-a.rep}; }
};

bool qls_equal(const QmodLS& a, const QmodLS& b);
QmodLS qls_conj(const QmodLS& a);
/// Deterministic display representative of the class (zero classes give 0).
RatFunc qls_canonical(const QmodLS& a);

std::string to_string(const RatFunc& f);
std::string to_string(const RatFunc& f, int nvars);
/// "[expr] mod Λ_S" using the canonical representative.
std::string to_string(const QmodLS& c, int nvars);
/// Accepts "p" or "p / q" in polynomial text form.
RatFunc parse_ratfunc(std::string_view text, int nvars);
std::ostream& operator<<(std::ostream& os, const RatFunc& f);

}  // namespace blanchfield

namespace Eigen {

template <>
struct NumTraits<blanchfield::RatFunc> : GenericNumTraits<blanchfield::RatFunc> {
  using Real = blanchfield::RatFunc;
  using NonInteger = blanchfield::RatFunc;
  using Literal = blanchfield::RatFunc;
  using Nested = blanchfield::RatFunc;

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 50,
    MulCost = 200
  };

  static inline int digits10() { return 0; }
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
};

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
  using Real = mpz_class;
  using NonInteger = mpz_class;
  using Literal = mpz_class;
  using Nested = mpz_class;

  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 8
  };

  static inline int digits10() { return 0; }
};

}  // namespace Eigen

#endif  // BLANCHFIELD_RATFUNC_HPP
