#include "doctest.h"
#include "support.hpp"

using namespace blanchfield;
using testing_support::F;
using testing_support::int_matrix;
using testing_support::P;

namespace {

const IntMatrix kTrefoil = int_matrix({{-1, 1}, {0, -1}});
const IntMatrix kFigureEight = int_matrix({{1, 1}, {0, -1}});

RfMatrix rf(std::initializer_list<std::initializer_list<const char*>> rows, int nv = 1) {
  RfMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (const char* x : row) m(i, j++) = F(x, nv);
    ++i;
  }
  return m;
}

SeifertFamily knot_family(const IntMatrix& a) {
  SeifertFamily f;
  f.mu = 1;
  f.n = a.rows();
  f.mats[SignVec::parse("-", 1)] = a;
  f.mats[SignVec::parse("+", 1)] = a.transpose();
  return f;
}

}  // namespace

TEST_CASE("sign keys") {
  CHECK(SignVec::parse("-+", 2).signs == std::vector<int>{-1, 1});
  CHECK(SignVec::parse("\xE2\x88\x92+", 2).signs == std::vector<int>{-1, 1});
  CHECK(SignVec::parse("+-", 2).key() == "+-");
  CHECK_THROWS_AS(SignVec::parse("+", 2), ValidationError);
  CHECK_THROWS_AS(SignVec::parse("+x", 2), ValidationError);
  CHECK(SignVec::all(2).size() == 4);
  CHECK(SignVec::all(2).front().key() == "--");
}

TEST_CASE("assemble examples") {
  SeifertFamily zero;
  zero.mu = 2;
  zero.n = 2;
  for (const auto& s : SignVec::all(2)) zero.mats[s] = IntMatrix::Zero(2, 2);
  CHECK(assemble(zero).matrix() == RfMatrix::Constant(2, 2, RatFunc(LaurentPoly(mpz_class(0), 2))));

  const RfMatrix trefoil = rf({{"-(2 - t - t^-1)", "1 - t^-1"}, {"1 - t", "-(2 - t - t^-1)"}});
  CHECK(assemble(knot_family(kTrefoil)).matrix() == trefoil);
  CHECK(knot_c_matrix(kTrefoil).matrix() == trefoil);

  SeifertFamily ones;
  ones.mu = 2;
  ones.n = 1;
  for (const auto& s : SignVec::all(2)) ones.mats[s] = int_matrix({{1}});
  CHECK(assemble(ones).matrix()(0, 0) == F("(2 - t1 - t1^-1)*(2 - t2 - t2^-1)", 2));

  CHECK(knot_c_matrix(int_matrix({{0}})).matrix()(0, 0) == RatFunc(0));
  const RfMatrix h8 = knot_c_matrix(kFigureEight).matrix();
  CHECK(strip_units(determinant_q(h8).num()).core == P("t^2 - 3*t + 1"));
}

TEST_CASE("family validation") {
  SeifertFamily f;
  f.mu = 2;
  f.n = 1;
  for (const auto& s : SignVec::all(2))
    if (s.key() != "++") f.mats[s] = int_matrix({{1}});
  CHECK_THROWS_WITH_AS(f.validate(), doctest::Contains("\"++\""), ValidationError);
  f.mats[SignVec::parse("++", 2)] = int_matrix({{1, 0}});
  CHECK_THROWS_AS(f.validate(), ValidationError);

  // A^- = trefoil, A^+ = identity: the sum is not hermitian.
  SeifertFamily broken = knot_family(kTrefoil);
  broken.mats[SignVec::parse("+", 1)] = int_matrix({{1, 0}, {0, 1}});
  try {
    assemble(broken);
    FAIL("expected NotHermitian");
  } catch (const NotHermitian& e) {
    CHECK(e.row() == 0);
    CHECK(e.col() == 0);
  }
}

TEST_CASE("assembled matrices are hermitian with Λ_S entries") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = testing_support::random_family(rng, 1 + trial % 2, 1 + trial % 4);
    const CMatrix h = assemble(f);
    CHECK(is_hermitian(h.matrix()));
    CHECK(all_in_lambda_s(h.matrix()));
  }
}

TEST_CASE("tau examples") {
  CHECK(tau({1}) == rf({{"t", "0"}, {"0", "t"}}));
  CHECK(tau({0, 1}) == rf({{"t2", "0"}, {"0", "t2"}}, 2));
  CHECK(tau({1, 1}) ==
        rf({{"t1", "0", "0", "0"}, {"0", "t1", "0", "0"}, {"0", "0", "t2", "0"}, {"0", "0", "0", "t2"}}, 2));
}

TEST_CASE("boundary matrices") {
  SUBCASE("one component reduces to the knot matrix") {
    CHECK(boundary_matrix({{1}, kTrefoil}).matrix() == knot_c_matrix(kTrefoil).matrix());
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
      const IntMatrix a = testing_support::random_int_matrix(rng, 2 * (1 + trial % 2), 2 * (1 + trial % 2));
      CHECK(boundary_matrix({{1 + trial % 2}, a}).matrix() == knot_c_matrix(a).matrix());
    }
  }
  SUBCASE("split link gives the diagonal of scaled knot matrices") {
    IntMatrix a = IntMatrix::Zero(4, 4);
    a.topLeftCorner(2, 2) = kTrefoil;
    a.bottomRightCorner(2, 2) = kTrefoil;
    const RfMatrix h = boundary_matrix({{1, 1}, a}).matrix();
    // Hand expansion: block i is u conj(u) / (1 - t_i) (A - t_i A^T).
    const RatFunc uu = F("(1 - t1)*(1 - t1^-1)*(1 - t2)*(1 - t2^-1)", 2);
    for (int i = 0; i < 2; ++i) {
      const char* names[] = {"t1", "t2"};
      const RatFunc ti = F(names[i], 2);
      const RatFunc lead = uu / (RatFunc(1) - ti);
      const Eigen::Index o = 2 * i;
      CHECK(h(o, o) == lead * (RatFunc(-1) + ti));
      CHECK(h(o, o + 1) == lead * RatFunc(1));
      CHECK(h(o + 1, o) == lead * -ti);
      CHECK(h(o + 1, o + 1) == lead * (RatFunc(-1) + ti));
    }
    CHECK(h.topRightCorner(2, 2) == RfMatrix::Constant(2, 2, RatFunc(LaurentPoly(mpz_class(0), 2))));
  }
  SUBCASE("block symmetry is enforced") {
    IntMatrix a = IntMatrix::Zero(4, 4);
    a(0, 2) = 1;
    CHECK_THROWS_AS(boundary_matrix({{1, 1}, a}), ValidationError);
    a(2, 0) = 1;
    CHECK_NOTHROW(boundary_matrix({{1, 1}, a}));
    CHECK_THROWS_AS(boundary_matrix({{1, 1}, IntMatrix::Zero(2, 2)}), ValidationError);
  }
  SUBCASE("random boundary matrices are hermitian over Λ_S") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 20; ++trial) {
      const auto b = testing_support::random_boundary(rng, 1 + trial % 2, 2);
      const CMatrix h = boundary_matrix(b);
      CHECK(all_in_lambda_s(h.matrix()));
      CHECK(is_hermitian(h.matrix()));
    }
  }
}

TEST_CASE("boundary closed-form pairing") {
  const BoundarySeifert trefoil{{1}, kTrefoil};
  RfVector e1(2);
  e1 << RatFunc(1), RatFunc(0);
  CHECK(boundary_pairing_value(trefoil, RfVector::Constant(2, RatFunc(0)), e1) == QmodLS{RatFunc(0)});
  // (A - t A^T)^{-1}(0,0) = (t - 1)/(t^2 - t + 1), times (t - 1).
  const QmodLS v = boundary_pairing_value(trefoil, e1, e1);
  CHECK(v == QmodLS{F("(t - 1)^2 / (t^2 - t + 1)")});
  CHECK(divide_exact(P("t^2 - t + 1"), strip_units(qls_canonical(v).den()).core).has_value());

  std::mt19937_64 rng(11);
  int checked = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto b = testing_support::random_boundary(rng, 1 + trial % 2, 2);
    const int nv = b.components();
    const RfVector a = testing_support::random_lambda_vector(rng, b.size(), nv);
    const RfVector c = testing_support::random_lambda_vector(rng, b.size(), nv);
    try {
      CHECK(boundary_pairing_value(b, a, c) == qls_conj(boundary_pairing_value(b, c, a)));
      ++checked;
    } catch (const SingularMatrix&) {
    }
  }
  CHECK(checked > 10);

  IntMatrix sym = IntMatrix::Zero(2, 2);
  sym(0, 1) = sym(1, 0) = 1;
  sym(0, 0) = 1;
  // A symmetric makes A - t A^T = (1 - t) A, invertible; A = 0 is singular.
  CHECK_NOTHROW(boundary_pairing_value({{1}, sym}, e1, e1));
  CHECK_THROWS_AS(boundary_pairing_value({{1}, IntMatrix::Zero(2, 2)}, e1, e1), SingularMatrix);
}
