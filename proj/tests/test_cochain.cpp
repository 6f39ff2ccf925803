#include <doctest.h>

#include "magtrans/cochain.hpp"

using namespace magtrans;

namespace {

RVec rv(std::initializer_list<Rational> v) { return RVec(std::vector<Rational>(v)); }
const Rational H(1, 2);
const Rational Q(1, 4);

}  // namespace

TEST_CASE("magnetic 3-cocycle values") {
  const auto c = magnetic_3cocycle(AntisymTensor3<Rational>::epsilon());
  CHECK(c({rv({H, 0, 0}), rv({0, H, 0}), rv({0, 0, H})}) == RPhase(Rational(1, 8)));
  CHECK(c({rv({1, 2, 3}), rv({-1, 0, 4}), rv({2, 2, 2})}).is_trivial());
  const auto z = magnetic_3cocycle(AntisymTensor3<Rational>::zero(3));
  CHECK(z({rv({H, Q, 1}), rv({0, H, 0}), rv({1, 0, H})}).is_trivial());
}

TEST_CASE("groupoid potential trivializes the 3-cocycle") {
  const auto a = AntisymTensor3<Rational>::epsilon();
  const auto c = magnetic_3cocycle(a);
  const auto db = group_coboundary(groupoid_potential(a));
  const std::vector<RVec> args{rv({H, 0, 0}), rv({0, H, 0}), rv({0, 0, H})};
  CHECK(db(RVec::zero(3), args) == RPhase(Rational(1, 8)));
  CHECK(db(RVec::zero(3), args) == c(args));
  RationalSampler s(11);
  for (int i = 0; i < 100; ++i) {
    const RVec u(s.rational_vector(3));
    const std::vector<RVec> v{RVec(s.rational_vector(3)), RVec(s.rational_vector(3)),
                              RVec(s.rational_vector(3))};
    CHECK(db(u, v) == c(v));
  }
}

TEST_CASE("coboundary of a constant 0-cochain is trivial") {
  const GroupCochain<Rational> f(
      0, 2, CoeffMode::Constant,
      [](const RVec&, const std::vector<RVec>&) { return RPhase(Rational(1, 3)); });
  const auto df = group_coboundary(f);
  RationalSampler s(5);
  for (int i = 0; i < 20; ++i)
    CHECK(df({RVec(s.rational_vector(2))}).is_trivial());
}

TEST_CASE("delta of delta vanishes") {
  const auto a = AntisymTensor3<Rational>::epsilon();
  const auto ddb = group_coboundary(group_coboundary(groupoid_potential(a)));
  RationalSampler s(3);
  for (int i = 0; i < 100; ++i) {
    const RVec u(s.rational_vector(3));
    std::vector<RVec> v;
    for (int j = 0; j < 4; ++j) v.emplace_back(s.rational_vector(3));
    CHECK(ddb(u, v).is_trivial());
  }
}

TEST_CASE("verify_cocycle passes the 3-cocycle and flags corruption") {
  const auto c = magnetic_3cocycle(AntisymTensor3<Rational>::epsilon());
  const auto good = verify_cocycle(c, 500, 1);
  CHECK(good.passed);
  CHECK(good.worst_deviation == 0.0);

  const GroupCochain<Rational> bad(
      3, 3, CoeffMode::Constant,
      [a = AntisymTensor3<Rational>::epsilon()](const RVec&,
                                                const std::vector<RVec>& v) {
        return phase_of(triple_eval(a, v[0], v[1], v[2]) +
                        v[0][0] * v[0][0] * v[1][0]);
      });
  const auto flagged = verify_cocycle(bad, 50, 1);
  CHECK_FALSE(flagged.passed);
  CHECK(flagged.worst_deviation > 0.0);
}

TEST_CASE("shift 2-cocycle") {
  const auto w = TwoForm<Rational>::from_entries(2, {{0, 1, Rational(1)}});
  const auto C = shift_2cocycle(w);
  CHECK(C(rv({Q, 0}), {rv({0, 1}), rv({1, 0})}) == RPhase(Q));
  CHECK(C(rv({Q, 0}), {rv({0, 1}), RVec::zero(2)}).is_trivial());   // N = 0
  CHECK(C(rv({Q, 0}), {rv({1, 0}), rv({1, 1})}).is_trivial());      // p parallel x
  CHECK_THROWS(C(rv({Q, 0}), {rv({H, 0}), rv({1, 0})}));            // non-lattice p
  const auto rep = verify_cocycle(C, 300, 2);
  CHECK(rep.passed);
}

TEST_CASE("trilinear 2-cocycle and its section-3 alias") {
  const auto eps = AntisymTensor3<Rational>::epsilon();
  const auto C = dd_2cocycle(eps);
  CHECK(C(rv({Q, 0, 0}), {RVec::basis(3, 1), RVec::basis(3, 2)}) == RPhase(Q));
  CHECK(C(rv({Q, 0, 0}), {RVec::basis(3, 1), RVec::basis(3, 1)}).is_trivial());
  CHECK(C(rv({1, 2, 3}), {rv({0, 1, 0}), rv({0, 0, 2})}).is_trivial());
  CHECK(luscher_2cocycle_form(eps, rv({0, 0, Q}), RVec::basis(3, 0),
                              RVec::basis(3, 1)) == RPhase(Q));
  CHECK(luscher_2cocycle_form(eps, RVec::zero(3), RVec::basis(3, 0),
                              RVec::basis(3, 1)).is_trivial());
  CHECK_THROWS(luscher_2cocycle_form(eps, rv({Q, 0, 0}), rv({H, 0, 0}),
                                     RVec::basis(3, 1)));
  CHECK(verify_cocycle(C, 200, 4).passed);
}

TEST_CASE("exponent polynomials match the evaluators") {
  const auto w = TwoForm<Rational>::from_entries(2, {{0, 1, Rational(3)}});
  const auto C = shift_2cocycle(w);
  REQUIRE(C.exponent_poly() != nullptr);
  RationalSampler s(9);
  for (int i = 0; i < 50; ++i) {
    const auto x = s.rational_vector(2);
    const auto p = s.lattice_vector(2);
    const auto q = s.lattice_vector(2);
    std::vector<Rational> all(x);
    all.insert(all.end(), p.begin(), p.end());
    all.insert(all.end(), q.begin(), q.end());
    CHECK(phase_of(C.exponent_poly()->eval(all)) == C(RVec(x), {RVec(p), RVec(q)}));
  }
}
