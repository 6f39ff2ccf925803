#include <doctest.h>

#include "magtrans/phase.hpp"
#include "magtrans/tensors.hpp"

using namespace magtrans;

TEST_CASE("phase exponents live on the circle") {
  CHECK(RPhase(Rational(9, 8)) == RPhase(Rational(1, 8)));
  CHECK(RPhase(Rational(-1, 4)) == RPhase(Rational(3, 4)));
  CHECK(RPhase(Rational(5)).is_trivial());
  CHECK(RPhase(Rational(1, 2)).pow(2).is_trivial());
  CHECK((RPhase(Rational(1, 3)) * RPhase(Rational(2, 3))).is_trivial());
  CHECK(RPhase(Rational(1, 3)).inverse() == RPhase(Rational(2, 3)));
}

TEST_CASE("circle distance is the shorter arc") {
  CHECK(RPhase::circle_distance(RPhase(Rational(1, 10)), RPhase(Rational(9, 10))) ==
        Rational(1, 5));
  CHECK(DPhase(0.999999999) == DPhase(0.0));
  CHECK(DPhase(0.4999) != DPhase(0.5001));
}

TEST_CASE("group vectors") {
  const RVec x({Rational(1), Rational(-2), Rational(3)});
  CHECK(x.is_lattice());
  CHECK_FALSE(RVec({Rational(1, 2)}).is_lattice());
  CHECK((x + (-x)) == RVec::zero(3));
  CHECK(RVec::basis(3, 1)[1] == Rational(1));
  CHECK_THROWS_AS(x + RVec::zero(2), DimensionMismatch);
}

TEST_CASE("triple_eval sums all ordered triples") {
  const auto eps = AntisymTensor3<Rational>::epsilon();
  const RVec x({Rational(1), Rational(2), Rational(0)});
  const RVec y({Rational(0), Rational(1), Rational(1)});
  const RVec z({Rational(2), Rational(0), Rational(1)});
  CHECK(triple_eval(eps, x, y, z) == Rational(5));  // det of the column matrix
  CHECK(triple_eval(eps, x, x, z) == Rational(0));
  CHECK(triple_eval(AntisymTensor3<Rational>::zero(3), x, y, z) == Rational(0));
  CHECK_THROWS_AS(triple_eval(eps, RVec::zero(2), y, z), DimensionMismatch);
}

TEST_CASE("antisymmetrization of raw entries") {
  // a single raw entry spreads over six slots with alternating signs
  const auto a = AntisymTensor3<Rational>::from_entries(
      3, {{0, 1, 2, Rational(6)}});
  CHECK(a(0, 1, 2) == Rational(1));
  CHECK(a(1, 0, 2) == Rational(-1));
  CHECK(a(2, 0, 1) == Rational(1));
  CHECK(a(0, 0, 2) == Rational(0));
  // fully symmetric input antisymmetrizes to zero
  const auto b = AntisymTensor3<Rational>::from_entries(
      3, {{0, 1, 2, Rational(1)}, {1, 0, 2, Rational(1)},
          {0, 2, 1, Rational(1)}, {2, 1, 0, Rational(1)},
          {1, 2, 0, Rational(1)}, {2, 0, 1, Rational(1)}});
  CHECK(b.is_zero());
  // feeding each signed permutation of one value reconstructs it exactly
  const auto c = AntisymTensor3<Rational>::from_entries(
      3, {{0, 1, 2, Rational(7)}, {1, 0, 2, Rational(-7)},
          {0, 2, 1, Rational(-7)}, {2, 1, 0, Rational(-7)},
          {1, 2, 0, Rational(7)}, {2, 0, 1, Rational(7)}});
  CHECK(c(0, 1, 2) == Rational(7));
}

TEST_CASE("two-form evaluation") {
  auto w = TwoForm<Rational>::from_entries(2, {{0, 1, Rational(1)}});
  CHECK(two_form_eval(w, RVec({Rational(2), Rational(3)}),
                      RVec({Rational(1), Rational(4)})) == Rational(5));
  CHECK(two_form_eval(w, RVec({Rational(2), Rational(3)}),
                      RVec({Rational(2), Rational(3)})) == Rational(0));
  CHECK(w(1, 0) == Rational(-1));
  CHECK_THROWS(w.set(0, 0, Rational(1)));
}

TEST_CASE("rational floor and mod1") {
  CHECK(scalar_traits<Rational>::floor(Rational(-1, 2)) == BigInt(-1));
  CHECK(scalar_traits<Rational>::mod1(Rational(-1, 4)) == Rational(3, 4));
  CHECK(scalar_traits<double>::mod1(-0.25) == doctest::Approx(0.75));
}
