#include <doctest.h>

#include "magtrans/fock.hpp"

using namespace magtrans;

namespace {

RVec rv(std::initializer_list<Rational> v) { return RVec(std::vector<Rational>(v)); }

TwoForm<Rational> omega01(const Rational& v) {
  TwoForm<Rational> w(2);
  w.set(0, 1, v);
  return w;
}

}  // namespace

TEST_CASE("sector construction and particle number") {
  const FockSector sec(ModeWindow{-2, 2, 1, 0});
  CHECK(sec.dimension() == 32);
  CHECK(sec.particle_number(sec.vacuum()) == 0);
  // vacuum occupies exactly the modes below zero
  CHECK(sec.occupied(sec.vacuum(), 0, -1));
  CHECK(sec.occupied(sec.vacuum(), 0, -2));
  CHECK_FALSE(sec.occupied(sec.vacuum(), 0, 0));

  const long one = sec.with_comp_mask(
      sec.vacuum(), 0, sec.comp_mask(sec.vacuum(), 0) | (1 << sec.bit_of(0)));
  CHECK(sec.particle_number(one) == 1);
  const long hole = sec.with_comp_mask(
      sec.vacuum(), 0, sec.comp_mask(sec.vacuum(), 0) & ~(1 << sec.bit_of(-1)));
  CHECK(sec.particle_number(hole) == -1);

  CHECK_THROWS_AS(FockSector(ModeWindow{-4, 4, 3, 0}), std::invalid_argument);
  CHECK_THROWS_AS(FockSector(ModeWindow{0, 2, 1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(FockSector(ModeWindow{-2, 2, 1, 3}), std::invalid_argument);
}

TEST_CASE("ladder operators on the vacuum") {
  const FockSector sec(ModeWindow{-2, 2, 1, 0});
  const long vac = sec.vacuum();
  // filled sea modes reject creators, empty modes reject annihilators
  CHECK(creation(sec, -1, 0).column(vac).empty());
  CHECK(annihilation(sec, 0, 0).column(vac).empty());
  // a creator above the sea adds one particle with a plus sign
  const auto c0 = creation(sec, 0, 0);
  REQUIRE(c0.column(vac).size() == 1);
  const auto& [row, val] = *c0.column(vac).begin();
  CHECK(sec.particle_number(row) == 1);
  CHECK(val == std::complex<double>(1.0, 0.0));
  CHECK_THROWS_AS(creation(sec, 3, 0), std::out_of_range);
  CHECK_THROWS_AS(annihilation(sec, 0, 1), std::out_of_range);
}

TEST_CASE("creators anticommute through the monomial order") {
  const FockSector sec(ModeWindow{-2, 2, 1, 0});
  const auto c0 = creation(sec, 0, 0);
  const auto c2 = creation(sec, 2, 0);
  const auto Z = SparseFockOperator::zero(sec.dimension());
  CHECK((c0 * c2 + c2 * c0).max_deviation(Z) == 0.0);
  // explicit sign: applying c0 under an occupied higher mode flips
  const long vac = sec.vacuum();
  const long top = c2.column(vac).begin()->first;
  CHECK(c0.column(top).begin()->second == std::complex<double>(-1.0, 0.0));
}

TEST_CASE("canonical anticommutation relations") {
  const FockSector sec1(ModeWindow{-3, 3, 1, 0});
  std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> pairs;
  for (int m = -3; m <= 3; ++m)
    for (int k = -3; k <= 3; ++k) pairs.push_back({{m, 0}, {k, 0}});
  const auto rep = car_check(sec1, pairs);
  CHECK(rep.passed);
  CHECK(rep.max_deviation == 0.0);
  CHECK(rep.pairs_checked == 49);

  // two components: mixed pairs commute instead
  const FockSector sec2(ModeWindow{-3, 3, 2, 0});
  const auto rep2 = car_check(sec2, {{{0, 0}, {0, 1}}, {{-1, 0}, {2, 1}},
                                     {{1, 1}, {1, 1}}});
  CHECK(rep2.passed);
}

TEST_CASE("shift operators") {
  const FockSector sec(ModeWindow{-3, 3, 1, 2});
  const long dim = sec.dimension();
  const auto I = SparseFockOperator::identity(dim);
  CHECK(shift_operator({0}, sec).max_deviation(I) == 0.0);

  const auto g1 = shift_operator({1}, sec);
  const auto& col = g1.column(sec.vacuum());
  REQUIRE(col.size() == 1);
  CHECK(sec.particle_number(col.begin()->first) == 1);
  CHECK(col.begin()->second == std::complex<double>(1.0, 0.0));

  // inverse shift returns on the common validity domain
  const auto round = shift_operator({-1}, sec) * g1;
  CHECK(round.common_domain_size(I) > 0);
  CHECK(round.max_deviation(I) == 0.0);

  CHECK_THROWS_AS(shift_operator({3}, sec), std::invalid_argument);
  CHECK_THROWS_AS(shift_operator({1, 1}, sec), std::invalid_argument);
}

TEST_CASE("shift conjugation relabels the ladder modes") {
  const FockSector sec(ModeWindow{-3, 3, 1, 2});
  for (long p : {-2L, -1L, 1L, 2L}) {
    const auto g = shift_operator({p}, sec);
    for (int k = -1; k <= 1; ++k) {
      if (k + p < -3 || k + p > 3) continue;
      const auto lhs = g * creation(sec, k, 0);
      const auto rhs = creation(sec, static_cast<int>(k + p), 0) * g;
      CHECK(lhs.common_domain_size(rhs) > 0);
      CHECK(lhs.max_deviation(rhs) == 0.0);
    }
  }
}

TEST_CASE("untwisted shifts compose additively") {
  const FockSector sec(ModeWindow{-4, 4, 1, 3});
  for (long p : {-1L, 1L, 2L})
    for (long q : {-2L, -1L, 1L}) {
      const auto lhs = shift_operator({p}, sec) * shift_operator({q}, sec);
      const auto rhs = shift_operator({p + q}, sec);
      CHECK(lhs.common_domain_size(rhs) > 0);
      CHECK(lhs.max_deviation(rhs) == 0.0);
    }
}

TEST_CASE("section exponent and twisted equivariance") {
  const auto w = omega01(Rational(1, 2));
  // trivial on the fundamental domain
  CHECK(section_exponent(w, rv({Rational(1, 4), Rational(3, 4)})) == Rational(0));
  // x = x0 + z0 picks up omega(x0, z0)
  CHECK(section_exponent(w, rv({Rational(1, 4), 2})) == Rational(1, 4));

  const TwistedPoint in_cell{rv({Rational(1, 4), 0}), w};
  CHECK(twisted_equivariance_check(in_cell, rv({0, 1})).is_trivial());
  // a lattice offset in x leaves the residual -omega(z0, z)
  const TwistedPoint offset{rv({Rational(5, 4), 0}), w};
  CHECK(twisted_equivariance_check(offset, rv({0, 1})) == RPhase(Rational(1, 2)));
  // integer two-forms never see it
  const TwistedPoint integral{rv({Rational(5, 4), 0}), omega01(Rational(3))};
  CHECK(twisted_equivariance_check(integral, rv({0, 1})).is_trivial());
  CHECK_THROWS_AS(twisted_equivariance_check(in_cell, rv({Rational(1, 2), 0})),
                  std::invalid_argument);
}

TEST_CASE("twisted creators carry the section phase") {
  const FockSector sec(ModeWindow{-2, 2, 2, 0});
  const TwistedPoint tp{rv({Rational(1, 2), 1}), omega01(Rational(1, 2))};
  // section exponent 1/4 multiplies the plain creator by i
  const auto tw = twisted_creation(sec, 0, 0, tp);
  const auto plain = creation(sec, 0, 0).scaled({0.0, 1.0});
  CHECK(tw.max_deviation(plain) <= 1e-15);
}

TEST_CASE("phased shifts compose with the two-form cocycle") {
  const ModeWindow w{-6, 6, 2, 4};
  const TwistedPoint tp{rv({Rational(1, 4), 0}), omega01(Rational(1))};
  const auto rep = compose_check({0, 1}, {1, 0}, tp, w);
  CHECK(rep.passed);
  CHECK(rep.expected == RPhase(Rational(1, 4)));
  CHECK(rep.measured == rep.expected);
  CHECK(rep.states_checked > 0);

  // zero two-form: plain additivity, no phase
  const TwistedPoint flat{rv({Rational(1, 4), 0}), TwoForm<Rational>(2)};
  const auto rep0 = compose_check({2, -1}, {-1, 2}, flat, w);
  CHECK(rep0.passed);
  CHECK(rep0.measured.is_trivial());

  // inactive components contribute nothing
  const auto repi = compose_check({0, 0}, {0, 0}, tp, w);
  CHECK(repi.passed);
  CHECK(repi.measured.is_trivial());

  CHECK_THROWS_AS(compose_check({3, 0}, {2, 0}, tp, w), std::invalid_argument);
}

TEST_CASE("composition phases associate") {
  const ModeWindow w{-6, 6, 2, 5};
  const TwistedPoint tp{rv({Rational(1, 3), Rational(1, 5)}),
                        omega01(Rational(1, 2))};
  // at a fixed base point the measured phases are bilinear in the shifts, so
  // both bracketings carry the same total phase
  const std::vector<long> p{1, 0}, q{0, 1}, r{1, 1};
  auto phase_of_pair = [&](const std::vector<long>& a, const std::vector<long>& b) {
    const auto rep = compose_check(a, b, tp, w);
    REQUIRE(rep.passed);
    return rep.measured;
  };
  std::vector<long> pq{p[0] + q[0], p[1] + q[1]}, qr{q[0] + r[0], q[1] + r[1]};
  const auto lhs = phase_of_pair(p, q) * phase_of_pair(pq, r);
  const auto rhs = phase_of_pair(q, r) * phase_of_pair(p, qr);
  CHECK(lhs == rhs);
}
