#include "doctest.h"

#include "hodgekit/bosonfermion.hpp"
#include "hodgekit/hurwitz.hpp"
#include "oracles.hpp"

using namespace hodgekit;

TEST_CASE("partitions") {
  CHECK(partitions_of(5).size() == 7);
  CHECK(partitions_of(0).size() == 1);
  CHECK(to_string(Partition{3, 1}) == "(3,1)");
  CHECK(partition_size({4, 2, 2}) == 8);
}

TEST_CASE("Schur polynomials agree with Jacobi-Trudi") {
  for (int n = 0; n <= 7; ++n)
    for (const auto& lambda : partitions_of(n)) {
      CAPTURE(to_string(lambda));
      CHECK(schur(lambda) == oracle::schur(lambda));
    }
}

TEST_CASE("boson-fermion round trip") {
  const int e = 6;
  WedgeVector v = WedgeVector::vacuum(e);
  v.add({2, 1}, Series::constant(frac(3, 2), Caps::exact()));
  v.add({4, 1, 1}, Series::constant(-2, Caps::exact()));
  v.add({6}, Series::parameter(Param::Beta, 1, Caps::exact()));
  CHECK(boson_to_fermion(fermion_to_boson(v), e) == v);
}

TEST_CASE("z-side operators match the bosonic ones on the wedge space") {
  const int e = 5;
  for (int k = -e; k <= e; ++k) CHECK(table_check(OperatorSpec::a(k), e));
  for (int m = -3; m <= 3; ++m) {
    CHECK(table_check(OperatorSpec::lambda(m), e));
    CHECK(table_check(OperatorSpec::m(m), e));
  }
  CHECK(table_check(OperatorSpec::cutjoin(), e));
}

TEST_CASE("a wrong z-form is detected") {
  // a_2 with a wrong normalization is not the wedge image of a_2
  const int e = 4;
  const ZOp good = ZOp::from_spec(OperatorSpec::a(2));
  CHECK(good == ZOp::z_power(2));
  const WedgeVector v = WedgeVector::basis({1}, e);
  const WedgeVector a = hat_apply(good, v);
  const WedgeVector b = hat_apply(Rational(2) * good, v);
  CHECK_FALSE(a == b);
}

TEST_CASE("central term of the Heisenberg algebra") {
  const int e = 5;
  for (int m = 1; m <= 4; ++m)
    for (int w = 0; w <= e - m; ++w)
      for (const auto& lambda : partitions_of(w)) {
        const WedgeVector v = WedgeVector::basis(lambda, e);
        WedgeVector c = hat_apply(ZOp::z_power(m), hat_apply(ZOp::z_power(-m), v));
        for (const auto& [mu, x] : hat_apply(ZOp::z_power(-m), hat_apply(ZOp::z_power(m), v)).coords)
          c.add(mu, -x);
        CHECK(c.coordinate(lambda) == Series::constant(-m, Caps::exact()));
        for (const auto& [mu, x] : c.coords)
          if (mu != lambda) CHECK(x.is_zero());
      }
}

TEST_CASE("z-operator commutators") {
  CHECK(commutator(ZOp::euler(), ZOp::z_power(3)) == Rational(3) * ZOp::z_power(3));
  CHECK(commutator(ZOp::z_power(2), ZOp::z_power(-1)).is_zero());
  CHECK(ZOp::eval({1, 2, 3}, 2) == 17);
}

TEST_CASE("decomposable vectors satisfy the Plucker relation") {
  const int e = 6;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const WedgeVector v = decomposable_to_coords(random_decomposable_factors(seed, 3, e), e);
    auto pi = [&](const Partition& l) { return v.coordinate(l); };
    const Series rel = pi({}) * pi({2, 2}) - pi({1}) * pi({2, 1}) + pi({2}) * pi({1, 1});
    CHECK(rel.is_zero());
  }
  CHECK_THROWS(decomposable_to_coords({LaurentZ::monomial(0, 1, 6)}, 6));
}

TEST_CASE("e^H is the decomposable vector built from phi_k") {
  const int e = 5, b = 3;
  const WedgeVector minors = decomposable_to_coords(hurwitz_wedge_factors(e, b, e), e);
  CHECK(minors == boson_to_fermion(hurwitz_tau(b, e), e));
  CHECK(fermion_to_boson(minors) == hurwitz_tau(b, e));
}
