#include "doctest.h"

#include "hodgekit/diffop.hpp"
#include "oracles.hpp"

using namespace hodgekit;

namespace {

DiffOp mult(int k) {
  DiffOp d;
  d.add(Monomial::of(p(k)), Monomial(), Series::constant(1, Caps::exact()));
  return d;
}
DiffOp deriv(int k, const Rational& c = 1) {
  DiffOp d;
  d.add(Monomial(), Monomial::of(p(k)), Series::constant(c, Caps::exact()));
  return d;
}

}  // namespace

TEST_CASE("composition agrees with sequential application") {
  const Caps c = Caps::weight(8);
  const Series f = power(Series::variable(p(1), c) + Series::variable(p(2), c), 3) + Series::variable(p(3), c);
  const DiffOp a = mult(2) + deriv(1, 3);
  const DiffOp b = deriv(2) + mult(1);
  CHECK(apply(compose(a, b), f) == apply(a, apply(b, f)));
}

TEST_CASE("Heisenberg relations") {
  for (int m = 1; m <= 6; ++m) {
    const DiffOp c = compose(mult(m), deriv(m, m)) - compose(deriv(m, m), mult(m));
    auto s = c.as_scalar();
    REQUIRE(s.has_value());
    CHECK(s->constant_term() == -m);
    auto spec = commutator(OperatorSpec::a(m), OperatorSpec::a(-m), Family::P, m);
    REQUIRE(spec.as_scalar().has_value());
    CHECK(spec.as_scalar()->constant_term() == -m);
  }
  CHECK(commutator(OperatorSpec::a(2), OperatorSpec::a(-3), Family::P, 6).is_zero());
}

TEST_CASE("cut-and-join is diagonal on Schur functions") {
  for (int n = 1; n <= 6; ++n)
    for (const auto& lambda : oracle::partitions(n)) {
      const Series s = oracle::schur(lambda);
      CHECK(apply(OperatorSpec::cutjoin(), s) == Rational(oracle::content_sum(lambda)) * s);
    }
}

TEST_CASE("Lambda_0 is the energy operator") {
  const Caps c = Caps::weight(7);
  for (const auto& mu : oracle::partitions(7)) {
    const Series s = Series::term(oracle::p_monomial(mu), 1, c);
    CHECK(apply(OperatorSpec::lambda(0), s) == Rational(7) * s);
  }
}

TEST_CASE("exp_flow of the cut-and-join on e^{p1} matches the Schur expansion") {
  const int w = 6, bcap = 4;
  const Caps c = Caps::exact().with_weight(w).with_param(Param::Beta, 0, bcap);
  const Series init = exp(Series::variable(p(1), c));
  const Series got = exp_flow(OperatorSpec::cutjoin(), Param::Beta, init, c);
  Series want(c);
  for (int n = 0; n <= w; ++n)
    for (const auto& lambda : oracle::partitions(n)) {
      const int cs = oracle::content_sum(lambda);
      const Rational weight = oracle::dimension(lambda) / Rational(factorial(static_cast<unsigned>(n)));
      Series e(c);  // e^{beta cs}
      Rational term = 1;
      for (int k = 0; k <= bcap; ++k) {
        e.add_term(Monomial::of(Param::Beta, k), term);
        term *= Rational(cs) / Rational(k + 1);
      }
      want += multiply(weight * e, oracle::schur(lambda).relabel_caps(c), c);
    }
  CHECK(got == want);
}
