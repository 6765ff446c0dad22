#include "doctest.h"

#include "hodgekit/elsv.hpp"
#include "oracles.hpp"

using namespace hodgekit;

namespace {

const CorrelatorTable& table() {
  static const CorrelatorTable t =
      elsv_solve_many({{0, 3}, {0, 4}, {0, 5}, {1, 1}, {1, 2}, {1, 3}, {2, 1}, {2, 2}});
  return t;
}

Rational get(int g, int j, std::vector<int> ks) {
  std::sort(ks.begin(), ks.end());
  return table().at(CorrelatorKey{j, ks, g});
}

Monomial rmono(std::initializer_list<std::pair<int, int>> vs, int vpow = 0) {
  Monomial m;
  for (auto [i, e] : vs) m = m * Monomial::of(r(i), e);
  return m.with_param(Param::V, vpow);
}

}  // namespace

TEST_CASE("basic intersection numbers") {
  CHECK(get(0, 0, {0, 0, 0}) == 1);
  CHECK(get(1, 0, {1}) == frac(1, 24));
  CHECK(get(2, 0, {4}) == frac(1, 1152));
  CHECK(get(0, 0, {0, 0, 0, 1}) == 1);
  CHECK(get(1, 1, {0}) == frac(1, 24));
}

TEST_CASE("tau_{3g-2} and lambda_g tau_{2g-2}") {
  for (int g = 1; g <= 2; ++g) {
    const Rational want = 1 / (pow(Rational(24), static_cast<unsigned>(g)) * Rational(factorial(static_cast<unsigned>(g))));
    CHECK(get(g, 0, {3 * g - 2}) == want);
    const Rational two = pow(Rational(2), static_cast<unsigned>(2 * g - 1));
    Rational b = bernoulli(static_cast<unsigned>(2 * g));
    if (b < 0) b = -b;
    const Rational lg = (two - 1) * b / (two * Rational(factorial(static_cast<unsigned>(2 * g))));
    CHECK(get(g, g, {2 * g - 2}) == lg);
  }
}

TEST_CASE("string and dilaton equations hold on the whole table") {
  int checked = 0;
  for (const auto& [key, val] : table()) {
    if (key.ks.empty() || key.ks.front() > 1) continue;
    std::vector<int> rest(key.ks.begin() + 1, key.ks.end());
    const int g = key.genus, n = key.n() - 1;
    if (2 * g - 2 + n <= 0) continue;
    if (key.ks.front() == 1) {
      CHECK(val == Rational(2 * g - 2 + n) * get(g, key.j, rest));
    } else {
      Rational sum = 0;
      for (std::size_t i = 0; i < rest.size(); ++i) {
        if (rest[i] == 0) continue;
        auto lower = rest;
        --lower[i];
        sum += get(g, key.j, lower);
      }
      CHECK(val == sum);
    }
    ++checked;
  }
  CHECK(checked > 10);
}

TEST_CASE("linear forms T_k") {
  const Series t1 = t_linear(1);
  const Caps c = t1.caps();
  Series want(c);
  want.add_term(Monomial::of(q(1)).with_param(Param::U, 2), 1);
  want.add_term(Monomial::of(q(2)).with_param(Param::U, 1), 2);
  want.add_term(Monomial::of(q(3)), 1);
  CHECK(t1 == want);
  for (int k = 0; k <= 8; ++k) {
    const Series tk = t_linear(k);
    CHECK(tk.coefficient(Monomial::of(q(2 * k + 1))) == Rational(double_factorial_odd(k)));
  }
}

TEST_CASE("shifted forms match their printed low-order expansions") {
  auto check = [](int k, std::initializer_list<std::tuple<int, int, int>> terms) {
    Series want(t_tilde(k).caps());
    for (auto [i, vp, c] : terms) want.add_term(rmono({{i, 1}}, vp), c);
    CHECK(t_tilde(k) == want);
  };
  check(0, {{1, 0, 1}});
  check(1, {{2, 0, -1}, {3, 1, 1}});
  check(2, {{3, 0, 2}, {4, 1, -5}, {5, 2, 3}});
  check(3, {{4, 0, -6}, {5, 1, 26}, {6, 2, -35}, {7, 3, 15}});
  for (int k = 0; k <= 6; ++k)
    CHECK(t_tilde(k).coefficient(rmono({{k + 1, 1}})) ==
          Rational((k % 2 ? -1 : 1) * factorial(static_cast<unsigned>(k))));
}

TEST_CASE("x(z) matches its closed form") {
  const int n = 8, b = 6;
  const Caps pc = Caps::exact().with_param(Param::Beta, 0, b);
  const Series beta = Series::parameter(Param::Beta, 1, pc);
  const LaurentZ bz = LaurentZ::monomial(1, beta, n, pc);
  const LaurentZ s = bz * inverse(LaurentZ::monomial(0, 1, n, pc) + bz);  // beta z/(1+beta z)
  const LaurentZ want = LaurentZ::z(n, pc) * inverse(LaurentZ::monomial(0, 1, n, pc) + bz) * exp(-s);
  CHECK(elsv_x_of_z(n, b) == want.truncated(n));
}

TEST_CASE("change of variables keeps the leading diagonal") {
  const ChangeOfVariables c = change_from_xz(elsv_x_of_z(6, 6), 6);
  for (int b = 1; b <= 6; ++b) {
    CHECK(c.entry(b, b).constant_term() == 1);
    for (int k = 1; k < b; ++k) CHECK(c.entry(b, k).is_zero());
  }
}

TEST_CASE("G equals the pre-Hodge assembly") {
  const Series g = build_G(6, 6);
  const Series a = assemble_preHodge(elsv_solve_many(types_for_caps(6, 6)), g.caps());
  CHECK(g == a);
  CHECK_FALSE(g.is_zero());
  for (const auto& [m, c] : g.terms()) CHECK(m.param(Param::U) >= 0);
}

TEST_CASE("missing table entries are reported") {
  CorrelatorTable partial = elsv_solve(0, 3);
  CHECK_THROWS(assemble_type(partial, 1, 1));
}
