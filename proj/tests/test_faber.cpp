#include "doctest.h"

#include "hodgekit/faber.hpp"

using namespace hodgekit;

namespace {

const CorrelatorTable& table() {
  static const CorrelatorTable t = [] {
    std::vector<std::pair<int, int>> types = types_up_to_euler(5);
    for (int n = 1; n <= 3; ++n) types.push_back({3, n});
    std::sort(types.begin(), types.end());
    types.erase(std::unique(types.begin(), types.end()), types.end());
    return elsv_solve_many(types);
  }();
  return t;
}

Monomial tmono(std::initializer_list<std::pair<int, int>> powers, int u = 0) {
  std::vector<Monomial::VarPower> vp;
  for (auto [d, e] : powers) vp.push_back({t(d), e});
  return Monomial::from(std::move(vp), {0, u, 0, 0});
}

}  // namespace

TEST_CASE("A acts on the P_{m,d} family") {
  for (int m = 1; m <= 5; ++m)
    for (int d = 0; d <= 5; ++d) CHECK(op_A(p_md(m, d)) == Rational(m) * p_md(m + 1, d + 1));
  CHECK(p_md(2, 1).coefficient(tmono({{0, 1}, {1, 1}})) == 1);
  CHECK(p_md(2, 0).coefficient(tmono({{0, 2}})) == frac(1, 2));
}

TEST_CASE("symmetrization") {
  const SymPoly s = symmetrize(2, p_md(2, 1));
  CHECK(s == power_sum_power(2, 1));
  SymPoly want{{{2, 0}, 1}, {{1, 1}, 2}, {{0, 2}, 1}};
  CHECK(power_sum_power(2, 2) == want);
  CHECK_THROWS(symmetrize(3, p_md(2, 1)));
}

TEST_CASE("lambda_g constants and the Faber formula") {
  const auto c = faber_constants(table(), 3);
  CHECK(c.at(1) == frac(1, 24));
  CHECK(c.at(2) == frac(7, 5760));
  CHECK(c.at(3) == frac(31, 967680));
  for (int g = 1; g <= 3; ++g)
    for (int n = 1; n <= 3; ++n) {
      std::string detail;
      CHECK_MESSAGE(faber_check(table(), g, n, &detail), detail);
    }
  CHECK_THROWS_AS(faber_constants(table(), 5), std::out_of_range);
}

TEST_CASE("top Hodge series solves its equation") {
  const auto c = faber_constants(table(), 2);
  const Series f = ftop_build(15, c, 5, 2);
  CHECK(f.coefficient(tmono({{0, 3}})) == frac(1, 6));
  CHECK(f.coefficient(tmono({{0, 1}})) == -c.at(1));
  const Series res = ftop_residual(f).filtered([](const Monomial& m) { return m.degree() <= 5; });
  CHECK(res.is_zero());
}

TEST_CASE("Psi at v = 0 is the top part and solves its evolution equation") {
  const int chi = 4;
  const auto c = faber_constants(table(), 2);
  const Series psi = psi_series(table(), chi);
  const Series psi0 = psi.filtered([](const Monomial& m) { return m.param(Param::V) == 0; });
  const Series top = top_t_to_r(ftop_build(21, c, 6, 2)).filtered([&](const Monomial& m) { return psi_euler(m) <= chi; });
  CHECK(psi0 == top);
  CHECK(psi_pde_check(table(), chi).passed);
  CHECK(gtilde_evolution_check(table(), 5).passed);
}

TEST_CASE("reduction operator") {
  const Series f = reduction_input(table());
  CHECK(w_reduce(f, 0) == f);
  const Series calf = w_reduce(f, 2);
  // <lambda_1 tau_0>_1 = 1/24 enters with sign (-1)^j
  CHECK(calf.coefficient(tmono({{0, 1}}, 2)) == frac(-1, 24));
  CHECK(calf.coefficient(tmono({{0, 3}})) == frac(1, 6));
  const DiffOp w = w_operator(2, 4);
  CHECK_FALSE(w.is_zero());
  CHECK(w_operator(1, 4).is_zero());
}
