#include "doctest.h"

#include <random>

#include "hodgekit/bosonfermion.hpp"
#include "hodgekit/hurwitz.hpp"
#include "hodgekit/kp.hpp"
#include "oracles.hpp"

using namespace hodgekit;

namespace {

bool all_pass(const std::vector<KPReport>& rs) {
  for (const auto& r : rs)
    if (!r.passed) return false;
  return true;
}

const CorrelatorTable& witten_table() {
  static const CorrelatorTable t = elsv_solve_many({{0, 3}, {0, 4}, {0, 5}, {1, 1}, {1, 2}, {1, 3}, {2, 1}});
  return t;
}

Series random_odd(std::uint64_t seed, int w) {
  std::mt19937_64 rng(seed);
  const Caps c = Caps::weight(w);
  Series f(c);
  for (int n = 1; n <= w; ++n)
    for (const auto& mu : oracle::partitions(n)) {
      if (std::any_of(mu.begin(), mu.end(), [](int k) { return k % 2 == 0; })) continue;
      f.add_term(oracle::p_monomial(mu), frac(static_cast<long>(rng() % 9) - 4, static_cast<long>(rng() % 4) + 1));
    }
  return f;
}

}  // namespace

TEST_CASE("Schur function solutions and a negative control") {
  const int w = 12;
  const Caps c = Caps::weight(w);
  for (const auto& lambda : {oracle::Partition{3}, oracle::Partition{2, 1}, oracle::Partition{3, 1, 1}}) {
    const Series tau = Series::constant(1, c) + oracle::schur(lambda).relabel_caps(c);
    CHECK(all_pass(kp_residuals(log(tau))));
  }
  const Series bad = Series::constant(1, c) + power(Series::variable(p(1), c), 4);
  CHECK_FALSE(all_pass(kp_residuals(log(bad))));
  CHECK_FALSE(all_pass(kp_residuals(Series::variable(p(1), c) * Series::variable(p(3), c))));
}

TEST_CASE("residual caps shrink by the operator order") {
  const auto rs = kp_residuals(log(Series::constant(1, Caps::weight(10)) +
                                   oracle::schur({2, 2}).relabel_caps(Caps::weight(10))));
  REQUIRE(rs.size() == 4);
  CHECK(rs[0].residual.caps().max_weight == 6);
  CHECK(rs[3].residual.caps().max_weight == 4);
}

TEST_CASE("Hurwitz potential solves KP") {
  CHECK(all_pass(kp_residuals(hurwitz_connected(5, 11))));
}

TEST_CASE("Witten potential: KdV and Virasoro") {
  const Series f = witten_potential_t(witten_table(), 9);
  CHECK(kdv_check(f).passed);
  const Series fp = t_to_odd_p(f);
  for (int m = -1; m <= 2; ++m) CHECK(virasoro_check(fp, m).passed);

  Series perturbed = f;
  perturbed.add_term(Monomial::of(t(0), 2) * Monomial::of(t(2)), frac(1, 7));
  CHECK_FALSE(kdv_check(perturbed).passed);
  CHECK_FALSE(virasoro_check(t_to_odd_p(perturbed), -1).passed);
}

TEST_CASE("G solves the transformed cut-and-join equation") {
  CHECK(newcaj_check(build_G(8, 6)).passed);
  Series g = build_G(8, 6);
  g.add_term(Monomial::of(q(2), 2), 1);
  CHECK_FALSE(newcaj_check(g).passed);
}

TEST_CASE("u^-4 extraction is minus the Virasoro residual") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const Series f = random_odd(seed, 7);
    for (int m = -1; m <= 1; ++m) {
      const Series x = newcaj_virasoro_extraction(f, m);
      const Series res = virasoro_check(f, m).residual;
      const Caps c = intersect(x.caps(), res.caps());
      CHECK_FALSE(res.truncated(c).is_zero());
      CHECK((x + res).truncated(c).is_zero());
    }
  }
}

TEST_CASE("the ELSV change preserves KP after removing the two-point part") {
  const int w = 10, b = 4;
  for (std::uint64_t seed = 1; seed <= 2; ++seed) {
    const Series phi = log(fermion_to_boson(decomposable_to_coords(random_decomposable_factors(seed, 3, w), w)));
    CHECK(all_pass(kp_residuals(phi)));
    CHECK(all_pass(kp_residuals(elsv_kp_transform(phi, w, b), Family::Q)));
    const Series wrong = elsv_kp_transform(phi + Rational(2) * h02(b, w), w, b);
    CHECK_FALSE(all_pass(kp_residuals(wrong, Family::Q)));
  }
}
