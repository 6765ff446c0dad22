#include "doctest.h"

#include "hodgekit/hurwitz.hpp"
#include "oracles.hpp"

using namespace hodgekit;

TEST_CASE("profiles") {
  RamificationProfile pr{1, {1, 3, 2}};
  CHECK(pr.degree() == 6);
  CHECK(pr.m() == 2 * 1 - 2 + 3 + 6);
  CHECK(pr.normalized().parts == std::vector<int>{3, 2, 1});
  CHECK(pr.admissible());
  CHECK_FALSE(RamificationProfile{0, {}}.admissible());
}

TEST_CASE("small Hurwitz numbers against brute-force enumeration") {
  const Series conn = hurwitz_connected(7, 4);
  int checked = 0;
  for (int d = 1; d <= 4; ++d)
    for (const auto& mu : oracle::partitions(d))
      for (int g = 0; g <= 2; ++g) {
        RamificationProfile pr{g, mu};
        if (!pr.admissible() || pr.m() > 6) continue;
        CAPTURE(g);
        CAPTURE(d);
        CHECK(hurwitz_number(pr, conn) == oracle::brute_hurwitz(d, pr.m(), mu));
        ++checked;
      }
  CHECK(checked >= 12);
}

TEST_CASE("known closed forms") {
  // single genus-0 part: d^{d-3}
  for (int d = 1; d <= 6; ++d) {
    const Rational want = d >= 3 ? pow(Rational(d), static_cast<unsigned>(d - 3))
                                 : Rational(1 / pow(Rational(d), static_cast<unsigned>(3 - d)));
    CHECK(hurwitz_number({0, {d}}) == want);
  }
  CHECK(hurwitz_number({0, {1, 1}}) == 1);
  CHECK(hurwitz_number({1, {1}}) == 0);
  CHECK(hurwitz_number({1, {2}}) == frac(1, 2));
}

TEST_CASE("library oracle agrees with the series up to degree 5") {
  const Series conn = hurwitz_connected(8, 5);
  for (int d = 1; d <= 5; ++d)
    for (const auto& mu : oracle::partitions(d))
      for (int g = 0; g <= 1; ++g) {
        RamificationProfile pr{g, mu};
        if (!pr.admissible() || pr.m() > 8) continue;
        CHECK(hurwitz_number(pr, conn) == oracle_hurwitz_number(pr));
      }
}

TEST_CASE("unstable parts are the one- and two-point genus zero terms") {
  const int b = 6, w = 6;
  const Series conn = hurwitz_connected(b, w);
  auto pick = [&](int n) {
    return conn.filtered([n](const Monomial& m) {
      return m.degree() == n && m.param(Param::Beta) == m.weight() + n - 2;
    });
  };
  CHECK(h01(b, w) == pick(1));
  CHECK(h02(b, w) == pick(2));
}

TEST_CASE("caps are enforced") {
  const Series conn = hurwitz_connected(3, 3);
  CHECK_THROWS_AS(hurwitz_number({0, {4}}, conn), CapError);
}
