#include "suites.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "hodgekit/bosonfermion.hpp"
#include "hodgekit/elsv.hpp"
#include "hodgekit/faber.hpp"
#include "hodgekit/hurwitz.hpp"
#include "hodgekit/kp.hpp"

namespace hodgekit::suites {

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const Check* Report::first_failure() const {
  for (const auto& c : checks)
    if (!c.passed) return &c;
  return nullptr;
}

namespace {

using SeriesCaps = ::hodgekit::Caps;

Check from_kp(std::string key, const KPReport& r) {
  Check c{std::move(key), r.passed, r.passed ? "0" : "nonzero", ""};
  if (r.first_offending) c.detail = "first offending monomial " + r.first_offending->to_string();
  return c;
}

Check flag(std::string key, bool ok, std::string detail = {}) {
  return Check{std::move(key), ok, ok ? "pass" : "fail", ok ? std::string() : std::move(detail)};
}

Check value(std::string key, const Rational& got, const Rational& expect) {
  Check c{std::move(key), got == expect, to_string(got), ""};
  if (!c.passed) c.detail = "expected " + to_string(expect);
  return c;
}

void add_kp(Report& rep, const std::string& prefix, const Series& f, Family fam = Family::P) {
  for (const auto& r : kp_residuals(f, fam)) rep.checks.push_back(from_kp(prefix + "/" + r.id, r));
}

// Stable types whose lambda_0 part reaches t-weight <= w (6g - 6 + 3n).
std::vector<std::pair<int, int>> witten_types(int w) {
  std::vector<std::pair<int, int>> out;
  for (int g = 0; 6 * g - 3 <= w; ++g)
    for (int n = 1; 6 * g - 6 + 3 * n <= w; ++n)
      if (2 * g - 2 + n > 0) out.push_back({g, n});
  return out;
}

Series q_to_p(const Series& s) {
  return transform(
      s,
      [](const Monomial& m) -> std::optional<std::pair<Monomial, Rational>> {
        std::vector<Monomial::VarPower> powers;
        for (const auto& [v, e] : m.vars()) powers.push_back({p(v.index), e});
        return std::make_pair(Monomial::from(std::move(powers), m.params()), Rational(1));
      },
      SeriesCaps::exact().with_weight(s.caps().max_weight));
}

Monomial tmono(std::vector<std::pair<int, int>> powers, int u = 0) {
  std::vector<Monomial::VarPower> vp;
  for (auto [d, e] : powers) vp.push_back({t(d), e});
  return Monomial::from(std::move(vp), {0, u, 0, 0});
}

}  // namespace

// ------------------------------------------------------------------------- kp

Report kp(const Limits& lim) {
  Report rep{"kp", {}};
  const int w = lim.max_weight + 6;
  {
    const Series s3 = schur({3}).relabel_caps(SeriesCaps::weight(w));
    add_kp(rep, "schur(3)", log(Series::constant(1, SeriesCaps::weight(w)) + s3));
  }
  add_kp(rep, "hurwitz", hurwitz_connected(lim.beta_order, w));
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto factors = random_decomposable_factors(seed, 3, w);
    const Series phi = log(fermion_to_boson(decomposable_to_coords(factors, w)));
    const std::string key = "decomposable(" + std::to_string(seed) + ")";
    add_kp(rep, key, phi);
    add_kp(rep, key + "/elsv_change", elsv_kp_transform(phi, w, lim.beta_order), Family::Q);
  }
  return rep;
}

// ------------------------------------------------------------------------ kdv

Report kdv(const Limits& lim) {
  Report rep{"kdv", {}};
  const int w = lim.max_weight + 6;
  const CorrelatorTable table = elsv_solve_many(witten_types(w));
  const Series f = witten_potential_t(table, w);
  rep.checks.push_back(from_kp("witten", kdv_check(f)));

  const Series g = build_G(w, lim.u_window);
  const Series g0 = g.filtered([](const Monomial& m) { return m.param(Param::U) == 0; });
  bool odd = true;
  for (const auto& [m, c] : g0.terms())
    for (const auto& [v, e] : m.vars()) odd = odd && v.index % 2 == 1;
  rep.checks.push_back(flag("G(u=0)/even_variables_absent", odd));
  rep.checks.push_back(flag("G(u=0)/equals_witten", q_to_p(g0) == t_to_odd_p(f)));
  add_kp(rep, "G(u=0)", q_to_p(g0));

  const Rational tau000 = table.at(CorrelatorKey{0, {0, 0, 0}, 0});
  const Rational tau1 = table.at(CorrelatorKey{0, {1}, 1});
  rep.checks.push_back(value("<tau0^3>_0/elsv", tau000, 1));
  rep.checks.push_back(value("<tau1>_1/elsv", tau1, frac(1, 24)));
  rep.checks.push_back(value("<tau0^3>_0/G", 6 * g0.coefficient(Monomial::of(q(1), 3)), tau000));
  rep.checks.push_back(value("<tau1>_1/G", g0.coefficient(Monomial::of(q(3))), tau1));
  const Series calf = w_reduce(witten_potential_t(table, 7), 2);
  rep.checks.push_back(value("<tau0^3>_0/reduction", 6 * calf.coefficient(tmono({{0, 3}})), tau000));
  rep.checks.push_back(value("<lambda1 tau0>_1/reduction", -calf.coefficient(tmono({{0, 1}}, 2)), tau1));
  return rep;
}

// ------------------------------------------------------------------- virasoro

Report virasoro(const Limits& lim) {
  Report rep{"virasoro", {}};
  const int w = lim.max_weight + 1;
  const CorrelatorTable table = elsv_solve_many(witten_types(w));
  const Series f = t_to_odd_p(witten_potential_t(table, w));
  for (int m = -1; m <= 3; ++m) {
    const KPReport r = virasoro_check(f, m);
    rep.checks.push_back(from_kp(r.id, r));
  }
  return rep;
}

// --------------------------------------------------------------------- newcaj

Report newcaj(const Limits& lim) {
  Report rep{"newcaj", {}};
  rep.checks.push_back(from_kp("G", newcaj_check(build_G(lim.max_weight + 4, lim.u_window))));
  const int w = lim.max_weight + 1;
  const CorrelatorTable table = elsv_solve_many(witten_types(w));
  const Series f = t_to_odd_p(witten_potential_t(table, w));
  for (int m = -1; m <= 2; ++m) {
    const Series x = newcaj_virasoro_extraction(f, m);
    const Series res = virasoro_check(f, m).residual;
    const Series sum = (x + res).truncated(intersect(x.caps(), res.caps()));
    rep.checks.push_back(flag("u^-4_part/virasoro(" + std::to_string(m) + ")", x.is_zero() && sum.is_zero(),
                              "extraction does not reproduce the constraint"));
  }
  return rep;
}

// ------------------------------------------------------------------- theorem4

Report theorem4(const Limits& lim) {
  Report rep{"theorem4", {}};
  const Series g = build_G(lim.max_weight, lim.u_window);
  const CorrelatorTable table = elsv_solve_many(types_for_caps(lim.max_weight, lim.u_window));
  const Series a = assemble_preHodge(table, g.caps());
  Check eq = flag("G=preHodge", g == a);
  if (!eq.passed) eq.detail = "first differing monomial " + (g - a).terms().begin()->first.to_string();
  rep.checks.push_back(eq);
  bool nonneg = true;
  for (const auto& [m, c] : g.terms()) nonneg = nonneg && m.param(Param::U) >= 0;
  rep.checks.push_back(flag("no_negative_u_powers", nonneg));
  rep.checks.push_back(Check{"terms", true, std::to_string(g.size()), ""});
  return rep;
}

// ------------------------------------------------------------------- lambda-g

Report lambda_g(const Limits&) {
  Report rep{"lambda-g", {}};
  bool ap = true;
  for (int m = 1; m <= 6; ++m)
    for (int d = 0; d <= 6; ++d) ap = ap && op_A(p_md(m, d)) == Rational(m) * p_md(m + 1, d + 1);
  rep.checks.push_back(flag("A P(m,d) = m P(m+1,d+1)", ap));
  bool sym = true;
  for (int m = 1; m <= 4; ++m)
    for (int d = 0; d <= 4; ++d) {
      sym = sym && symmetrize(m, p_md(m, d)) == power_sum_power(m, d);
      sym = sym && symmetrize(m + 1, op_A(p_md(m, d))) == Rational(m) * power_sum_power(m + 1, d + 1);
    }
  rep.checks.push_back(flag("symmetrization", sym));

  std::set<std::pair<int, int>> types;
  for (auto t : types_up_to_euler(6)) types.insert(t);
  for (int g = 1; g <= 3; ++g)
    for (int n = 1; n <= 4; ++n) types.insert({g, n});
  const CorrelatorTable table = elsv_solve_many({types.begin(), types.end()});

  for (int g = 1; g <= 3; ++g)
    for (int n = 1; n <= 4; ++n) {
      std::string detail;
      const bool ok = faber_check(table, g, n, &detail);
      rep.checks.push_back(flag("faber(g=" + std::to_string(g) + ",n=" + std::to_string(n) + ")", ok, detail));
    }
  const auto c = faber_constants(table, 3);
  for (const auto& [g, v] : c) rep.checks.push_back(Check{"c" + std::to_string(g), true, to_string(v), ""});

  const Series ftop = ftop_build(27, c, 7, 3);
  const Series fres = ftop_residual(ftop).filtered([](const Monomial& m) { return m.degree() <= 7; });
  rep.checks.push_back(from_kp("ftop_equation", make_report("FTOP", fres)));

  const int chi = 5;
  const Series psi = psi_series(table, chi);
  const Series psi0 = psi.filtered([](const Monomial& m) { return m.param(Param::V) == 0; });
  const Series top = top_t_to_r(ftop).filtered([&](const Monomial& m) { return psi_euler(m) <= chi; });
  rep.checks.push_back(flag("psi(v=0)=ftop", psi0 == top));
  rep.checks.push_back(from_kp("psi_equation", psi_pde_check(table, chi)));
  rep.checks.push_back(from_kp("gtilde_evolution", gtilde_evolution_check(table, 6)));
  return rep;
}

// --------------------------------------------------------------- bosonfermion

Report bosonfermion(const Limits& lim) {
  Report rep{"bosonfermion", {}};
  const int e = lim.energy;
  {
    Series expect(SeriesCaps::weight(3));
    expect.add_term(Monomial::of(p(1), 3), frac(1, 3));
    expect.add_term(Monomial::of(p(3)), frac(-1, 3));
    rep.checks.push_back(flag("schur(2,1)", schur({2, 1}) == expect));
    WedgeVector v = WedgeVector::vacuum(e);
    v.add({3}, Series::constant(1, SeriesCaps::exact()));
    const Series s = Series::constant(1, SeriesCaps::weight(e)) + schur({3}).relabel_caps(SeriesCaps::weight(e));
    rep.checks.push_back(flag("1+s3 <-> v()+v(3)", boson_to_fermion(s, e) == v));
  }
  std::vector<OperatorSpec> ops;
  for (int k = -e; k <= e; ++k) ops.push_back(OperatorSpec::a(k));
  for (int m = -4; m <= 4; ++m) {
    ops.push_back(OperatorSpec::lambda(m));
    ops.push_back(OperatorSpec::m(m));
  }
  ops.push_back(OperatorSpec::cutjoin());
  for (const auto& op : ops) {
    std::string detail;
    const bool ok = table_check(op, e, &detail);
    rep.checks.push_back(flag("table/" + op.to_string(), ok, detail));
  }
  // [a_m, a_{-m}] acts as -m
  bool cocycle = true;
  for (int m = 1; m <= 8; ++m)
    for (int w = 0; w <= e; ++w)
      for (const Partition& lambda : partitions_of(w)) {
        const WedgeVector v = WedgeVector::basis(lambda, e + m);
        WedgeVector c = hat_apply(ZOp::z_power(m), hat_apply(ZOp::z_power(-m), v));
        for (const auto& [mu, x] : hat_apply(ZOp::z_power(-m), hat_apply(ZOp::z_power(m), v)).coords) c.add(mu, -x);
        WedgeVector expect = WedgeVector::basis(lambda, e + m);
        expect.coords.begin()->second *= Rational(-m);
        cocycle = cocycle && c == expect;
      }
  rep.checks.push_back(flag("[a_m,a_-m] = -m (m<=8)", cocycle));
  // upper-triangular operators: no central term
  {
    const ZOp x = ZOp::from_spec(OperatorSpec::lambda(1));
    const ZOp y = ZOp::from_spec(OperatorSpec::m(2));
    const ZOp xy = commutator(x, y);
    bool ok = true;
    for (int w = 0; w <= e; ++w)
      for (const Partition& lambda : partitions_of(w)) {
        const WedgeVector v = WedgeVector::basis(lambda, e + 3);
        WedgeVector c = hat_apply(x, hat_apply(y, v));
        for (const auto& [mu, s] : hat_apply(y, hat_apply(x, v)).coords) c.add(mu, -s);
        ok = ok && c == hat_apply(xy, v);
      }
    rep.checks.push_back(flag("hat[Lambda1,M2] = [hat,hat]", ok));
  }
  for (int n = 1; n <= 4; ++n) {
    const DiffOp lhs = materialize(Rational(2 * n) * OperatorSpec::m(n), Family::P, 10);
    const DiffOp rhs = commutator(OperatorSpec::m(0), OperatorSpec::lambda(n), Family::P, 10) -
                       materialize(frac(n * n * n - n, 12) * OperatorSpec::a(n), Family::P, 10);
    rep.checks.push_back(flag("2nM_n=[M0,Lambda_n]-(n^3-n)/12 a_n (n=" + std::to_string(n) + ")", lhs == rhs));
  }
  {
    const int beta = std::min(lim.beta_order, 4);
    const WedgeVector minors = decomposable_to_coords(hurwitz_wedge_factors(e, beta, e), e);
    const WedgeVector schur_coords = boson_to_fermion(hurwitz_tau(beta, e), e);
    rep.checks.push_back(flag("plucker(e^H) = schur(e^H)", minors == schur_coords));
  }
  return rep;
}

// ------------------------------------------------------------------ reduction

Report reduction(const Limits&) {
  Report rep{"reduction", {}};
  const std::vector<std::pair<int, int>> types = {{0, 3}, {0, 4}, {0, 5}, {0, 6}, {0, 7}, {1, 1}, {1, 2},
                                                  {1, 3}, {1, 4}, {1, 5}, {2, 1}, {2, 2}, {2, 3}};
  const CorrelatorTable table = elsv_solve_many(types);
  const Series f = reduction_input(table);
  rep.checks.push_back(flag("u_cap 0 is identity", w_reduce(f, 0) == f));
  const Series calf = w_reduce(f, 4);
  bool even = true;
  for (const auto& [m, c] : calf.terms()) even = even && m.param(Param::U) % 2 == 0;
  rep.checks.push_back(flag("odd u-powers vanish", even));
  const CorrelatorTable red = correlators_from_reduced(calf, 4);
  int matched = 0;
  std::string bad;
  for (const auto& [key, v] : table) {
    if (3 * key.genus - 3 + key.n() > 4) continue;
    auto it = red.find(key);
    const Rational got = it == red.end() ? Rational(0) : it->second;
    if (got == v)
      ++matched;
    else if (bad.empty())
      bad = "g=" + std::to_string(key.genus) + " j=" + std::to_string(key.j) + ": " + to_string(got) + " vs " +
            to_string(v);
  }
  for (const auto& [key, v] : red)
    if (!table.count(key) && v != 0 && bad.empty()) bad = "extra correlator in genus " + std::to_string(key.genus);
  Check c{"correlators(3g-3+n<=4)", bad.empty(), std::to_string(matched) + " matched", bad};
  rep.checks.push_back(c);
  return rep;
}

// ----------------------------------------------------------------------- all

const std::vector<std::string>& names() {
  static const std::vector<std::string> n = {"kp",     "kdv",      "virasoro",     "newcaj",
                                             "theorem4", "lambda-g", "bosonfermion", "reduction"};
  return n;
}

Report run(const std::string& name, const Limits& lim) {
  if (name == "kp") return kp(lim);
  if (name == "kdv") return kdv(lim);
  if (name == "virasoro") return virasoro(lim);
  if (name == "newcaj") return newcaj(lim);
  if (name == "theorem4") return theorem4(lim);
  if (name == "lambda-g") return lambda_g(lim);
  if (name == "bosonfermion") return bosonfermion(lim);
  if (name == "reduction") return reduction(lim);
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace hodgekit::suites
