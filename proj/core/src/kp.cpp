#include "hodgekit/kp.hpp"

#include <map>
#include <stdexcept>

#include "hodgekit/hurwitz.hpp"

namespace hodgekit {

KPReport make_report(std::string id, Series residual) {
  KPReport r;
  r.id = std::move(id);
  r.passed = residual.is_zero();
  if (!r.passed) r.first_offending = residual.terms().begin()->first;
  r.residual = std::move(residual);
  return r;
}

namespace {

class Derivatives {
 public:
  Derivatives(const Series& f, Family fam) : f_(f), fam_(fam) {}

  const Series& operator()(std::vector<int> idx) {
    std::sort(idx.begin(), idx.end());
    if (auto it = cache_.find(idx); it != cache_.end()) return it->second;
    Series d = f_;
    for (int i : idx) d = d.derivative(var(fam_, i));
    return cache_.emplace(idx, std::move(d)).first->second;
  }

 private:
  const Series& f_;
  Family fam_;
  std::map<std::vector<int>, Series> cache_;
};

}  // namespace

std::vector<KPReport> kp_residuals(const Series& f, Family family) {
  Derivatives d(f, family);
  const Series& f11 = d({1, 1});
  const Series& f21 = d({2, 1});
  const Series& f31 = d({3, 1});
  const Series& f111 = d({1, 1, 1});
  const Series& f1111 = d({1, 1, 1, 1});
  const Series& f2111 = d({2, 1, 1, 1});
  const Series& f3111 = d({3, 1, 1, 1});
  const Series& f111111 = d({1, 1, 1, 1, 1, 1});

  std::vector<KPReport> out;
  {
    Series rhs = frac(-1, 2) * (f11 * f11) + f31 - frac(1, 12) * f1111;
    out.push_back(make_report("KP22", d({2, 2}) - rhs));
  }
  {
    Series rhs = -(f11 * f21) + d({4, 1}) - frac(1, 6) * f2111;
    out.push_back(make_report("KP32", d({3, 2}) - rhs));
  }
  {
    Series rhs = frac(-1, 2) * (f21 * f21) - f11 * f31 + d({5, 1}) + frac(1, 8) * (f111 * f111) +
                 frac(1, 12) * (f11 * f1111) - frac(1, 4) * f3111 + frac(1, 120) * f111111;
    out.push_back(make_report("KP42", d({4, 2}) - rhs));
  }
  {
    Series rhs = frac(1, 3) * (f11 * f11 * f11) - f21 * f21 - f11 * f31 + d({5, 1}) + frac(1, 4) * (f111 * f111) +
                 frac(1, 3) * (f11 * f1111) - frac(1, 3) * f3111 + frac(1, 45) * f111111;
    out.push_back(make_report("KP33", d({3, 3}) - rhs));
  }
  return out;
}

Series witten_potential_t(const CorrelatorTable& table, int weight_cap) {
  Series out(Caps::weight(weight_cap));
  for (const auto& [key, value] : table) {
    if (key.j != 0 || value == 0) continue;
    std::map<int, int> mult;
    for (int k : key.ks) ++mult[k];
    std::vector<Monomial::VarPower> powers;
    Rational c = value;
    for (const auto& [k, e] : mult) {
      powers.push_back({t(k), e});
      c /= Rational(factorial(static_cast<unsigned>(e)));
    }
    out.add_term(Monomial::from(std::move(powers)), c);
  }
  return out;
}

Series t_to_odd_p(const Series& f_t) {
  return transform(
      f_t,
      [](const Monomial& m) -> std::optional<std::pair<Monomial, Rational>> {
        std::vector<Monomial::VarPower> powers;
        Rational c = 1;
        for (const auto& [v, e] : m.vars()) {
          if (v.family != Family::T) throw std::invalid_argument("expected a series in t-variables");
          powers.push_back({p(2 * v.index + 1), e});
          c *= pow(Rational(double_factorial_odd(v.index)), static_cast<unsigned>(e));
        }
        return std::make_pair(Monomial::from(std::move(powers), m.params()), c);
      },
      f_t.caps());
}

KPReport kdv_check(const Series& f_t) {
  const auto reports = kp_residuals(t_to_odd_p(f_t), Family::P);
  for (const auto& r : reports)
    if (!r.passed) return make_report("KDV/" + r.id, r.residual);
  return make_report("KDV", reports.front().residual);
}

KPReport virasoro_check(const Series& f_p, int m) {
  if (m < -1) throw std::invalid_argument("Virasoro constraints are indexed by m >= -1");
  const int w = f_p.caps().max_weight;
  if (w >= kUnbounded) throw std::invalid_argument("virasoro_check needs a finite weight cap");
  const int k = 2 * m + 3;
  Series lhs = Rational(k) * f_p.derivative(p(k));
  Series rhs = conjugated_apply(materialize(OperatorSpec::lambda(-2 * m), Family::P, w), f_p);
  Series res = lhs - rhs;
  if (m == 0) res -= Series::constant(frac(1, 8), res.caps());
  return make_report("VIRASORO(" + std::to_string(m) + ")", res);
}

OperatorSpec newcaj_operator() {
  const Caps pc = Caps::exact();
  auto u = [&](int e, const Rational& c) { return Series::term(Monomial::of(Param::U, e), c, pc); };
  return OperatorSpec::lincomb({
      {u(4, 1), OperatorSpec::m(0)},
      {u(3, 4), OperatorSpec::m(1)},
      {u(2, 6), OperatorSpec::m(2)},
      {u(1, 4), OperatorSpec::m(3)},
      {u(0, 1), OperatorSpec::m(4)},
      {u(1, frac(-4, 3)), OperatorSpec::lambda(0)},
      {u(0, -1), OperatorSpec::lambda(1)},
      {u(2, frac(1, 4)), OperatorSpec::a(2)},
      {u(1, frac(1, 3)), OperatorSpec::a(3)},
      {u(0, frac(1, 8)), OperatorSpec::a(4)},
  });
}

KPReport newcaj_check(const Series& g) {
  const int w = g.caps().max_weight;
  if (w >= kUnbounded) throw std::invalid_argument("newcaj_check needs a finite weight cap");
  Series lhs = g.param_derivative(Param::U).times_param(Param::U, 2);
  lhs *= frac(1, 3);
  const Series rhs = conjugated_apply(materialize(newcaj_operator(), Family::Q, w), g);
  return make_report("NEWCAJ", lhs - rhs);
}

Series newcaj_virasoro_extraction(const Series& f_p, int m) {
  const int w = f_p.caps().max_weight;
  if (w >= kUnbounded) throw std::invalid_argument("extraction needs a finite weight cap");
  const OperatorSpec op = OperatorSpec::m(4) - OperatorSpec::lambda(1) + frac(1, 8) * OperatorSpec::a(4);
  const Series x = conjugated_apply(materialize(op, Family::P, w), f_p);
  return x.derivative(p(2 * m + 4)).filtered([](const Monomial& mono) {
    for (const auto& [v, e] : mono.vars())
      if (v.index % 2 == 0) return false;
    return true;
  });
}

Series elsv_kp_transform(const Series& phi, int weight_cap, int beta_cap) {
  const Caps caps = hurwitz_caps(beta_cap, weight_cap);
  const Series h = phi.truncated(caps) - h02(beta_cap, weight_cap);
  const ChangeOfVariables change = change_from_xz(elsv_x_of_z(weight_cap, beta_cap), weight_cap);
  return apply_change(h, change, caps);
}

}  // namespace hodgekit
