#include "hodgekit/faber.hpp"

#include <algorithm>
#include <stdexcept>

namespace hodgekit {

namespace {

Monomial times_var(const Monomial& m, Variable v) { return m * Monomial::of(v); }

int t_index_sum(const Monomial& m) {
  int s = 0;
  for (const auto& [v, e] : m.vars()) s += v.index * e;
  return s;
}

Rational multinomial(const std::vector<int>& parts) {
  int total = 0;
  Integer denom = 1;
  for (int d : parts) {
    total += d;
    denom *= factorial(static_cast<unsigned>(d));
  }
  return Rational(factorial(static_cast<unsigned>(total))) / Rational(denom);
}

}  // namespace

// ------------------------------------------------------------------- A, P, Sym

Series op_A(const Series& s) {
  Series out(s.caps());
  for (const auto& [m, c] : s.terms())
    for (const auto& [v, e] : m.vars()) {
      if (v.family != Family::T) throw std::invalid_argument("op_A expects a series in t");
      const int k = v.index;
      const Monomial rest = m.divide(v)->first;
      for (int i = 0; i <= k + 1; ++i) {
        const int j = k + 1 - i;
        out.add_term(times_var(times_var(rest, t(i)), t(j)),
                     c * Rational(e) * frac(1, 2) * Rational(binomial(k + 1, i)));
      }
    }
  return out;
}

Series p_md(int m, int d) {
  Series out(Caps::exact());
  std::vector<int> parts(static_cast<std::size_t>(m), 0);
  const Rational inv = 1 / Rational(factorial(static_cast<unsigned>(m)));
  // ordered compositions of d into m nonnegative parts
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == m - 1) {
      parts[static_cast<std::size_t>(pos)] = left;
      std::vector<Monomial::VarPower> powers;
      std::map<int, int> mult;
      for (int x : parts) ++mult[x];
      for (const auto& [x, e] : mult) powers.push_back({t(x), e});
      out.add_term(Monomial::from(std::move(powers)), multinomial(parts) * inv);
      return;
    }
    for (int x = 0; x <= left; ++x) {
      parts[static_cast<std::size_t>(pos)] = x;
      rec(pos + 1, left - x);
    }
  };
  if (m >= 1) rec(0, d);
  return out;
}

SymPoly symmetrize(int m, const Series& s) {
  SymPoly out;
  for (const auto& [mono, c] : s.terms()) {
    if (mono.degree() != m) throw std::invalid_argument("symmetrize: input is not homogeneous of degree m");
    std::vector<int> ds;
    Integer rep = 1;
    for (const auto& [v, e] : mono.vars()) {
      if (v.family != Family::T) throw std::invalid_argument("symmetrize expects a series in t");
      for (int i = 0; i < e; ++i) ds.push_back(v.index);
      rep *= factorial(static_cast<unsigned>(e));
    }
    std::sort(ds.begin(), ds.end());
    do {
      out[ds] += c * Rational(rep);
    } while (std::next_permutation(ds.begin(), ds.end()));
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

SymPoly power_sum_power(int m, int d) {
  SymPoly out;
  std::vector<int> parts(static_cast<std::size_t>(m), 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == m - 1) {
      parts[static_cast<std::size_t>(pos)] = left;
      out[parts] += multinomial(parts);
      return;
    }
    for (int x = 0; x <= left; ++x) {
      parts[static_cast<std::size_t>(pos)] = x;
      rec(pos + 1, left - x);
    }
  };
  if (m >= 1) rec(0, d);
  return out;
}

SymPoly operator*(const Rational& c, SymPoly p) {
  if (c == 0) return {};
  for (auto& [k, v] : p) v *= c;
  return p;
}

// ------------------------------------------------------------------------ F^top

std::map<int, Rational> faber_constants(const CorrelatorTable& table, int g_max) {
  std::map<int, Rational> c;
  for (int g = 1; g <= g_max; ++g) {
    auto it = table.find(CorrelatorKey{g, {2 * g - 2}, g});
    if (it == table.end()) throw std::out_of_range("table lacks <lambda_" + std::to_string(g) + " tau>");
    c[g] = it->second;
  }
  return c;
}

Series ftop_build(int weight_cap, const std::map<int, Rational>& c, int max_factors, int max_genus) {
  const Caps caps = Caps::exact().with_weight(weight_cap);
  Series layer(caps);
  for (int g = 1; 4 * g - 3 <= weight_cap && g <= max_genus; ++g) {
    auto it = c.find(g);
    if (it == c.end()) throw std::out_of_range("missing c_" + std::to_string(g));
    layer.add_term(Monomial::of(t(2 * g - 2)), g % 2 ? -it->second : it->second);
  }
  Series out = layer;
  for (int m = 1; m < max_factors; ++m) {
    layer = op_A(layer);
    layer *= frac(1, m);
    if (m + 1 == 3) layer.add_term(Monomial::of(t(0), 3), frac(1, 6));
    if (layer.is_zero() && m + 1 >= 3) break;
    out += layer;
  }
  return out;
}

Series ftop_residual(const Series& f) {
  Series res = f + op_A(f);
  for (const auto& [m, c] : f.terms()) res.add_term(m, -c * Rational(m.degree()));
  res.add_term(Monomial::of(t(0), 3), frac(1, 3));
  return res;
}

bool faber_check(const CorrelatorTable& table, int g, int n, std::string* detail) {
  const Rational cg = faber_constants(table, g).at(g);
  bool any = false;
  for (const auto& [key, value] : table) {
    if (key.genus != g || key.j != g || key.n() != n) continue;
    any = true;
    const Rational expect = multinomial(key.ks) * cg;
    if (value != expect) {
      if (detail) *detail = "g=" + std::to_string(g) + " entry " + to_string(value) + " vs " + to_string(expect);
      return false;
    }
  }
  if (!any && detail) *detail = "no entries for g=" + std::to_string(g) + " n=" + std::to_string(n);
  return any;
}

Series top_t_to_r(const Series& f_t) {
  return transform(
      f_t,
      [](const Monomial& m) -> std::optional<std::pair<Monomial, Rational>> {
        std::vector<Monomial::VarPower> powers;
        Rational c = 1;
        for (const auto& [v, e] : m.vars()) {
          if (v.family != Family::T) throw std::invalid_argument("expected a series in t");
          Rational f(factorial(static_cast<unsigned>(v.index)));
          if (v.index % 2) f = -f;
          powers.push_back({r(v.index + 1), e});
          c *= pow(f, static_cast<unsigned>(e));
        }
        return std::make_pair(Monomial::from(std::move(powers), m.params()), c);
      },
      Caps::exact());
}

// ----------------------------------------------------------------------- Psi

int psi_euler(const Monomial& m) { return m.weight() + 1 - m.degree() - m.param(Param::V); }

Series psi_series(const CorrelatorTable& table, int chi_max) {
  Series out(Caps::exact());
  for (const auto& [g, n] : types_up_to_euler(chi_max)) out += psi_type(table, g, n);
  return out;
}

namespace {

Series vr(int e, int index, const Rational& c) {
  return Series::term(Monomial::from({{r(index), 1}}, {0, 0, e, 0}), c, Caps::exact());
}

int max_r_index(const Series& s) {
  int k = 0;
  for (const auto& v : s.variables()) k = std::max(k, v.index);
  return k;
}

}  // namespace

Series psi_pde_residual(const Series& psi) {
  const int top = max_r_index(psi);
  std::vector<Series> d(static_cast<std::size_t>(top + 1), Series(Caps::exact()));
  for (int i = 1; i <= top; ++i) d[static_cast<std::size_t>(i)] = psi.derivative(r(i)).relabel_caps(Caps::exact());
  auto di = [&](int i) -> const Series& {
    static const Series zero(Caps::exact());
    return i >= 1 && i <= top ? d[static_cast<std::size_t>(i)] : zero;
  };

  Series res = psi - psi.param_derivative(Param::V).times_param(Param::V, 1);
  for (int i = 1; i <= top; ++i) res += (vr(1, i + 1, i) - vr(0, i, 1)) * di(i);

  for (int k = 2; k <= std::max(2 * top, top + 4); ++k) {
    // i j v (-r_{k+2} + 2v r_{k+3} - v^2 r_{k+4}) (v Psi_ij + Psi_i Psi_j)
    const Series shift = vr(1, k + 2, -1) + vr(2, k + 3, 2) + vr(3, k + 4, -1);
    // -(k-2) Psi_{k-2} + 2v(k-3) Psi_{k-3} - v^2 (k-4) Psi_{k-4}
    const Series back = Rational(-(k - 2)) * di(k - 2) + Rational(2 * (k - 3)) * di(k - 3).times_param(Param::V, 1) -
                        Rational(k - 4) * di(k - 4).times_param(Param::V, 2);
    Series quad(Caps::exact());
    Series pairs(Caps::exact());
    for (int i = 1; i < k; ++i) {
      const int j = k - i;
      if (i <= top && j <= top) {
        Series inner = di(i).derivative(r(j)).relabel_caps(Caps::exact()).times_param(Param::V, 1) + di(i) * di(j);
        quad += Rational(i * j) * inner;
      }
      pairs += Series::term(Monomial::of(r(i)) * Monomial::of(r(j)), 1, Caps::exact());
    }
    res += frac(1, 2) * (shift * quad + pairs * back);
  }
  res += Series::term(Monomial::of(r(1), 3), frac(1, 3), Caps::exact());
  res += Series::term(Monomial::from({{r(1), 2}, {r(2), 1}}, {0, 0, 1, 0}), frac(-1, 2), Caps::exact());
  res += vr(2, 3, frac(1, 6)) + vr(3, 4, frac(-1, 8));
  return res;
}

KPReport psi_pde_check(const CorrelatorTable& table, int chi_max) {
  const Series res = psi_pde_residual(psi_series(table, chi_max));
  return make_report("PSI_PDE", res.filtered([&](const Monomial& m) { return psi_euler(m) <= chi_max; }));
}

Series gtilde_series(const CorrelatorTable& table, int chi_max) {
  Series out(Caps::exact());
  for (const auto& [g, n] : types_up_to_euler(chi_max)) out += r_shift(assemble_type(table, g, n), true);
  return out;
}

OperatorSpec gtilde_generator() {
  const Caps pc = Caps::exact();
  auto v = [&](int e, const Rational& c) { return Series::term(Monomial::of(Param::V, e), c, pc); };
  return OperatorSpec::lincomb({
      {v(0, -1), OperatorSpec::m(2)},
      {v(1, 2), OperatorSpec::m(3)},
      {v(0, -1), OperatorSpec::m(4)},
      {v(0, 1), OperatorSpec::lambda(1)},
      {v(1, frac(1, 6)), OperatorSpec::a(3)},
      {v(2, frac(-1, 8)), OperatorSpec::a(4)},
  });
}

KPReport gtilde_evolution_check(const CorrelatorTable& table, int chi_max) {
  const Series g = gtilde_series(table, chi_max);
  const int cap = std::max(g.max_term_weight(), 4);
  const Series rhs = conjugated_apply(materialize(gtilde_generator(), Family::R, cap), g);
  const Series res = g.param_derivative(Param::V).relabel_caps(Caps::exact()) - rhs.relabel_caps(Caps::exact());
  return make_report("GTILDE_EVOLUTION",
                     res.filtered([&](const Monomial& m) { return m.weight() <= chi_max - 4; }));
}

// ----------------------------------------------------------------- reduction

DiffOp w_operator(int u_cap, int max_index) {
  DiffOp w;
  for (int k = 1; 4 * k - 2 <= u_cap; ++k) {
    const Rational scale = -bernoulli(static_cast<unsigned>(2 * k)) / Rational(2 * k * (2 * k - 1));
    const Series c = Series::term(Monomial::of(Param::U, 4 * k - 2), scale, Caps::exact());
    if (2 * k <= max_index) w.add(Monomial(), Monomial::of(t(2 * k)), c);
    for (int i = 0; i + 2 * k - 1 <= max_index; ++i) w.add(Monomial::of(t(i)), Monomial::of(t(i + 2 * k - 1)), -c);
    for (int i = 0; i <= 2 * k - 2; ++i) {
      const int j = 2 * k - 2 - i;
      Series half = frac(1, 2) * c;
      if (i % 2) half = -half;
      w.add(Monomial(), Monomial::of(t(i)) * Monomial::of(t(j)), half);
    }
  }
  return w;
}

Series w_reduce(const Series& f_t, int u_cap) {
  int max_index = 0;
  for (const auto& v : f_t.variables()) max_index = std::max(max_index, v.index);
  const DiffOp w = w_operator(u_cap, max_index + u_cap);
  const int steps = u_cap / 2;
  const Caps caps = Caps::exact().with_param(Param::U, 0, u_cap).with_param(Param::Gamma, 0, steps);
  const Series base = f_t.relabel_caps(caps);
  Series cur = base;
  for (int it = 0; it < steps; ++it) {
    const Series rate = conjugated_apply(w, cur).relabel_caps(caps);
    // integrate in gamma from 0
    Series integral(caps);
    for (const auto& [m, c] : rate.terms()) {
      const int e = m.param(Param::Gamma);
      integral.add_term(m.with_param(Param::Gamma, e + 1), c / Rational(e + 1));
    }
    cur = base + integral;
  }
  // gamma = 1
  Series out(Caps::exact().with_param(Param::U, 0, u_cap));
  for (const auto& [m, c] : cur.terms()) out.add_term(m.with_param(Param::Gamma, 0), c);
  return out;
}

CorrelatorTable correlators_from_reduced(const Series& calf, int max_dim) {
  CorrelatorTable out;
  for (const auto& [m, c] : calf.terms()) {
    const int ue = m.param(Param::U);
    if (ue % 2) throw std::logic_error("odd power of u in the reduced series");
    const int j = ue / 2;
    CorrelatorKey key;
    key.j = j;
    Rational value = j % 2 ? -c : c;
    for (const auto& [v, e] : m.vars()) {
      for (int i = 0; i < e; ++i) key.ks.push_back(v.index);
      value *= Rational(factorial(static_cast<unsigned>(e)));
    }
    const int n = key.n();
    const int num = t_index_sum(m) - n + j + 3;
    if (num % 3) continue;
    key.genus = num / 3;
    if (3 * key.genus - 3 + n > max_dim || 2 * key.genus - 2 + n <= 0 || j > key.genus) continue;
    out[key] = value;
  }
  return out;
}

Series reduction_input(const CorrelatorTable& table) {
  CorrelatorTable pick;
  for (const auto& [key, value] : table)
    if (key.j == 0 && ((key.genus == 0 && key.n() <= 7) || (key.genus == 1 && key.n() <= 5) ||
                       (key.genus == 2 && key.n() <= 3)))
      pick[key] = value;
  return witten_potential_t(pick, kUnbounded);
}

}  // namespace hodgekit
