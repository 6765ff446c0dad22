#include "hodgekit/elsv.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace hodgekit {

bool CorrelatorKey::dimension_ok() const {
  return j + std::accumulate(ks.begin(), ks.end(), 0) == 3 * genus - 3 + n();
}

Series ChangeOfVariables::entry(int b, int k) const {
  auto it = matrix.find({b, k});
  return it == matrix.end() ? Series(Caps::exact()) : it->second;
}

namespace {

Caps beta_caps(int beta_cap) { return Caps::exact().with_param(Param::Beta, 0, beta_cap); }

/// Partitions of `total` into at most `parts` nonnegative entries, as ascending vectors of length `parts`.
void padded_partitions(int total, int parts, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == parts) {
    if (total == 0) {
      std::vector<int> v = cur;
      std::sort(v.begin(), v.end());
      out.push_back(std::move(v));
    }
    return;
  }
  for (int k = std::min(total, max_part); k >= 0; --k) {
    cur.push_back(k);
    padded_partitions(total - k, parts, k, cur, out);
    cur.pop_back();
  }
}

/// Partitions of `total` into exactly `parts` positive entries, descending, in lexicographic order.
void positive_partitions(int total, int parts, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == parts) {
    if (total == 0) out.push_back(cur);
    return;
  }
  const int left = parts - static_cast<int>(cur.size());
  for (int k = 1; k <= std::min(max_part, total - (left - 1)); ++k) {
    cur.push_back(k);
    positive_partitions(total - k, parts, k, cur, out);
    cur.pop_back();
  }
}

/// Monomial symmetric function m_ks evaluated at b.
Rational monomial_symmetric(std::vector<int> ks, const std::vector<int>& b) {
  std::sort(ks.begin(), ks.end());
  Rational total = 0;
  do {
    Rational term = 1;
    for (std::size_t i = 0; i < b.size(); ++i) term *= pow(Rational(b[i]), static_cast<unsigned>(ks[i]));
    total += term;
  } while (std::next_permutation(ks.begin(), ks.end()));
  return total;
}

/// Reduces `row` against an echelon basis; returns true (and extends the basis) if independent.
bool extend_echelon(std::vector<std::vector<Rational>>& basis, std::vector<std::size_t>& pivots, std::vector<Rational> row) {
  for (std::size_t r = 0; r < basis.size(); ++r) {
    const Rational f = row[pivots[r]];
    if (f == 0) continue;
    for (std::size_t c = 0; c < row.size(); ++c) row[c] -= f * basis[r][c];
  }
  auto it = std::find_if(row.begin(), row.end(), [](const Rational& x) { return x != 0; });
  if (it == row.end()) return false;
  const std::size_t piv = static_cast<std::size_t>(it - row.begin());
  const Rational lead = row[piv];
  for (auto& x : row) x /= lead;
  for (std::size_t r = 0; r < basis.size(); ++r) {
    const Rational f = basis[r][piv];
    if (f == 0) continue;
    for (std::size_t c = 0; c < row.size(); ++c) basis[r][c] -= f * row[c];
  }
  basis.push_back(std::move(row));
  pivots.push_back(piv);
  return true;
}

/// Solves the square system a x = rhs exactly.
std::vector<Rational> solve_square(std::vector<std::vector<Rational>> a, std::vector<Rational> rhs) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) throw std::runtime_error("singular ELSV system");
    std::swap(a[piv], a[col]);
    std::swap(rhs[piv], rhs[col]);
    const Rational lead = a[col][col];
    for (std::size_t c = col; c < n; ++c) a[col][c] /= lead;
    rhs[col] /= lead;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  return rhs;
}

struct ElsvPlan {
  int g = 0;
  int n = 0;
  std::vector<CorrelatorKey> unknowns;
  std::vector<std::vector<int>> tuples;
  std::vector<std::vector<Rational>> rows;
  int max_m = 0;
  int max_b = 0;
};

ElsvPlan plan_elsv(int g, int n) {
  if (g < 0 || n < 1 || 2 * g - 2 + n <= 0) throw std::invalid_argument("ELSV needs a stable (g, n) with n >= 1");
  ElsvPlan plan;
  plan.g = g;
  plan.n = n;
  const int dim = 3 * g - 3 + n;
  for (int j = 0; j <= std::min(g, dim); ++j) {
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    padded_partitions(dim - j, n, dim - j, cur, parts);
    for (auto& ks : parts) plan.unknowns.push_back({j, ks, g});
  }
  std::vector<std::vector<Rational>> basis;
  std::vector<std::size_t> pivots;
  constexpr int kMaxExtraDegree = 60;
  for (int total = n; plan.rows.size() < plan.unknowns.size(); ++total) {
    if (total > n + kMaxExtraDegree) throw std::runtime_error("ELSV system did not reach full rank");
    std::vector<std::vector<int>> tuples;
    std::vector<int> cur;
    positive_partitions(total, n, total, cur, tuples);
    for (const auto& b : tuples) {
      std::vector<Rational> row;
      for (const auto& key : plan.unknowns) {
        Rational v = monomial_symmetric(key.ks, b);
        if (key.j % 2 == 1) v = -v;
        row.push_back(v);
      }
      if (!extend_echelon(basis, pivots, row)) continue;
      plan.tuples.push_back(b);
      plan.rows.push_back(std::move(row));
      const RamificationProfile prof{g, b};
      plan.max_m = std::max(plan.max_m, prof.m());
      plan.max_b = std::max(plan.max_b, prof.degree());
      if (plan.rows.size() == plan.unknowns.size()) break;
    }
  }
  return plan;
}

CorrelatorTable execute_plan(const ElsvPlan& plan, HurwitzTable& table) {
  std::vector<Rational> rhs;
  for (const auto& b : plan.tuples) {
    const RamificationProfile prof{plan.g, b};
    Rational value = table.number(prof) / Rational(factorial(static_cast<unsigned>(prof.m())));
    for (int bi : b) value *= Rational(factorial(static_cast<unsigned>(bi))) / pow(Rational(bi), static_cast<unsigned>(bi));
    rhs.push_back(value);
  }
  const auto x = solve_square(plan.rows, rhs);
  CorrelatorTable out;
  for (std::size_t i = 0; i < plan.unknowns.size(); ++i) out.emplace(plan.unknowns[i], x[i]);
  return out;
}

const Series& cached_t(int k) {
  static std::mutex mutex;
  static std::vector<Series> cache;
  std::lock_guard lock(mutex);
  if (cache.empty()) cache.push_back(Series::variable(q(1), Caps::exact()));
  while (static_cast<int>(cache.size()) <= k) {
    const Series& prev = cache.back();
    Series next(Caps::exact());
    for (const auto& [m, c] : prev.terms()) {
      const int idx = m.vars().front().first.index;
      const int a = m.param(Param::U);
      // m (u^2 q_m + 2u q_{m+1} + q_{m+2}) d/dq_m
      next.add_term(Monomial::from({{q(idx), 1}}, {0, a + 2, 0, 0}), c * idx);
      next.add_term(Monomial::from({{q(idx + 1), 1}}, {0, a + 1, 0, 0}), c * idx * 2);
      next.add_term(Monomial::from({{q(idx + 2), 1}}, {0, a, 0, 0}), c * idx);
    }
    cache.push_back(std::move(next));
  }
  return cache[static_cast<std::size_t>(k)];
}

}  // namespace

LaurentZ elsv_x_of_z(int z_max, int beta_cap) {
  const Caps pc = beta_caps(beta_cap);
  const LaurentZ bz = LaurentZ::monomial(1, Series::parameter(Param::Beta, 1, pc), z_max, pc);
  const LaurentZ inv = inverse(LaurentZ::monomial(0, 1, z_max, pc) + bz);
  return LaurentZ::z(z_max, pc) * inv * exp(-(bz * inv));
}

ChangeOfVariables change_from_xz(const LaurentZ& x_of_z, int max_index, Family source, Family target) {
  if (x_of_z.z_max() < max_index) throw CapError("x(z) is not known to the requested index");
  ChangeOfVariables c;
  c.source = source;
  c.target = target;
  c.max_index = max_index;
  const LaurentZ x = x_of_z.truncated(max_index);
  LaurentZ pw = x;
  for (int b = 1; b <= max_index; ++b) {
    if (b > 1) pw = (pw * x).truncated(max_index);
    for (const auto& [k, coef] : pw.terms()) c.matrix.emplace(std::make_pair(b, k), coef);
  }
  return c;
}

Series apply_change(const Series& s, const ChangeOfVariables& c, const Caps& target) {
  std::map<Variable, Series> images;
  for (int b = 1; b <= c.max_index; ++b) {
    Series img(target);
    for (int k = b; k <= c.max_index; ++k) {
      const Series coef = c.entry(b, k);
      for (const auto& [pm, pc] : coef.terms()) img.add_term(Monomial::of(var(c.target, k)) * pm, pc);
    }
    images.emplace(var(c.source, b), std::move(img));
  }
  for (const auto& v : s.variables())
    if (v.family == c.source && v.index > c.max_index && v.weight() <= target.max_weight)
      throw CapError("change of variables does not cover " + std::string(1, family_symbol(v.family)) + std::to_string(v.index));
  return substitute(s, images, target);
}

Series t_linear(int k) {
  if (k < 0) throw std::invalid_argument("t_linear needs k >= 0");
  return cached_t(k);
}

Series t_tilde(int k) {
  if (k < 0) throw std::invalid_argument("t_tilde needs k >= 0");
  Series cur = Series::variable(r(1), Caps::exact());
  for (int step = 0; step < k; ++step) {
    Series next(Caps::exact());
    for (const auto& [m, c] : cur.terms()) {
      const int idx = m.vars().front().first.index;
      const int a = m.param(Param::V);
      // m (v r_{m+2} - r_{m+1}) d/dr_m
      next.add_term(Monomial::from({{r(idx + 2), 1}}, {0, 0, a + 1, 0}), c * idx);
      next.add_term(Monomial::from({{r(idx + 1), 1}}, {0, 0, a, 0}), -c * idx);
    }
    cur = std::move(next);
  }
  return cur;
}

Series build_G(int weight_cap, int u_cap, int max_factors) {
  const int beta_cap = (u_cap + 4 * weight_cap) / 3;
  Series h = hurwitz_connected(beta_cap, weight_cap, max_factors);
  h -= h01(beta_cap, weight_cap);
  h -= h02(beta_cap, weight_cap);
  const ChangeOfVariables change = change_from_xz(elsv_x_of_z(weight_cap, beta_cap), weight_cap);
  const Series gq = apply_change(h, change, hurwitz_caps(beta_cap, weight_cap, max_factors));
  const Caps out = Caps::weight(weight_cap).with_degree(max_factors).with_param(Param::U, -(weight_cap + 4), u_cap);
  return transform(
      gq,
      [](const Monomial& m) -> std::optional<std::pair<Monomial, Rational>> {
        const int e = 3 * m.param(Param::Beta) - 4 * m.weight();
        return std::make_pair(m.with_param(Param::Beta, 0).with_param(Param::U, e), Rational(1));
      },
      out);
}

CorrelatorTable elsv_solve(int g, int n, HurwitzTable* table) {
  const ElsvPlan plan = plan_elsv(g, n);
  HurwitzTable local;
  HurwitzTable& t = table ? *table : local;
  t.require(plan.max_m, plan.max_b, n);
  return execute_plan(plan, t);
}

CorrelatorTable elsv_solve_many(const std::vector<std::pair<int, int>>& types) {
  std::vector<ElsvPlan> plans;
  int max_m = 0;
  int max_b = 0;
  int max_n = 0;
  for (const auto& [g, n] : types) {
    plans.push_back(plan_elsv(g, n));
    max_m = std::max(max_m, plans.back().max_m);
    max_b = std::max(max_b, plans.back().max_b);
    max_n = std::max(max_n, n);
  }
  HurwitzTable table;
  table.require(max_m, max_b, max_n);
  CorrelatorTable out;
  for (const auto& plan : plans) out.merge(execute_plan(plan, table));
  return out;
}

std::vector<std::pair<int, int>> types_for_caps(int weight_cap, int u_cap) {
  std::vector<std::pair<int, int>> out;
  for (int n = 1; n <= weight_cap; ++n) {
    for (int g = 0;; ++g) {
      if (2 * g - 2 + n <= 0) continue;
      const int lowest_u = std::max(0, 6 * g - 6 + 3 * n - weight_cap);
      if (lowest_u > u_cap) break;
      out.push_back({g, n});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<int, int>> types_up_to_euler(int chi_max) {
  std::vector<std::pair<int, int>> out;
  for (int g = 0; 2 * g - 1 <= chi_max; ++g)
    for (int n = 1; 2 * g - 2 + n <= chi_max; ++n)
      if (2 * g - 2 + n > 0) out.push_back({g, n});
  return out;
}

Series assemble_type(const CorrelatorTable& table, int g, int n) {
  Series out(Caps::exact());
  bool found = false;
  for (const auto& [key, value] : table) {
    if (key.genus != g || key.n() != n) continue;
    found = true;
    if (value == 0) continue;
    Series term = Series::term(Monomial::of(Param::U, 2 * key.j), key.j % 2 == 0 ? value : Rational(-value), Caps::exact());
    std::map<int, unsigned> mult;
    for (int k : key.ks) ++mult[k];
    for (const auto& [k, e] : mult) {
      term = term * power(t_linear(k), e);
      term *= Rational(1) / Rational(factorial(e));
    }
    out += term;
  }
  if (!found) throw CapError("correlator table has no entries for (g, n) = (" + std::to_string(g) + ", " + std::to_string(n) + ")");
  return out;
}

Series assemble_preHodge(const CorrelatorTable& table, const Caps& caps) {
  if (caps.max_weight >= kUnbounded || caps.window(Param::U).max >= kUnbounded)
    throw std::invalid_argument("assemble_preHodge needs finite weight and u caps");
  Series out(caps);
  for (const auto& [g, n] : types_for_caps(caps.max_weight, caps.window(Param::U).max))
    out += assemble_type(table, g, n).truncated(caps);
  return out;
}

LaurentZ xi_transform(const LaurentZ& phi, int z_max) {
  const Caps pc = phi.param_caps();
  const int beta_cap = pc.window(Param::Beta).max;
  if (beta_cap >= kUnbounded) throw std::invalid_argument("xi_transform needs a finite beta cap");
  const int lo = std::min(0, phi.order());
  const int inner = z_max - lo + 1;
  const LaurentZ x = elsv_x_of_z(inner, beta_cap).with_param_caps(pc);
  const LaurentZ comp = compose(phi, x, z_max);
  const LaurentZ bz = LaurentZ::monomial(1, Series::parameter(Param::Beta, 1, pc), inner, pc);
  const LaurentZ inv = inverse(LaurentZ::monomial(0, 1, inner, pc) + bz);
  LaurentZ half = bz * inv;
  half *= frac(-1, 2);
  const LaurentZ pref = binomial_power(bz, frac(-3, 2)) * exp(half);
  return (pref * comp).truncated(z_max);
}

LaurentZ xi_residual(const LaurentZ& psi) {
  const Caps pc = psi.param_caps();
  const int big = psi.z_max() + 8;
  const Series beta = Series::parameter(Param::Beta, 1, pc);
  LaurentZ a(big, pc);
  a.add(2, Rational(2));
  a.add(3, beta);
  LaurentZ b(big, pc);
  b.add(1, Rational(2));
  b.add(2, frac(3, 2) * beta);
  return psi.param_derivative(Param::Beta) + a * psi.derivative() + b * psi;
}

Series r_shift(const Series& s, bool tilde) {
  std::map<Variable, Series> images;
  int max_k = 0;
  for (const auto& v : s.variables())
    if (v.family == Family::Q) max_k = std::max(max_k, v.index);
  for (int k = 1; k <= max_k; ++k) {
    Series img(Caps::exact());
    for (int i = 1; i <= k; ++i) {
      const int e = tilde ? k - 3 * i : k + 3 - 3 * i;
      Rational c(binomial(k, i));
      if ((k - i) % 2 == 1) c = -c;
      img.add_term(Monomial::from({{r(i), 1}}, {0, e, 0, 0}), c);
    }
    images.emplace(q(k), std::move(img));
  }
  const Series shifted = substitute(s.relabel_caps(Caps::exact()), images, Caps::exact());
  return transform(
      shifted,
      [](const Monomial& m) -> std::optional<std::pair<Monomial, Rational>> {
        const int e = m.param(Param::U);
        if (e % 3 != 0) throw std::domain_error("u-exponent " + std::to_string(e) + " is not a multiple of 3");
        return std::make_pair(m.with_param(Param::U, 0).with_param(Param::V, m.param(Param::V) - e / 3), Rational(1));
      },
      Caps::exact());
}

Series psi_type(const CorrelatorTable& table, int g, int n) {
  return r_shift(assemble_type(table, g, n)).times_param(Param::V, 1);
}

}  // namespace hodgekit
