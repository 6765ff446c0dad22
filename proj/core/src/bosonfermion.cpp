#include "hodgekit/bosonfermion.hpp"

#include <algorithm>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>

namespace hodgekit {

int partition_size(const Partition& lambda) {
  int s = 0;
  for (int x : lambda) s += x;
  return s;
}

namespace {

void partitions_rec(int remaining, int max_part, Partition& cur, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  for (int k = std::min(remaining, max_part); k >= 1; --k) {
    cur.push_back(k);
    partitions_rec(remaining - k, k, cur, out);
    cur.pop_back();
  }
}

Series param_one() { return Series::constant(1, Caps::exact()); }

}  // namespace

std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  if (n < 0) return out;
  Partition cur;
  partitions_rec(n, n, cur, out);
  return out;
}

std::string to_string(const Partition& lambda) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < lambda.size(); ++i) os << (i ? "," : "") << lambda[i];
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------- WedgeVector

WedgeVector WedgeVector::vacuum(int energy_cap) { return basis({}, energy_cap); }

WedgeVector WedgeVector::basis(const Partition& lambda, int energy_cap) {
  WedgeVector v;
  v.energy_cap = energy_cap;
  v.add(lambda, param_one());
  return v;
}

void WedgeVector::add(const Partition& lambda, const Series& c) {
  if (partition_size(lambda) > energy_cap || c.is_zero()) return;
  auto it = coords.find(lambda);
  if (it == coords.end()) {
    coords.emplace(lambda, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) coords.erase(it);
}

Series WedgeVector::coordinate(const Partition& lambda) const {
  if (partition_size(lambda) > energy_cap) throw CapError("coordinate above the energy cap");
  auto it = coords.find(lambda);
  return it == coords.end() ? Series(Caps::exact()) : it->second;
}

std::string WedgeVector::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [lambda, c] : coords) {
    os << (first ? "" : " + ") << '[' << c.to_string() << "] v" << hodgekit::to_string(lambda);
    first = false;
  }
  if (first) os << '0';
  return os.str();
}

// ------------------------------------------------------------------------ ZOp

namespace {

using Poly = ZOp::Poly;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_add(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  trim(a);
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  trim(c);
  return c;
}

// P(D + s)
Poly poly_shift(const Poly& p, int s) {
  Poly out(p.size(), Rational(0));
  for (std::size_t d = 0; d < p.size(); ++d) {
    Rational sp = 1;
    for (std::size_t i = 0; i <= d; ++i) {
      // coefficient of D^{d-i}: binom(d, i) s^i
      out[d - i] += p[d] * Rational(binomial(static_cast<long>(d), static_cast<long>(i))) * sp;
      sp *= s;
    }
  }
  trim(out);
  return out;
}

}  // namespace

ZOp ZOp::term(int m, Poly poly) {
  ZOp z;
  z.add_part(m, poly);
  return z;
}

ZOp ZOp::z_power(int m) { return term(m, {Rational(1)}); }

ZOp ZOp::euler() { return term(0, {Rational(0), Rational(1)}); }

ZOp ZOp::from_spec(const OperatorSpec& spec) {
  const int m = spec.index();
  switch (spec.kind()) {
    case OperatorSpec::Kind::A:
      return z_power(m);
    case OperatorSpec::Kind::Lambda:
      return term(m, {frac(m + 1, 2), Rational(1)});
    case OperatorSpec::Kind::M:
      return term(m, {frac((m + 1) * (m + 2), 12), frac(m + 1, 2), frac(1, 2)});
    case OperatorSpec::Kind::CutJoin:
      return term(0, {frac(1, 6), frac(1, 2), frac(1, 2)});
    case OperatorSpec::Kind::LinComb: {
      ZOp out;
      for (const auto& [c, part] : spec.parts()) {
        const auto& terms = c.terms();
        if (terms.size() > 1 || (terms.size() == 1 && !terms.begin()->first.is_one()))
          throw std::invalid_argument("z-side operators need rational coefficients");
        if (terms.empty()) continue;
        ZOp z = from_spec(part);
        z *= terms.begin()->second;
        out += z;
      }
      return out;
    }
    case OperatorSpec::Kind::Custom:
      break;
  }
  throw std::invalid_argument("no z-side form for a custom operator");
}

void ZOp::add_part(int m, const Poly& p) {
  Poly sum = poly_add(parts_.count(m) ? parts_[m] : Poly{}, p);
  if (sum.empty())
    parts_.erase(m);
  else
    parts_[m] = std::move(sum);
}

ZOp& ZOp::operator+=(const ZOp& o) {
  for (const auto& [m, p] : o.parts_) add_part(m, p);
  return *this;
}

ZOp& ZOp::operator*=(const Rational& c) {
  if (c == 0) {
    parts_.clear();
    return *this;
  }
  for (auto& [m, p] : parts_)
    for (auto& x : p) x *= c;
  return *this;
}

Rational ZOp::eval(const Poly& p, const Rational& k) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * k + *it;
  return acc;
}

// z^a P(D) z^b Q(D) = z^{a+b} P(D+b) Q(D)
ZOp commutator(const ZOp& x, const ZOp& y) {
  ZOp out;
  for (const auto& [a, p] : x.parts())
    for (const auto& [b, q] : y.parts()) {
      Poly back = poly_mul(poly_shift(q, a), p);
      for (auto& c : back) c = -c;
      Poly diff = poly_add(poly_mul(poly_shift(p, b), q), back);
      if (!diff.empty()) out += ZOp::term(a + b, diff);
    }
  return out;
}

// ------------------------------------------------------------------ hat_apply

WedgeVector hat_apply(const ZOp& op, const WedgeVector& v) {
  WedgeVector out;
  out.energy_cap = v.energy_cap;
  for (const auto& [lambda, coef] : v.coords) {
    const int len = static_cast<int>(lambda.size());
    const int size = partition_size(lambda);
    for (const auto& [m, poly] : op.parts()) {
      if (m == 0) {
        Rational diag = 0;
        for (int i = 1; i <= len; ++i) diag += ZOp::eval(poly, lambda[i - 1] - i) - ZOp::eval(poly, -i);
        if (diag != 0) out.add(lambda, diag * coef);
        continue;
      }
      if (size + m > out.energy_cap || size + m < 0) continue;
      const int n = len + std::abs(m);
      std::vector<int> k(n);
      for (int i = 1; i <= n; ++i) k[i - 1] = (i <= len ? lambda[i - 1] : 0) - i;
      for (int i = 0; i < n; ++i) {
        const int nk = k[i] + m;
        if (nk <= -(n + 1)) continue;
        bool clash = false;
        for (int j = 0; j < n && !clash; ++j) clash = j != i && k[j] == nk;
        if (clash) continue;
        const Rational c = ZOp::eval(poly, k[i]);
        if (c == 0) continue;
        std::vector<int> seq = k;
        seq[i] = nk;
        // bubble into decreasing order tracking the sign
        int sign = 1;
        for (int a = i; a > 0 && seq[a] > seq[a - 1]; --a) {
          std::swap(seq[a], seq[a - 1]);
          sign = -sign;
        }
        for (int a = i; a + 1 < n && seq[a] < seq[a + 1]; ++a) {
          std::swap(seq[a], seq[a + 1]);
          sign = -sign;
        }
        Partition mu;
        for (int j = 0; j < n; ++j)
          if (seq[j] + j + 1 > 0) mu.push_back(seq[j] + j + 1);
        out.add(mu, Rational(sign) * c * coef);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------- Schur

namespace {

std::mutex schur_mutex;
std::map<Partition, Series> schur_cache;

Rational z_mu(const Partition& mu) {
  std::map<int, int> mult;
  for (int x : mu) ++mult[x];
  Rational z = 1;
  for (const auto& [k, e] : mult) z *= pow(Rational(k), static_cast<unsigned>(e)) * Rational(factorial(static_cast<unsigned>(e)));
  return z;
}

Monomial p_monomial(const Partition& mu) {
  std::map<int, int> mult;
  for (int x : mu) ++mult[x];
  std::vector<Monomial::VarPower> powers;
  for (const auto& [k, e] : mult) powers.push_back({p(k), e});
  return Monomial::from(std::move(powers));
}

struct SchurInverse {
  std::vector<Partition> parts;
  std::vector<std::vector<Rational>> inv;  // inv[lambda][mu]
};

std::mutex inverse_mutex;
std::map<int, SchurInverse> inverse_cache;

const SchurInverse& schur_inverse(int w) {
  {
    std::lock_guard lock(inverse_mutex);
    if (auto it = inverse_cache.find(w); it != inverse_cache.end()) return it->second;
  }
  SchurInverse si;
  si.parts = partitions_of(w);
  const std::size_t n = si.parts.size();
  // a[mu][lambda] = [p_mu] s_lambda, augmented with the identity
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n, Rational(0)));
  for (std::size_t l = 0; l < n; ++l) {
    const Series s = schur(si.parts[l]);
    for (std::size_t mu = 0; mu < n; ++mu) a[mu][l] = s.coefficient(p_monomial(si.parts[mu]));
  }
  for (std::size_t i = 0; i < n; ++i) a[i][n + i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) throw std::logic_error("Schur transition matrix is singular");
    std::swap(a[piv], a[col]);
    const Rational inv_p = 1 / a[col][col];
    for (auto& x : a[col]) x *= inv_p;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t c = 0; c < 2 * n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  // rows of a now index lambda (unknowns), right block gives coefficients in mu
  si.inv.assign(n, std::vector<Rational>(n));
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t mu = 0; mu < n; ++mu) si.inv[l][mu] = a[l][n + mu];
  std::lock_guard lock(inverse_mutex);
  return inverse_cache.emplace(w, std::move(si)).first->second;
}

}  // namespace

Series schur(const Partition& lambda) {
  {
    std::lock_guard lock(schur_mutex);
    if (auto it = schur_cache.find(lambda); it != schur_cache.end()) return it->second;
  }
  const int w = partition_size(lambda);
  Series s(Caps::weight(w));
  for (const Partition& mu : partitions_of(w)) {
    WedgeVector v = WedgeVector::basis(lambda, w);
    for (int part : mu) v = hat_apply(ZOp::z_power(-part), v);
    const Series c = v.coordinate({});
    if (c.is_zero()) continue;
    s.add_term(p_monomial(mu), c.constant_term() / z_mu(mu));
  }
  std::lock_guard lock(schur_mutex);
  return schur_cache.emplace(lambda, s).first->second;
}

Series fermion_to_boson(const WedgeVector& v) {
  Series out(Caps::exact().with_weight(v.energy_cap));
  const Caps caps = Caps::exact().with_weight(v.energy_cap);
  for (const auto& [lambda, c] : v.coords) out += multiply(c, schur(lambda).relabel_caps(caps), caps);
  return out;
}

WedgeVector boson_to_fermion(const Series& s, int energy_cap) {
  if (s.caps().max_weight < energy_cap) throw CapError("series is not known up to the energy cap");
  WedgeVector out;
  out.energy_cap = energy_cap;
  // group by variable part
  std::map<Monomial, Series> by_vars;
  for (const auto& [m, c] : s.terms()) {
    if (m.weight() > energy_cap) break;
    for (const auto& [v, e] : m.vars())
      if (v.family != Family::P) throw std::invalid_argument("boson_to_fermion expects a series in p");
    auto [it, fresh] = by_vars.try_emplace(m.variable_part(), Series(Caps::exact()));
    it->second.add_term(m.param_part(), c);
  }
  for (int w = 0; w <= energy_cap; ++w) {
    const SchurInverse& si = schur_inverse(w);
    std::vector<const Series*> col(si.parts.size(), nullptr);
    bool any = false;
    for (std::size_t mu = 0; mu < si.parts.size(); ++mu)
      if (auto it = by_vars.find(p_monomial(si.parts[mu])); it != by_vars.end()) {
        col[mu] = &it->second;
        any = true;
      }
    if (!any) continue;
    for (std::size_t l = 0; l < si.parts.size(); ++l) {
      Series c(Caps::exact());
      for (std::size_t mu = 0; mu < si.parts.size(); ++mu)
        if (col[mu] && si.inv[l][mu] != 0) c += si.inv[l][mu] * *col[mu];
      out.add(si.parts[l], c);
    }
  }
  return out;
}

// ---------------------------------------------------------------- table check

bool table_check(const OperatorSpec& spec, int energy_cap, std::string* detail) {
  const ZOp z = ZOp::from_spec(spec);
  const int low = spec.max_lowering();
  const DiffOp op = materialize(spec, Family::P, energy_cap + low);
  for (int w = 0; w <= energy_cap; ++w)
    for (const Partition& lambda : partitions_of(w)) {
      const WedgeVector lhs = hat_apply(z, WedgeVector::basis(lambda, energy_cap));
      const Series s = schur(lambda).relabel_caps(Caps::weight(energy_cap + low));
      const WedgeVector rhs = boson_to_fermion(apply(op, s), energy_cap);
      if (!(lhs == rhs)) {
        if (detail)
          *detail = spec.to_string() + " on v" + to_string(lambda) + ": wedge " + lhs.to_string() + " vs boson " +
                    rhs.to_string();
        return false;
      }
    }
  return true;
}

// ------------------------------------------------------------- decomposables

WedgeVector decomposable_to_coords(const std::vector<LaurentZ>& factors, int energy_cap) {
  for (std::size_t j = 0; j < factors.size(); ++j) {
    const int expect = -static_cast<int>(j + 1);
    const LaurentZ& f = factors[j];
    if (f.order() != expect || !(f.coefficient(expect) == Series::constant(1, Caps::exact())))
      throw std::invalid_argument("factor " + std::to_string(j + 1) + " is not z^{-j} + higher powers");
    if (f.z_max() < energy_cap - 1) throw CapError("factor not known to the needed z-power");
  }
  auto entry = [&](int row_exp, int col) -> Series {
    if (col <= static_cast<int>(factors.size())) return factors[static_cast<std::size_t>(col - 1)].coefficient(row_exp);
    return row_exp == -col ? param_one() : Series(Caps::exact());
  };
  WedgeVector out;
  out.energy_cap = energy_cap;
  for (int w = 0; w <= energy_cap; ++w)
    for (const Partition& lambda : partitions_of(w)) {
      const int len = static_cast<int>(lambda.size());
      if (len == 0) {
        out.add(lambda, param_one());
        continue;
      }
      std::vector<std::vector<Series>> a(len, std::vector<Series>(len));
      for (int i = 0; i < len; ++i)
        for (int j = 0; j < len; ++j) a[i][j] = entry(lambda[i] - (i + 1), j + 1);
      // determinant by expansion over column subsets
      std::vector<Series> d(1U << len, Series(Caps::exact()));
      d[0] = param_one();
      for (unsigned set = 0; set < (1U << len); ++set) {
        if (d[set].is_zero()) continue;
        const int row = __builtin_popcount(set);
        if (row == len) continue;
        for (int j = 0; j < len; ++j) {
          if (set & (1U << j) || a[row][j].is_zero()) continue;
          const int above = __builtin_popcount(set >> (j + 1));
          Series term = d[set] * a[row][j];
          if (above % 2) term = -term;
          d[set | (1U << j)] += term;
        }
      }
      out.add(lambda, d[(1U << len) - 1]);
    }
  return out;
}

std::vector<LaurentZ> random_decomposable_factors(std::uint64_t seed, int count, int z_max) {
  std::mt19937_64 rng(seed);
  std::vector<LaurentZ> out;
  for (int j = 1; j <= count; ++j) {
    LaurentZ phi(z_max);
    phi.add(-j, Rational(1));
    for (int s = 1; s - j <= z_max; ++s) {
      const long num = static_cast<long>(rng() % 7) - 3;
      const long den = static_cast<long>(rng() % 3) + 1;
      phi.add(s - j, frac(num, den));
    }
    out.push_back(std::move(phi));
  }
  return out;
}

std::vector<LaurentZ> hurwitz_wedge_factors(int count, int beta_cap, int z_max) {
  const Caps pc = Caps::exact().with_param(Param::Beta, 0, beta_cap);
  std::vector<LaurentZ> out;
  for (int k = 1; k <= count; ++k) {
    LaurentZ phi(z_max, pc);
    for (int i = 0; i - k <= z_max; ++i) {
      // exp(beta * e) truncated at beta_cap
      const Rational e = frac(i * (i - 2 * k + 1), 2);
      Series c(pc);
      Rational term = 1;
      for (int n = 0; n <= beta_cap; ++n) {
        if (n > 0) term *= e / n;
        c.add_term(Monomial::of(Param::Beta, n), term);
      }
      c *= 1 / Rational(factorial(static_cast<unsigned>(i)));
      phi.add(i - k, c);
    }
    out.push_back(std::move(phi));
  }
  return out;
}

}  // namespace hodgekit
