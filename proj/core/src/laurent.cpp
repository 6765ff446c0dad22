#include "hodgekit/laurent.hpp"

#include <algorithm>
#include <stdexcept>

namespace hodgekit {

LaurentZ LaurentZ::monomial(int k, const Rational& c, int z_max, Caps param_caps) {
  LaurentZ l(z_max, param_caps);
  l.add(k, c);
  return l;
}

LaurentZ LaurentZ::monomial(int k, const Series& c, int z_max, Caps param_caps) {
  LaurentZ l(z_max, param_caps);
  l.add(k, c);
  return l;
}

int LaurentZ::order() const { return terms_.empty() ? z_max_ + 1 : terms_.begin()->first; }

Series LaurentZ::coefficient(int k) const {
  if (k > z_max_) throw CapError("z^" + std::to_string(k) + " is above the z cap " + std::to_string(z_max_));
  auto it = terms_.find(k);
  return it == terms_.end() ? Series(caps_) : it->second;
}

Rational LaurentZ::coefficient(int k, const Monomial& params) const {
  if (k > z_max_) throw CapError("z^" + std::to_string(k) + " is above the z cap " + std::to_string(z_max_));
  auto it = terms_.find(k);
  return it == terms_.end() ? Rational(0) : it->second.coefficient(params);
}

void LaurentZ::add(int k, const Series& c) {
  if (k > z_max_ || c.is_zero()) return;
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    Series t = c.truncated(caps_).relabel_caps(caps_);
    if (!t.is_zero()) terms_.emplace(k, std::move(t));
    return;
  }
  it->second += c.truncated(caps_);
  it->second = it->second.relabel_caps(caps_);
  if (it->second.is_zero()) terms_.erase(it);
}

void LaurentZ::add(int k, const Rational& c) { add(k, Series::constant(c, caps_)); }

LaurentZ LaurentZ::truncated(int z_max) const {
  LaurentZ l(std::min(z_max, z_max_), caps_);
  for (const auto& [k, c] : terms_)
    if (k <= l.z_max_) l.terms_.emplace(k, c);
  return l;
}

LaurentZ LaurentZ::with_param_caps(const Caps& caps) const {
  LaurentZ l(z_max_, intersect(caps_, caps));
  for (const auto& [k, c] : terms_) l.add(k, c);
  return l;
}

LaurentZ& LaurentZ::operator+=(const LaurentZ& o) {
  z_max_ = std::min(z_max_, o.z_max_);
  caps_ = intersect(caps_, o.caps_);
  std::map<int, Series> old;
  old.swap(terms_);
  for (const auto& [k, c] : old) add(k, c);
  for (const auto& [k, c] : o.terms_) add(k, c);
  return *this;
}

LaurentZ& LaurentZ::operator-=(const LaurentZ& o) { return *this += -o; }

LaurentZ& LaurentZ::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, s] : terms_) s *= c;
  return *this;
}

LaurentZ LaurentZ::operator-() const {
  LaurentZ l = *this;
  for (auto& [k, s] : l.terms_) s = -s;
  return l;
}

LaurentZ LaurentZ::scaled(const Series& c) const {
  LaurentZ l(z_max_, caps_);
  for (const auto& [k, s] : terms_) l.add(k, multiply(s, c, caps_));
  return l;
}

LaurentZ LaurentZ::shifted(int k) const {
  LaurentZ l(z_max_ + k, caps_);
  for (const auto& [e, s] : terms_) l.terms_.emplace(e + k, s);
  return l;
}

LaurentZ LaurentZ::euler() const {
  LaurentZ l(z_max_, caps_);
  for (const auto& [k, s] : terms_)
    if (k != 0) l.terms_.emplace(k, Rational(k) * s);
  return l;
}

LaurentZ LaurentZ::derivative() const {
  LaurentZ l(z_max_ - 1, caps_);
  for (const auto& [k, s] : terms_)
    if (k != 0) l.terms_.emplace(k - 1, Rational(k) * s);
  return l;
}

LaurentZ LaurentZ::param_derivative(Param p) const {
  Caps caps = caps_;
  auto& w = caps.windows[static_cast<std::size_t>(p)];
  if (w.max < kUnbounded) w.max -= 1;
  LaurentZ l(z_max_, caps);
  for (const auto& [k, s] : terms_) l.add(k, s.param_derivative(p).relabel_caps(caps));
  return l;
}

std::string LaurentZ::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [k, s] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + s.to_string() + ")";
    if (k != 0) out += "*z^" + std::to_string(k);
  }
  return out;
}

LaurentZ operator+(const LaurentZ& a, const LaurentZ& b) {
  LaurentZ l = a;
  l += b;
  return l;
}

LaurentZ operator-(const LaurentZ& a, const LaurentZ& b) {
  LaurentZ l = a;
  l -= b;
  return l;
}

LaurentZ operator*(const LaurentZ& a, const LaurentZ& b) {
  const Caps caps = intersect(a.param_caps(), b.param_caps());
  const int zmax = std::min(a.z_max() + b.order(), b.z_max() + a.order());
  LaurentZ l(zmax, caps);
  for (const auto& [i, ci] : a.terms()) {
    for (const auto& [j, cj] : b.terms()) {
      if (i + j > zmax) break;
      l.add(i + j, multiply(ci, cj, caps));
    }
  }
  return l;
}

LaurentZ operator*(const Rational& c, const LaurentZ& a) {
  LaurentZ l = a;
  l *= c;
  return l;
}

namespace {

Rational rational_constant(const Series& s, const char* what) {
  for (const auto& [m, c] : s.terms())
    if (!m.is_one()) throw std::invalid_argument(std::string(what) + ": leading coefficient must be a rational constant");
  const Rational c = s.constant_term();
  if (c == 0) throw std::invalid_argument(std::string(what) + ": leading coefficient vanishes");
  return c;
}

}  // namespace

LaurentZ inverse(const LaurentZ& a) {
  if (a.order() != 0) throw std::invalid_argument("inverse: series must start at z^0");
  const Rational a0 = rational_constant(a.coefficient(0), "inverse");
  const Caps& caps = a.param_caps();
  std::vector<Series> b;
  b.push_back(Series::constant(1 / a0, caps));
  for (int k = 1; k <= a.z_max(); ++k) {
    Series acc(caps);
    for (const auto& [j, aj] : a.terms()) {
      if (j == 0) continue;
      if (j > k) break;
      acc += multiply(aj, b[static_cast<std::size_t>(k - j)], caps);
    }
    acc *= -1 / a0;
    b.push_back(std::move(acc));
  }
  LaurentZ l(a.z_max(), caps);
  for (int k = 0; k <= a.z_max(); ++k) l.add(k, b[static_cast<std::size_t>(k)]);
  return l;
}

LaurentZ power(const LaurentZ& a, int n) {
  if (n == 0) return LaurentZ::monomial(0, 1, a.z_max() - a.order(), a.param_caps());
  if (n > 0) {
    LaurentZ result = a;
    for (int i = 1; i < n; ++i) result = result * a;
    return result;
  }
  const int k = a.order();
  const Rational c = rational_constant(a.coefficient(k), "power");
  LaurentZ unit = a.shifted(-k);
  unit *= 1 / c;
  const LaurentZ inv = inverse(unit);
  LaurentZ result = inv;
  for (int i = 1; i < -n; ++i) result = result * inv;
  Rational scale = 1;
  for (int i = 0; i < -n; ++i) scale /= c;
  result *= scale;
  return result.shifted(k * n);
}

LaurentZ exp(const LaurentZ& a) {
  if (a.order() < 1) throw std::invalid_argument("exp: series must have positive z-order");
  const Caps& caps = a.param_caps();
  std::vector<Series> e;
  e.push_back(Series::constant(1, caps));
  // k E_k = sum_{j=1}^{k} j A_j E_{k-j}
  for (int k = 1; k <= a.z_max(); ++k) {
    Series acc(caps);
    for (const auto& [j, aj] : a.terms()) {
      if (j > k) break;
      acc += Rational(j) * multiply(aj, e[static_cast<std::size_t>(k - j)], caps);
    }
    acc *= frac(1, k);
    e.push_back(std::move(acc));
  }
  LaurentZ l(a.z_max(), caps);
  for (int k = 0; k <= a.z_max(); ++k) l.add(k, e[static_cast<std::size_t>(k)]);
  return l;
}

LaurentZ binomial_power(const LaurentZ& a, const Rational& alpha) {
  if (a.order() < 1) throw std::invalid_argument("binomial_power: series must have positive z-order");
  LaurentZ result = LaurentZ::monomial(0, 1, a.z_max(), a.param_caps());
  LaurentZ pw = result;
  for (unsigned n = 1; static_cast<int>(n) <= a.z_max(); ++n) {
    pw = pw * a;
    if (pw.is_zero()) break;
    result += binomial(alpha, n) * pw;
  }
  return result;
}

LaurentZ compose(const LaurentZ& f, const LaurentZ& g, int z_max) {
  if (g.order() != 1) throw std::invalid_argument("compose: inner series must start at z^1");
  const Caps caps = intersect(f.param_caps(), g.param_caps());
  const int lo = f.order();
  const int out_max = std::min({z_max, f.z_max(), lo + g.z_max() - 1});
  LaurentZ result(out_max, caps);
  if (f.is_zero()) return result;
  const LaurentZ unit = g.shifted(-1).truncated(out_max - lo);
  const int hi = std::min(f.terms().rbegin()->first, out_max);
  // unit^k for every exponent in f
  std::map<int, LaurentZ> powers;
  powers.emplace(0, LaurentZ::monomial(0, 1, unit.z_max(), caps));
  if (hi >= 1) {
    LaurentZ pw = powers.at(0);
    for (int k = 1; k <= hi; ++k) {
      pw = (pw * unit).truncated(out_max - k);
      powers.emplace(k, pw);
    }
  }
  if (lo < 0) {
    const LaurentZ inv = inverse(unit);
    LaurentZ pw = powers.at(0);
    for (int k = -1; k >= lo; --k) {
      pw = (pw * inv).truncated(out_max - k);
      powers.emplace(k, pw);
    }
  }
  for (const auto& [k, c] : f.terms()) {
    if (k > out_max) break;
    result += powers.at(k).scaled(c).shifted(k).truncated(out_max);
  }
  return result;
}

LaurentZ lagrange_invert(const LaurentZ& x_of_z, int z_max) {
  if (x_of_z.order() != 1 || rational_constant(x_of_z.coefficient(1), "lagrange_invert") != 1)
    throw std::invalid_argument("lagrange_invert: series must be z + higher order");
  // [x^n] z(x) = (1/n) [z^{n-1}] (z/x(z))^n
  const LaurentZ w = inverse(x_of_z.shifted(-1).truncated(z_max - 1));
  LaurentZ result(z_max, x_of_z.param_caps());
  LaurentZ pw = LaurentZ::monomial(0, 1, w.z_max(), w.param_caps());
  for (int n = 1; n <= z_max; ++n) {
    pw = (pw * w).truncated(z_max - 1);
    Series c = pw.coefficient(n - 1);
    c *= frac(1, n);
    result.add(n, c);
  }
  return result;
}

}  // namespace hodgekit
