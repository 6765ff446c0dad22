#include "hodgekit/series.hpp"

#include <algorithm>
#include <sstream>

namespace hodgekit {

char family_symbol(Family f) {
  switch (f) {
    case Family::P: return 'p';
    case Family::Q: return 'q';
    case Family::R: return 'r';
    case Family::T: return 't';
  }
  return '?';
}

const char* param_name(Param p) {
  switch (p) {
    case Param::Beta: return "beta";
    case Param::U: return "u";
    case Param::V: return "v";
    case Param::Gamma: return "gamma";
  }
  return "?";
}

// ---------------------------------------------------------------- Caps

bool Caps::keeps(const Monomial& m) const {
  if (m.weight() > max_weight || m.degree() > max_degree) return false;
  for (std::size_t i = 0; i < kParamCount; ++i)
    if (m.params()[i] > windows[i].max) return false;
  return true;
}

void Caps::check_window(const Monomial& m) const {
  for (std::size_t i = 0; i < kParamCount; ++i) {
    if (m.params()[i] < windows[i].min) {
      throw CapError("parameter window overflow: " + std::string(param_name(static_cast<Param>(i))) +
                     "^" + std::to_string(m.params()[i]) + " below window minimum " +
                     std::to_string(windows[i].min));
    }
  }
}

Caps intersect(const Caps& a, const Caps& b) {
  Caps c;
  c.max_weight = std::min(a.max_weight, b.max_weight);
  c.max_degree = std::min(a.max_degree, b.max_degree);
  for (std::size_t i = 0; i < kParamCount; ++i) {
    c.windows[i].min = std::min(a.windows[i].min, b.windows[i].min);
    c.windows[i].max = std::min(a.windows[i].max, b.windows[i].max);
  }
  return c;
}

std::string to_string(const Caps& c) {
  auto bound = [](int v) { return v >= kUnbounded ? std::string("inf") : std::to_string(v); };
  std::ostringstream os;
  os << "weight<=" << bound(c.max_weight) << " degree<=" << bound(c.max_degree);
  for (std::size_t i = 0; i < kParamCount; ++i) {
    const auto& w = c.windows[i];
    os << ' ' << param_name(static_cast<Param>(i)) << "["
       << (w.min <= -kUnbounded ? std::string("-inf") : std::to_string(w.min)) << "," << bound(w.max) << "]";
  }
  return os.str();
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::of(Variable v, int e) {
  Monomial m;
  if (e != 0) m.vars_.push_back({v, e});
  m.recompute();
  return m;
}

Monomial Monomial::of(Param p, int e) {
  Monomial m;
  m.params_[static_cast<std::size_t>(p)] = e;
  return m;
}

Monomial Monomial::from(std::vector<VarPower> powers, ParamExponents params) {
  std::sort(powers.begin(), powers.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Monomial m;
  for (const auto& [v, e] : powers) {
    if (e < 0) throw std::invalid_argument("negative variable exponent");
    if (e == 0) continue;
    if (!m.vars_.empty() && m.vars_.back().first == v)
      m.vars_.back().second += e;
    else
      m.vars_.push_back({v, e});
  }
  m.params_ = params;
  m.recompute();
  return m;
}

void Monomial::recompute() {
  weight_ = 0;
  degree_ = 0;
  for (const auto& [v, e] : vars_) {
    weight_ += v.weight() * e;
    degree_ += e;
  }
}

int Monomial::exponent(Variable v) const {
  for (const auto& [w, e] : vars_)
    if (w == v) return e;
  return 0;
}

bool Monomial::is_one() const {
  if (!vars_.empty()) return false;
  return std::all_of(params_.begin(), params_.end(), [](int e) { return e == 0; });
}

Monomial Monomial::variable_part() const {
  Monomial m = *this;
  m.params_ = {};
  return m;
}

Monomial Monomial::param_part() const {
  Monomial m;
  m.params_ = params_;
  return m;
}

std::optional<std::pair<Monomial, int>> Monomial::divide(Variable v) const {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].first != v) continue;
    Monomial m = *this;
    const int e = vars_[i].second;
    if (e == 1)
      m.vars_.erase(m.vars_.begin() + static_cast<std::ptrdiff_t>(i));
    else
      m.vars_[i].second -= 1;
    m.weight_ -= v.weight();
    m.degree_ -= 1;
    return std::make_pair(std::move(m), e);
  }
  return std::nullopt;
}

Monomial Monomial::with_param(Param p, int e) const {
  Monomial m = *this;
  m.params_[static_cast<std::size_t>(p)] = e;
  return m;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m;
  m.vars_.reserve(a.vars_.size() + b.vars_.size());
  auto i = a.vars_.begin();
  auto j = b.vars_.begin();
  while (i != a.vars_.end() || j != b.vars_.end()) {
    if (j == b.vars_.end() || (i != a.vars_.end() && i->first < j->first)) {
      m.vars_.push_back(*i++);
    } else if (i == a.vars_.end() || j->first < i->first) {
      m.vars_.push_back(*j++);
    } else {
      m.vars_.push_back({i->first, i->second + j->second});
      ++i;
      ++j;
    }
  }
  for (std::size_t k = 0; k < kParamCount; ++k) m.params_[k] = a.params_[k] + b.params_[k];
  m.weight_ = a.weight_ + b.weight_;
  m.degree_ = a.degree_ + b.degree_;
  return m;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  if (auto c = a.weight_ <=> b.weight_; c != 0) return c;
  if (auto c = a.vars_ <=> b.vars_; c != 0) return c;
  return a.params_ <=> b.params_;
}

std::string Monomial::to_string() const {
  std::string out;
  auto append = [&out](const std::string& base, int e) {
    if (!out.empty()) out += '*';
    out += base;
    if (e != 1) out += "^" + std::to_string(e);
  };
  for (const auto& [v, e] : vars_) append(std::string(1, family_symbol(v.family)) + std::to_string(v.index), e);
  for (std::size_t k = 0; k < kParamCount; ++k)
    if (params_[k] != 0) append(param_name(static_cast<Param>(k)), params_[k]);
  return out.empty() ? std::string("1") : out;
}

// ---------------------------------------------------------------- Series

Series Series::constant(const Rational& c, Caps caps) {
  Series s(caps);
  s.add_term(Monomial{}, c);
  return s;
}

Series Series::variable(Variable v, Caps caps) {
  Series s(caps);
  s.add_term(Monomial::of(v), 1);
  return s;
}

Series Series::parameter(Param p, int e, Caps caps) {
  Series s(caps);
  s.add_term(Monomial::of(p, e), 1);
  return s;
}

Series Series::term(const Monomial& m, const Rational& c, Caps caps) {
  Series s(caps);
  s.add_term(m, c);
  return s;
}

Rational Series::coefficient(const Monomial& m) const {
  if (!caps_.keeps(m)) throw CapError("coefficient of " + m.to_string() + " is outside caps (" + hodgekit::to_string(caps_) + ")");
  for (std::size_t i = 0; i < kParamCount; ++i)
    if (m.params()[i] < caps_.windows[i].min)
      throw CapError("coefficient of " + m.to_string() + " is below the parameter window");
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational Series::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

void Series::add_term(const Monomial& m, const Rational& c) {
  if (c == 0 || !caps_.keeps(m)) return;
  caps_.check_window(m);
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Series Series::truncated(const Caps& caps) const {
  Series s(intersect(caps_, caps));
  for (const auto& [m, c] : terms_)
    if (s.caps_.keeps(m)) s.terms_.emplace_hint(s.terms_.end(), m, c);
  return s;
}

Series Series::relabel_caps(const Caps& caps) const {
  Series s = truncated(caps);
  s.caps_ = caps;
  return s;
}

Series Series::weight_block(int w) const {
  return filtered([w](const Monomial& m) { return m.weight() == w; });
}

Series Series::degree_block(int d) const {
  return filtered([d](const Monomial& m) { return m.degree() == d; });
}

Series Series::filtered(const std::function<bool(const Monomial&)>& keep) const {
  Series s(caps_);
  for (const auto& [m, c] : terms_)
    if (keep(m)) s.terms_.emplace_hint(s.terms_.end(), m, c);
  return s;
}

Series& Series::operator+=(const Series& o) {
  caps_ = intersect(caps_, o.caps_);
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (!caps_.keeps(it->first))
      it = terms_.erase(it);
    else
      ++it;
  }
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Series& Series::operator-=(const Series& o) { return *this += -o; }

Series& Series::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Series Series::operator-() const {
  Series s = *this;
  for (auto& [m, v] : s.terms_) v = -v;
  return s;
}

Series Series::derivative(Variable v) const {
  Caps caps = caps_;
  if (caps.max_weight < kUnbounded) caps.max_weight -= v.weight();
  if (caps.max_degree < kUnbounded) caps.max_degree -= 1;
  Series s(caps);
  for (const auto& [m, c] : terms_) {
    auto d = m.divide(v);
    if (!d) continue;
    s.add_term(d->first, c * d->second);
  }
  return s;
}

Series Series::derivative(const std::vector<Variable>& vs) const {
  Series s = *this;
  for (const auto& v : vs) s = s.derivative(v);
  return s;
}

Series Series::param_derivative(Param p) const {
  Caps caps = caps_;
  auto& w = caps.windows[static_cast<std::size_t>(p)];
  if (w.max < kUnbounded) w.max -= 1;
  if (w.min > -kUnbounded) w.min -= 1;
  Series s(caps);
  for (const auto& [m, c] : terms_) {
    const int e = m.param(p);
    if (e == 0) continue;
    s.add_term(m.with_param(p, e - 1), c * e);
  }
  return s;
}

Series Series::times_param(Param p, int e) const {
  Caps caps = caps_;
  auto& w = caps.windows[static_cast<std::size_t>(p)];
  if (w.max < kUnbounded) w.max += e;
  if (w.min > -kUnbounded) w.min += e;
  Series s(caps);
  for (const auto& [m, c] : terms_) s.add_term(m.with_param(p, m.param(p) + e), c);
  return s;
}

std::vector<Variable> Series::variables() const {
  std::vector<Variable> out;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m.vars()) out.push_back(v);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int Series::max_term_weight() const { return terms_.empty() ? 0 : terms_.rbegin()->first.weight(); }

std::string Series::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += hodgekit::to_string(c);
    if (!m.is_one()) out += "*" + m.to_string();
  }
  return out;
}

Series operator+(const Series& a, const Series& b) {
  Series s = a;
  s += b;
  return s;
}

Series operator-(const Series& a, const Series& b) {
  Series s = a;
  s -= b;
  return s;
}

Series multiply(const Series& a, const Series& b, const Caps& caps) {
  const Caps out_caps = intersect(intersect(a.caps(), b.caps()), caps);
  Series s(out_caps);
  if (a.is_zero() || b.is_zero()) return s;
  std::map<Monomial, Rational> acc;
  Rational prod;
  for (const auto& [ma, ca] : a.terms()) {
    if (ma.weight() > out_caps.max_weight) break;
    const int room = out_caps.max_weight - ma.weight();
    for (const auto& [mb, cb] : b.terms()) {
      if (mb.weight() > room) break;
      if (ma.degree() + mb.degree() > out_caps.max_degree) continue;
      Monomial m = ma * mb;
      if (!out_caps.keeps(m)) continue;
      out_caps.check_window(m);
      mpq_mul(prod.get_mpq_t(), ca.get_mpq_t(), cb.get_mpq_t());
      acc[std::move(m)] += prod;
    }
  }
  for (auto& [m, c] : acc)
    if (c != 0) s.add_term(m, c);
  return s;
}

Series operator*(const Series& a, const Series& b) { return multiply(a, b, Caps::exact()); }

Series operator*(const Rational& c, const Series& a) {
  Series s = a;
  s *= c;
  return s;
}

Series operator*(const Series& a, const Rational& c) { return c * a; }

Series power(const Series& a, unsigned e) {
  Series result = Series::constant(1, a.caps());
  Series base = a;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

namespace {

// A grading that is a derivation-compatible additive degree on monomials:
// either the weight or the variable degree, whichever is capped.
enum class Grading { Weight, Degree, None };

Grading pick_grading(const Series& a) {
  const bool has_param_only = std::any_of(a.terms().begin(), a.terms().end(), [](const auto& kv) {
    return !kv.first.has_variables() && !kv.first.is_one();
  });
  if (has_param_only) return Grading::None;
  if (a.caps().max_weight < kUnbounded) return Grading::Weight;
  if (a.caps().max_degree < kUnbounded) return Grading::Degree;
  return Grading::None;
}

int grade_of(const Monomial& m, Grading g) { return g == Grading::Weight ? m.weight() : m.degree(); }

std::vector<Series> split_blocks(const Series& a, Grading g, int top) {
  std::vector<Series> blocks(static_cast<std::size_t>(top + 1), Series(a.caps()));
  for (const auto& [m, c] : a.terms()) {
    const int k = grade_of(m, g);
    if (k <= top) blocks[static_cast<std::size_t>(k)].add_term(m, c);
  }
  return blocks;
}

constexpr int kSeriesLoopGuard = 4096;

}  // namespace

Series exp(const Series& a) {
  if (a.constant_term() != 0) throw std::domain_error("exp of a series with nonzero constant term");
  const Grading g = pick_grading(a);
  if (g == Grading::None) {
    Series result = Series::constant(1, a.caps());
    Series term = result;
    for (int n = 1; n < kSeriesLoopGuard; ++n) {
      term = term * a;
      term *= frac(1, n);
      if (term.is_zero()) return result;
      result += term;
    }
    throw CapError("exp does not terminate within caps; bound the weight, degree or parameter windows");
  }
  const int top = g == Grading::Weight ? a.caps().max_weight : a.caps().max_degree;
  const auto blocks = split_blocks(a, g, top);
  // w E_w = sum_{k=1}^{w} k A_k E_{w-k}
  std::vector<Series> e(static_cast<std::size_t>(top + 1), Series(a.caps()));
  e[0] = Series::constant(1, a.caps());
  for (int w = 1; w <= top; ++w) {
    Series acc(a.caps());
    for (int k = 1; k <= w; ++k) {
      const auto& ak = blocks[static_cast<std::size_t>(k)];
      const auto& ew = e[static_cast<std::size_t>(w - k)];
      if (ak.is_zero() || ew.is_zero()) continue;
      acc += Rational(k) * (ak * ew);
    }
    acc *= frac(1, w);
    e[static_cast<std::size_t>(w)] = std::move(acc);
  }
  Series result(a.caps());
  for (const auto& blk : e) result += blk;
  return result;
}

Series log(const Series& a) {
  if (a.constant_term() != 1) throw std::domain_error("log requires constant term exactly 1");
  const Grading g = pick_grading(a);
  if (g == Grading::None) {
    Series x = a - Series::constant(1, a.caps());
    Series result(a.caps());
    Series term = Series::constant(1, a.caps());
    for (int n = 1; n < kSeriesLoopGuard; ++n) {
      term = term * x;
      if (term.is_zero()) return result;
      result += frac(n % 2 == 1 ? 1 : -1, n) * term;
    }
    throw CapError("log does not terminate within caps; bound the weight, degree or parameter windows");
  }
  const int top = g == Grading::Weight ? a.caps().max_weight : a.caps().max_degree;
  const auto blocks = split_blocks(a, g, top);
  // w F_w = w A_w - sum_{k=1}^{w-1} k F_k A_{w-k}
  std::vector<Series> f(static_cast<std::size_t>(top + 1), Series(a.caps()));
  for (int w = 1; w <= top; ++w) {
    Series acc = Rational(w) * blocks[static_cast<std::size_t>(w)];
    for (int k = 1; k < w; ++k) {
      const auto& fk = f[static_cast<std::size_t>(k)];
      const auto& aw = blocks[static_cast<std::size_t>(w - k)];
      if (fk.is_zero() || aw.is_zero()) continue;
      acc -= Rational(k) * (fk * aw);
    }
    acc *= frac(1, w);
    f[static_cast<std::size_t>(w)] = std::move(acc);
  }
  Series result(a.caps());
  for (const auto& blk : f) result += blk;
  return result;
}

Series substitute(const Series& s, const std::map<Variable, Series>& images, const Caps& target) {
  const Caps caps = intersect(s.caps(), target);
  // Group terms sharing a variable part so each image product is built once.
  std::map<Monomial, Series> by_vars;
  for (const auto& [m, c] : s.terms()) {
    auto [it, ins] = by_vars.try_emplace(m.variable_part(), Caps::exact());
    it->second.add_term(m.param_part(), c);
  }
  std::map<Variable, std::vector<Series>> power_cache;
  auto image_power = [&](Variable v, int e) -> const Series& {
    auto& powers = power_cache[v];
    if (powers.empty()) {
      if (auto it = images.find(v); it != images.end())
        powers.push_back(it->second.truncated(caps));
      else
        powers.push_back(Series::variable(v, caps));
    }
    while (static_cast<int>(powers.size()) < e) powers.push_back(multiply(powers.back(), powers.front(), caps));
    return powers[static_cast<std::size_t>(e - 1)];
  };
  Series out(caps);
  for (const auto& [vars, params] : by_vars) {
    Series prod = Series::constant(1, caps);
    for (const auto& [v, e] : vars.vars()) {
      prod = multiply(prod, image_power(v, e), caps);
      if (prod.is_zero()) break;
    }
    if (prod.is_zero()) continue;
    out += multiply(prod, params, caps);
  }
  return out;
}

Series transform(const Series& s,
                 const std::function<std::optional<std::pair<Monomial, Rational>>(const Monomial&)>& f,
                 const Caps& target) {
  Series out(target);
  for (const auto& [m, c] : s.terms()) {
    auto img = f(m);
    if (!img) continue;
    out.add_term(img->first, c * img->second);
  }
  return out;
}

}  // namespace hodgekit
