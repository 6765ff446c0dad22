#include "hodgekit/diffop.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hodgekit {

namespace {

const Caps kParamCaps = Caps::exact();

Integer falling(int e, int k) {
  Integer r = 1;
  for (int i = 0; i < k; ++i) r *= e - i;
  return r;
}

/// m / d as multisets with the derivative factor prod falling(e_v, k_v).
std::optional<std::pair<Monomial, Integer>> differentiate_monomial(const Monomial& m, const Monomial& d) {
  if (d.vars().empty()) return std::make_pair(m, Integer(1));
  std::vector<Monomial::VarPower> out;
  out.reserve(m.vars().size());
  Integer factor = 1;
  auto it = d.vars().begin();
  for (const auto& [v, e] : m.vars()) {
    while (it != d.vars().end() && it->first < v) return std::nullopt;
    if (it != d.vars().end() && it->first == v) {
      if (it->second > e) return std::nullopt;
      factor *= falling(e, it->second);
      if (e > it->second) out.push_back({v, e - it->second});
      ++it;
    } else {
      out.push_back({v, e});
    }
  }
  if (it != d.vars().end()) return std::nullopt;
  return std::make_pair(Monomial::from(std::move(out), m.params()), factor);
}

Monomial multiset(const std::vector<Variable>& vs) {
  std::vector<Monomial::VarPower> powers;
  for (const auto& v : vs) powers.push_back({v, 1});
  return Monomial::from(std::move(powers));
}

/// Adds the normal-ordered product of a_{i} over `indices` (all nonzero) times c.
void add_normal_ordered(DiffOp& op, Family fam, const std::vector<int>& indices, const Rational& c, int cap) {
  std::vector<Variable> mult;
  std::vector<Variable> diff;
  Rational coef = c;
  int mw = 0;
  int dw = 0;
  for (int i : indices) {
    if (i > 0) {
      mult.push_back(var(fam, i));
      mw += i;
    } else {
      diff.push_back(var(fam, -i));
      coef *= -i;
      dw += -i;
    }
  }
  if (mw > cap || dw > cap) return;
  op.add(multiset(mult), multiset(diff), Series::constant(coef, kParamCaps));
}

/// Minimal exponent of each parameter over all coefficients (0 if absent).
ParamExponents coefficient_param_min(const DiffOp& op) {
  ParamExponents lo{};
  bool first = true;
  for (const auto& [key, coef] : op.terms()) {
    for (const auto& [m, c] : coef.terms()) {
      for (std::size_t i = 0; i < kParamCount; ++i) lo[i] = first ? m.params()[i] : std::min(lo[i], m.params()[i]);
      first = false;
    }
  }
  return lo;
}

Caps output_caps(const DiffOp& op, const Caps& in) {
  Caps out = in;
  if (out.max_weight < kUnbounded) out.max_weight -= op.max_lowering();
  if (out.max_degree < kUnbounded) out.max_degree -= op.max_degree_lowering();
  const auto lo = coefficient_param_min(op);
  for (std::size_t i = 0; i < kParamCount; ++i) {
    auto& w = out.windows[i];
    if (w.max < kUnbounded) w.max += lo[i];
    if (w.min > -kUnbounded) w.min = std::min(w.min, w.min + lo[i]);
  }
  return out;
}

void accumulate(std::map<Monomial, Rational>& acc, const Caps& caps, const Monomial& base, const Rational& c,
                const Monomial& mult, const Series& coef) {
  Monomial m = base * mult;
  if (m.weight() > caps.max_weight || m.degree() > caps.max_degree) return;
  for (const auto& [pm, pc] : coef.terms()) {
    Monomial full = m * pm;
    if (!caps.keeps(full)) continue;
    caps.check_window(full);
    acc[full] += c * pc;
  }
}

Series collect(std::map<Monomial, Rational>& acc, const Caps& caps) {
  Series out(caps);
  for (auto& [m, c] : acc)
    if (c != 0) out.add_term(m, c);
  return out;
}

}  // namespace

// ---------------------------------------------------------------- DiffOp

DiffOp DiffOp::scalar(const Rational& c) {
  DiffOp op;
  op.add(Monomial{}, Monomial{}, Series::constant(c, kParamCaps));
  return op;
}

void DiffOp::add(const Monomial& multiply, const Monomial& differentiate, const Series& coefficient) {
  if (coefficient.is_zero()) return;
  auto key = std::make_pair(multiply.variable_part(), differentiate.variable_part());
  auto [it, inserted] = terms_.try_emplace(key, coefficient.relabel_caps(kParamCaps));
  if (!inserted) {
    it->second += coefficient.relabel_caps(kParamCaps);
    if (it->second.is_zero()) terms_.erase(it);
  }
}

std::vector<DiffOpTerm> DiffOp::term_list() const {
  std::vector<DiffOpTerm> out;
  for (const auto& [key, coef] : terms_) out.push_back({coef, key.first, key.second});
  return out;
}

DiffOp DiffOp::restricted(int cap) const {
  DiffOp op;
  for (const auto& [key, coef] : terms_)
    if (key.first.weight() <= cap && key.second.weight() <= cap) op.terms_.emplace(key, coef);
  return op;
}

std::optional<Series> DiffOp::as_scalar() const {
  if (terms_.empty()) return Series(kParamCaps);
  if (terms_.size() != 1) return std::nullopt;
  const auto& [key, coef] = *terms_.begin();
  if (key.first.has_variables() || key.second.has_variables()) return std::nullopt;
  return coef;
}

int DiffOp::max_lowering() const {
  int lo = 0;
  for (const auto& [key, coef] : terms_) lo = std::max(lo, key.second.weight() - key.first.weight());
  return lo;
}

int DiffOp::max_degree_lowering() const {
  int lo = 0;
  for (const auto& [key, coef] : terms_) lo = std::max(lo, key.second.degree() - key.first.degree());
  return lo;
}

DiffOp& DiffOp::operator+=(const DiffOp& o) {
  for (const auto& [key, coef] : o.terms_) add(key.first, key.second, coef);
  return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& o) {
  for (const auto& [key, coef] : o.terms_) add(key.first, key.second, -coef);
  return *this;
}

DiffOp& DiffOp::operator*=(const Series& param_coefficient) {
  const Series c = param_coefficient.relabel_caps(kParamCaps);
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second = it->second * c;
    if (it->second.is_zero())
      it = terms_.erase(it);
    else
      ++it;
  }
  return *this;
}

DiffOp& DiffOp::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, coef] : terms_) coef *= c;
  return *this;
}

std::string DiffOp::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, coef] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << coef.to_string() << ")";
    if (key.first.has_variables()) os << "*" << key.first.to_string();
    if (key.second.has_variables()) os << "*D[" << key.second.to_string() << "]";
  }
  return os.str();
}

DiffOp compose(const DiffOp& a, const DiffOp& b) {
  DiffOp out;
  for (const auto& [ka, ca] : a.terms()) {
    const auto& [m1, d1] = ka;
    for (const auto& [kb, cb] : b.terms()) {
      const auto& [m2, d2] = kb;
      const Series coef = ca * cb;
      // Variables that d1 may differentiate inside m2.
      std::vector<std::pair<Variable, std::pair<int, int>>> common;
      for (const auto& [v, k] : d1.vars())
        if (int e = m2.exponent(v); e > 0) common.push_back({v, {k, e}});
      std::vector<int> s(common.size(), 0);
      while (true) {
        Integer factor = 1;
        std::vector<Monomial::VarPower> removed;
        for (std::size_t i = 0; i < common.size(); ++i) {
          const auto [k, e] = common[i].second;
          factor *= binomial(k, s[i]) * falling(e, s[i]);
          if (s[i] > 0) removed.push_back({common[i].first, s[i]});
        }
        const Monomial sub = Monomial::from(removed);
        const auto m2_rest = differentiate_monomial(m2, sub);
        const auto d1_rest = differentiate_monomial(d1, sub);
        out.add(m1 * m2_rest->first, d1_rest->first * d2, Rational(factor) * coef);
        std::size_t i = 0;
        for (; i < common.size(); ++i) {
          const auto [k, e] = common[i].second;
          if (s[i] < std::min(k, e)) {
            ++s[i];
            break;
          }
          s[i] = 0;
        }
        if (i == common.size()) break;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------- OperatorSpec

OperatorSpec OperatorSpec::a(int k) {
  OperatorSpec s;
  s.kind_ = Kind::A;
  s.index_ = k;
  return s;
}

OperatorSpec OperatorSpec::lambda(int m) {
  OperatorSpec s;
  s.kind_ = Kind::Lambda;
  s.index_ = m;
  return s;
}

OperatorSpec OperatorSpec::m(int m) {
  OperatorSpec s;
  s.kind_ = Kind::M;
  s.index_ = m;
  return s;
}

OperatorSpec OperatorSpec::cutjoin() {
  OperatorSpec s;
  s.kind_ = Kind::CutJoin;
  return s;
}

OperatorSpec OperatorSpec::custom(std::vector<DiffOpTerm> terms) {
  OperatorSpec s;
  s.kind_ = Kind::Custom;
  s.custom_ = std::move(terms);
  return s;
}

OperatorSpec OperatorSpec::lincomb(std::vector<std::pair<Series, OperatorSpec>> parts) {
  OperatorSpec s;
  s.kind_ = Kind::LinComb;
  s.parts_ = std::move(parts);
  return s;
}

int OperatorSpec::max_lowering() const {
  switch (kind_) {
    case Kind::A:
    case Kind::Lambda:
    case Kind::M: return std::max(0, -index_);
    case Kind::CutJoin: return 0;
    case Kind::Custom: {
      int lo = 0;
      for (const auto& t : custom_) lo = std::max(lo, -t.weight_shift());
      return lo;
    }
    case Kind::LinComb: {
      int lo = 0;
      for (const auto& [c, s] : parts_) lo = std::max(lo, s.max_lowering());
      return lo;
    }
  }
  return 0;
}

int OperatorSpec::max_raising() const {
  switch (kind_) {
    case Kind::A:
    case Kind::Lambda:
    case Kind::M: return std::max(0, index_);
    case Kind::CutJoin: return 0;
    case Kind::Custom: {
      int hi = 0;
      for (const auto& t : custom_) hi = std::max(hi, t.weight_shift());
      return hi;
    }
    case Kind::LinComb: {
      int hi = 0;
      for (const auto& [c, s] : parts_) hi = std::max(hi, s.max_raising());
      return hi;
    }
  }
  return 0;
}

std::string OperatorSpec::to_string() const {
  switch (kind_) {
    case Kind::A: return "a(" + std::to_string(index_) + ")";
    case Kind::Lambda: return "Lambda(" + std::to_string(index_) + ")";
    case Kind::M: return "M(" + std::to_string(index_) + ")";
    case Kind::CutJoin: return "CUTJOIN";
    case Kind::Custom: return "CUSTOM[" + std::to_string(custom_.size()) + " terms]";
    case Kind::LinComb: {
      std::string out;
      for (const auto& [c, s] : parts_) {
        if (!out.empty()) out += " + ";
        out += "(" + c.to_string() + ")*" + s.to_string();
      }
      return out.empty() ? "0" : out;
    }
  }
  return "?";
}

OperatorSpec OperatorSpec::operator+(const OperatorSpec& o) const {
  const Series one = Series::constant(1, kParamCaps);
  return lincomb({{one, *this}, {one, o}});
}

OperatorSpec OperatorSpec::operator-(const OperatorSpec& o) const {
  return lincomb({{Series::constant(1, kParamCaps), *this}, {Series::constant(-1, kParamCaps), o}});
}

OperatorSpec operator*(const Rational& c, const OperatorSpec& s) {
  return OperatorSpec::lincomb({{Series::constant(c, kParamCaps), s}});
}

OperatorSpec operator*(const Series& c, const OperatorSpec& s) { return OperatorSpec::lincomb({{c, s}}); }

// ---------------------------------------------------------------- materialization

DiffOp materialize(const OperatorSpec& spec, Family fam, int cap) {
  DiffOp op;
  switch (spec.kind()) {
    case OperatorSpec::Kind::A: {
      const int k = spec.index();
      if (k != 0) add_normal_ordered(op, fam, {k}, 1, cap);
      break;
    }
    case OperatorSpec::Kind::Lambda: {
      const int m = spec.index();
      for (int i = -cap; i <= cap; ++i) {
        const int j = m - i;
        if (i == 0 || j == 0) continue;
        std::vector<int> idx{i, j};
        std::sort(idx.rbegin(), idx.rend());
        add_normal_ordered(op, fam, idx, frac(1, 2), cap);
      }
      break;
    }
    case OperatorSpec::Kind::M: {
      const int m = spec.index();
      for (int i = -cap; i <= cap; ++i) {
        for (int j = -cap; j <= cap; ++j) {
          const int l = m - i - j;
          if (i == 0 || j == 0 || l == 0 || l < -cap || l > cap) continue;
          std::vector<int> idx{i, j, l};
          std::sort(idx.rbegin(), idx.rend());
          add_normal_ordered(op, fam, idx, frac(1, 6), cap);
        }
      }
      break;
    }
    case OperatorSpec::Kind::CutJoin: {
      for (int i = 1; i <= cap; ++i) {
        for (int j = 1; i + j <= cap; ++j) {
          const Variable vi = var(fam, i);
          const Variable vj = var(fam, j);
          const Variable vij = var(fam, i + j);
          op.add(Monomial::from({{vi, 1}, {vj, 1}}), Monomial::of(vij), Series::constant(frac(i + j, 2), kParamCaps));
          op.add(Monomial::of(vij), Monomial::from({{vi, 1}, {vj, 1}}), Series::constant(frac(i * j, 2), kParamCaps));
        }
      }
      break;
    }
    case OperatorSpec::Kind::Custom:
      for (const auto& t : spec.custom_terms())
        if (t.multiply.weight() <= cap && t.differentiate.weight() <= cap) op.add(t);
      break;
    case OperatorSpec::Kind::LinComb:
      for (const auto& [c, s] : spec.parts()) op += c * materialize(s, fam, cap);
      break;
  }
  return op;
}

// ---------------------------------------------------------------- application

Series apply(const DiffOp& op, const Series& s) {
  const Caps caps = output_caps(op, s.caps());
  // Group by differentiated multiset so each derivative is taken once per monomial.
  std::map<Monomial, std::vector<std::pair<Monomial, const Series*>>> by_diff;
  for (const auto& [key, coef] : op.terms()) by_diff[key.second].push_back({key.first, &coef});
  std::map<Monomial, Rational> acc;
  for (const auto& [m, c] : s.terms()) {
    for (const auto& [d, mults] : by_diff) {
      if (d.weight() > m.weight()) break;
      const auto reduced = differentiate_monomial(m, d);
      if (!reduced) continue;
      const Rational cf = c * Rational(reduced->second);
      for (const auto& [mult, coef] : mults) accumulate(acc, caps, reduced->first, cf, mult, *coef);
    }
  }
  return collect(acc, caps);
}

Series apply(const OperatorSpec& spec, const Series& s, Family family) {
  const int w = s.caps().max_weight;
  if (w >= kUnbounded) throw std::invalid_argument("apply needs a finite weight cap");
  return apply(materialize(spec, family, w), s);
}

Series conjugated_apply(const DiffOp& op, const Series& f) {
  const Caps caps = output_caps(op, f.caps());
  std::map<Monomial, Series> memo;
  memo.emplace(Monomial{}, Series::constant(1, f.caps()));
  std::map<Variable, Series> first_derivs;
  std::function<const Series&(const Monomial&)> y = [&](const Monomial& d) -> const Series& {
    if (auto it = memo.find(d); it != memo.end()) return it->second;
    const Variable v = d.vars().back().first;
    const Monomial rest = d.divide(v)->first;
    const Series& prev = y(rest);
    auto fit = first_derivs.find(v);
    if (fit == first_derivs.end()) fit = first_derivs.emplace(v, f.derivative(v)).first;
    Series value = prev.derivative(v) + fit->second * prev;
    return memo.emplace(d, std::move(value)).first->second;
  };
  std::map<Monomial, Rational> acc;
  for (const auto& [key, coef] : op.terms()) {
    const Series& yd = y(key.second);
    for (const auto& [m, c] : yd.terms()) accumulate(acc, caps, m, c, key.first, coef);
  }
  return collect(acc, caps);
}

DiffOp commutator(const OperatorSpec& a, const OperatorSpec& b, Family family, int cap) {
  const int margin = std::max({a.max_lowering(), a.max_raising(), b.max_lowering(), b.max_raising()});
  const DiffOp ma = materialize(a, family, cap + margin);
  const DiffOp mb = materialize(b, family, cap + margin);
  return (compose(ma, mb) - compose(mb, ma)).restricted(cap);
}

Series exp_flow(const OperatorSpec& gen, Param param, const Series& init, const Caps& caps, Family family) {
  const Series start = init.truncated(caps);
  const int n = start.caps().window(param).max;
  if (n >= kUnbounded) throw std::invalid_argument("exp_flow needs a finite order cap on the flow parameter");
  const int w = start.caps().max_weight;
  if (w >= kUnbounded) throw std::invalid_argument("exp_flow needs a finite weight cap");
  const DiffOp op = materialize(gen, family, w);
  Series result = start;
  Series term = start;
  for (int k = 1; k <= n; ++k) {
    term = apply(op, term);
    term *= frac(1, k);
    if (term.is_zero()) break;
    result += term.times_param(param, k);
  }
  return result;
}

Series nonautonomous_flow(const std::vector<OperatorSpec>& gen, Param param, const Series& init, const Caps& caps,
                          Family family) {
  const Series start = init.truncated(caps);
  const int n = start.caps().window(param).max;
  if (n >= kUnbounded) throw std::invalid_argument("nonautonomous_flow needs a finite order cap");
  const int w = start.caps().max_weight;
  if (w >= kUnbounded) throw std::invalid_argument("nonautonomous_flow needs a finite weight cap");
  std::vector<DiffOp> ops;
  for (const auto& g : gen) ops.push_back(materialize(g, family, w));
  std::vector<Series> z{start};
  // (k+1) Z_{k+1} = sum_j G_j Z_{k-j}
  for (int k = 0; k < n; ++k) {
    Series next(start.caps());
    bool first = true;
    for (std::size_t j = 0; j < ops.size() && static_cast<int>(j) <= k; ++j) {
      Series contrib = apply(ops[j], z[static_cast<std::size_t>(k) - j]);
      if (first) {
        next = std::move(contrib);
        first = false;
      } else {
        next += contrib;
      }
    }
    next *= frac(1, k + 1);
    z.push_back(std::move(next));
  }
  Series result = start;
  for (int k = 1; k <= n; ++k) result += z[static_cast<std::size_t>(k)].times_param(param, k);
  return result;
}

}  // namespace hodgekit
