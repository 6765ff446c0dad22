#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hodgekit/rational.hpp"

namespace hodgekit {

enum class Family : std::uint8_t { P, Q, R, T };

char family_symbol(Family f);

/// An indexed formal variable p_i, q_i, r_i (i >= 1) or t_d (d >= 0).
struct Variable {
  Family family = Family::P;
  int index = 1;

  /// weight(p_i) = weight(q_i) = weight(r_i) = i, weight(t_d) = 2d + 1.
  constexpr int weight() const { return family == Family::T ? 2 * index + 1 : index; }
  constexpr auto operator<=>(const Variable&) const = default;
};

constexpr Variable p(int i) { return {Family::P, i}; }
constexpr Variable q(int i) { return {Family::Q, i}; }
constexpr Variable r(int i) { return {Family::R, i}; }
constexpr Variable t(int d) { return {Family::T, d}; }
constexpr Variable var(Family f, int i) { return {f, i}; }

/// Formal parameters; all exponents are integers (u = beta^{1/3} is a base of its own).
enum class Param : std::uint8_t { Beta, U, V, Gamma };
inline constexpr std::size_t kParamCount = 4;
using ParamExponents = std::array<int, kParamCount>;

const char* param_name(Param p);

inline constexpr int kUnbounded = 1 << 28;

/// Thrown when an operation would produce a parameter exponent below the
/// Laurent window of its caps, or when a requested coefficient lies outside
/// the region where a truncated series is known.
class CapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Monomial;

/// Inclusive exponent window for one parameter.
struct Window {
  int min = -12;
  int max = kUnbounded;
  bool operator==(const Window&) const = default;
};

/// Truncation caps. Terms with weight, variable degree or parameter exponent
/// above the cap are dropped (this is an ideal, so truncation commutes with
/// the ring operations). Exponents below a window minimum are an error.
struct Caps {
  int max_weight = kUnbounded;
  int max_degree = kUnbounded;
  std::array<Window, kParamCount> windows{};

  static Caps weight(int w) {
    Caps c;
    c.max_weight = w;
    return c;
  }
  /// No truncation anywhere and a wide Laurent window.
  static Caps exact() {
    Caps c;
    for (auto& w : c.windows) w.min = -kUnbounded;
    return c;
  }

  Caps with_weight(int w) const {
    Caps c = *this;
    c.max_weight = w;
    return c;
  }
  Caps with_degree(int d) const {
    Caps c = *this;
    c.max_degree = d;
    return c;
  }
  Caps with_param(Param p, int min, int max) const {
    Caps c = *this;
    c.windows[static_cast<std::size_t>(p)] = {min, max};
    return c;
  }
  Caps with_param_max(Param p, int max) const {
    Caps c = *this;
    c.windows[static_cast<std::size_t>(p)].max = max;
    return c;
  }
  const Window& window(Param p) const { return windows[static_cast<std::size_t>(p)]; }

  /// True when the monomial is inside the retained region (ignores minima).
  bool keeps(const Monomial& m) const;
  /// Throws CapError if a parameter exponent is below its window.
  void check_window(const Monomial& m) const;

  bool operator==(const Caps&) const = default;
};

Caps intersect(const Caps& a, const Caps& b);
std::string to_string(const Caps& c);

/// Product of variable powers times parameter powers. Variable exponents are
/// positive; parameter exponents may be negative.
class Monomial {
 public:
  using VarPower = std::pair<Variable, int>;

  Monomial() = default;
  static Monomial of(Variable v, int e = 1);
  static Monomial of(Param p, int e = 1);
  static Monomial from(std::vector<VarPower> powers, ParamExponents params = {});

  const std::vector<VarPower>& vars() const { return vars_; }
  const ParamExponents& params() const { return params_; }
  int param(Param p) const { return params_[static_cast<std::size_t>(p)]; }
  int exponent(Variable v) const;
  int weight() const { return weight_; }
  int degree() const { return degree_; }
  bool is_one() const;
  bool has_variables() const { return !vars_.empty(); }

  /// Variable part only (parameters cleared).
  Monomial variable_part() const;
  /// Parameter part only.
  Monomial param_part() const;

  /// Returns exponent-reduced monomial after removing one factor of v, or
  /// nullopt if v does not divide. The multiplicity removed is returned too.
  std::optional<std::pair<Monomial, int>> divide(Variable v) const;

  Monomial with_param(Param p, int e) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);

  /// Graded order: weight, then variables, then parameter exponents.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.vars_ == b.vars_ && a.params_ == b.params_;
  }

  std::string to_string() const;

 private:
  void recompute();

  std::vector<VarPower> vars_;
  ParamExponents params_{};
  int weight_ = 0;
  int degree_ = 0;
};

/// Truncated sparse series with exact rational coefficients. Value type; all
/// operations return new series.
class Series {
 public:
  using Terms = std::map<Monomial, Rational>;

  Series() = default;
  explicit Series(Caps caps) : caps_(caps) {}

  static Series constant(const Rational& c, Caps caps = {});
  static Series variable(Variable v, Caps caps = {});
  static Series parameter(Param p, int e = 1, Caps caps = {});
  static Series term(const Monomial& m, const Rational& c, Caps caps = {});

  const Caps& caps() const { return caps_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Exact coefficient; CapError if the monomial lies outside the caps.
  Rational coefficient(const Monomial& m) const;
  Rational constant_term() const;

  /// Adds c*m, dropping it if outside the caps.
  void add_term(const Monomial& m, const Rational& c);

  Series truncated(const Caps& caps) const;
  /// Replaces caps without dropping terms (caller guarantees validity).
  Series relabel_caps(const Caps& caps) const;
  Series weight_block(int w) const;
  Series degree_block(int d) const;
  Series filtered(const std::function<bool(const Monomial&)>& keep) const;

  Series& operator+=(const Series& o);
  Series& operator-=(const Series& o);
  Series& operator*=(const Rational& c);
  Series operator-() const;

  /// d/dv. The weight cap shrinks by weight(v), the degree cap by one.
  Series derivative(Variable v) const;
  Series derivative(const std::vector<Variable>& vs) const;
  /// d/d(param). The window maximum shrinks by one.
  Series param_derivative(Param p) const;
  /// Multiplies every term by param^e (shifts the window).
  Series times_param(Param p, int e) const;

  /// Variables used by nonzero terms, sorted.
  std::vector<Variable> variables() const;
  int max_term_weight() const;

  std::string to_string() const;

  friend bool operator==(const Series& a, const Series& b) { return a.terms_ == b.terms_; }

 private:
  Caps caps_{};
  Terms terms_;
};

Series operator+(const Series& a, const Series& b);
Series operator-(const Series& a, const Series& b);
Series operator*(const Series& a, const Series& b);
Series operator*(const Rational& c, const Series& a);
Series operator*(const Series& a, const Rational& c);

/// Product truncated to explicit caps (tighter than the operands' caps).
Series multiply(const Series& a, const Series& b, const Caps& caps);
Series power(const Series& a, unsigned e);

/// exp requires a zero constant term; log requires constant term exactly 1.
Series exp(const Series& a);
Series log(const Series& a);

/// Substitutes images for variables (missing variables map to themselves).
/// The result is truncated to `target`.
Series substitute(const Series& s, const std::map<Variable, Series>& images, const Caps& target);

/// Rewrites every monomial through `f`, which returns the new monomial and a
/// scalar factor, or nullopt to drop the term.
Series transform(const Series& s,
                 const std::function<std::optional<std::pair<Monomial, Rational>>(const Monomial&)>& f,
                 const Caps& target);

}  // namespace hodgekit
