#pragma once

#include <map>
#include <string>

#include "hodgekit/series.hpp"

namespace hodgekit {

/// Truncated Laurent series in one formal variable z with coefficients that
/// are parameter-only series. Known exactly for z-exponents up to z_max.
class LaurentZ {
 public:
  explicit LaurentZ(int z_max = 0, Caps param_caps = Caps::exact()) : z_max_(z_max), caps_(param_caps) {}

  static LaurentZ monomial(int k, const Rational& c, int z_max, Caps param_caps = Caps::exact());
  static LaurentZ monomial(int k, const Series& c, int z_max, Caps param_caps = Caps::exact());
  /// The identity function z.
  static LaurentZ z(int z_max, Caps param_caps = Caps::exact()) { return monomial(1, 1, z_max, param_caps); }

  int z_max() const { return z_max_; }
  const Caps& param_caps() const { return caps_; }
  const std::map<int, Series>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Lowest z-exponent with a nonzero coefficient (z_max + 1 if zero).
  int order() const;
  /// Coefficient of z^k; CapError if k > z_max.
  Series coefficient(int k) const;
  Rational coefficient(int k, const Monomial& params) const;

  void add(int k, const Series& c);
  void add(int k, const Rational& c);

  LaurentZ truncated(int z_max) const;
  LaurentZ with_param_caps(const Caps& caps) const;

  LaurentZ& operator+=(const LaurentZ& o);
  LaurentZ& operator-=(const LaurentZ& o);
  LaurentZ& operator*=(const Rational& c);
  LaurentZ operator-() const;

  /// Multiplies every coefficient by a parameter series.
  LaurentZ scaled(const Series& c) const;
  /// Multiplies by z^k (shifts z_max too).
  LaurentZ shifted(int k) const;

  /// z d/dz.
  LaurentZ euler() const;
  /// d/dz.
  LaurentZ derivative() const;
  /// d/d(param) applied to every coefficient.
  LaurentZ param_derivative(Param p) const;

  std::string to_string() const;

  friend bool operator==(const LaurentZ& a, const LaurentZ& b) { return a.terms_ == b.terms_; }

 private:
  int z_max_;
  Caps caps_;
  std::map<int, Series> terms_;
};

LaurentZ operator+(const LaurentZ& a, const LaurentZ& b);
LaurentZ operator-(const LaurentZ& a, const LaurentZ& b);
/// Product; known up to min(z_max(a) + order(b), z_max(b) + order(a)).
LaurentZ operator*(const LaurentZ& a, const LaurentZ& b);
LaurentZ operator*(const Rational& c, const LaurentZ& a);

/// Power series with rational unit constant term: multiplicative inverse.
LaurentZ inverse(const LaurentZ& a);
/// Integer power (negative powers need an invertible leading structure:
/// a = c z^k (1 + higher) with c a nonzero rational).
LaurentZ power(const LaurentZ& a, int n);
/// exp of a series without z^0 or negative terms.
LaurentZ exp(const LaurentZ& a);
/// (1 + a)^alpha for rational alpha, a without z^0 or negative terms.
LaurentZ binomial_power(const LaurentZ& a, const Rational& alpha);

/// f(g(z)) where g = z * (unit power series). Result known up to z_max.
LaurentZ compose(const LaurentZ& f, const LaurentZ& g, int z_max);

/// Compositional inverse of x(z) = z + higher order, to the cap z_max.
LaurentZ lagrange_invert(const LaurentZ& x_of_z, int z_max);

}  // namespace hodgekit
