#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hodgekit/series.hpp"

namespace hodgekit {

/// One summand c * (product of multiplied variables) * (product of derivatives).
/// Multisets are stored as variable-only monomials.
struct DiffOpTerm {
  Series coefficient = Series::constant(1, Caps::exact());  // parameters only
  Monomial multiply;
  Monomial differentiate;

  int weight_shift() const { return multiply.weight() - differentiate.weight(); }
};

/// A finite differential operator with canonically combined terms.
class DiffOp {
 public:
  using Key = std::pair<Monomial, Monomial>;  // (multiply, differentiate)

  DiffOp() = default;
  static DiffOp scalar(const Rational& c);

  void add(const Monomial& multiply, const Monomial& differentiate, const Series& coefficient);
  void add(const DiffOpTerm& term) { add(term.multiply, term.differentiate, term.coefficient); }

  const std::map<Key, Series>& terms() const { return terms_; }
  std::vector<DiffOpTerm> term_list() const;
  bool is_zero() const { return terms_.empty(); }

  /// Keeps only terms whose multiplied and differentiated weights are at most `cap`.
  DiffOp restricted(int cap) const;
  /// If the operator is c * Id returns c.
  std::optional<Series> as_scalar() const;

  /// Largest weight decrease max(0, diff - mult) and degree decrease over terms.
  int max_lowering() const;
  int max_degree_lowering() const;

  DiffOp& operator+=(const DiffOp& o);
  DiffOp& operator-=(const DiffOp& o);
  DiffOp& operator*=(const Series& param_coefficient);
  DiffOp& operator*=(const Rational& c);

  friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
  friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
  friend DiffOp operator*(const Rational& c, DiffOp a) { return a *= c; }
  friend DiffOp operator*(const Series& c, DiffOp a) { return a *= c; }
  friend bool operator==(const DiffOp& a, const DiffOp& b) { return a.terms_ == b.terms_; }

  std::string to_string() const;

 private:
  std::map<Key, Series> terms_;
};

/// Composition a∘b by the Leibniz rule.
DiffOp compose(const DiffOp& a, const DiffOp& b);

/// Symbolic operator families. LAMBDA and M denote infinite normal-ordered sums.
class OperatorSpec {
 public:
  enum class Kind { A, Lambda, M, CutJoin, Custom, LinComb };

  static OperatorSpec a(int k);
  static OperatorSpec lambda(int m);
  static OperatorSpec m(int m);
  static OperatorSpec cutjoin();
  static OperatorSpec custom(std::vector<DiffOpTerm> terms);
  static OperatorSpec lincomb(std::vector<std::pair<Series, OperatorSpec>> parts);

  Kind kind() const { return kind_; }
  int index() const { return index_; }
  const std::vector<DiffOpTerm>& custom_terms() const { return custom_; }
  const std::vector<std::pair<Series, OperatorSpec>>& parts() const { return parts_; }

  /// Upper bound on the weight decrease of any summand.
  int max_lowering() const;
  /// Upper bound on the weight increase of any summand.
  int max_raising() const;

  std::string to_string() const;

  OperatorSpec operator+(const OperatorSpec& o) const;
  OperatorSpec operator-(const OperatorSpec& o) const;
  friend OperatorSpec operator*(const Rational& c, const OperatorSpec& s);
  friend OperatorSpec operator*(const Series& c, const OperatorSpec& s);

 private:
  Kind kind_ = Kind::Custom;
  int index_ = 0;
  std::vector<DiffOpTerm> custom_;
  std::vector<std::pair<Series, OperatorSpec>> parts_;
};

/// All summands whose multiplied and differentiated weights are at most `cap`.
DiffOp materialize(const OperatorSpec& spec, Family family, int cap);

/// Applies a finite operator. The output weight cap is the input cap minus the
/// largest weight decrease; parameter windows shift with the coefficients.
Series apply(const DiffOp& op, const Series& s);
/// Materializes at the input weight cap (which must be finite) and applies.
Series apply(const OperatorSpec& spec, const Series& s, Family family = Family::P);

/// e^{-F} O e^{F}, a polynomial in derivatives of F; used for residuals of
/// equations on exponentials without forming e^F.
Series conjugated_apply(const DiffOp& op, const Series& f);

/// [a, b] restricted to multiplied/differentiated weight at most `cap`.
DiffOp commutator(const OperatorSpec& a, const OperatorSpec& b, Family family, int cap);

/// sum_{m <= window max of param} param^m gen^m(init)/m!.
Series exp_flow(const OperatorSpec& gen, Param param, const Series& init, const Caps& caps,
                Family family = Family::P);

/// Solves dZ/d(param) = (sum_k param^k gen[k]) Z with Z(0) = init, order by order
/// up to the window maximum of `param` in `caps`.
Series nonautonomous_flow(const std::vector<OperatorSpec>& gen, Param param, const Series& init,
                          const Caps& caps, Family family = Family::P);

}  // namespace hodgekit
