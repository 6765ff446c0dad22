#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hodgekit/diffop.hpp"
#include "hodgekit/laurent.hpp"
#include "hodgekit/series.hpp"

namespace hodgekit {

/// Young diagram as weakly decreasing positive parts.
using Partition = std::vector<int>;

int partition_size(const Partition& lambda);
/// Partitions of n in reverse lexicographic order.
std::vector<Partition> partitions_of(int n);
std::string to_string(const Partition& lambda);

/// Element of the charge-zero semi-infinite wedge space with parameter-series
/// coordinates, truncated at energy |lambda| <= energy_cap.
struct WedgeVector {
  std::map<Partition, Series> coords;
  int energy_cap = 0;

  static WedgeVector vacuum(int energy_cap);
  static WedgeVector basis(const Partition& lambda, int energy_cap);

  void add(const Partition& lambda, const Series& c);
  Series coordinate(const Partition& lambda) const;
  friend bool operator==(const WedgeVector& a, const WedgeVector& b) { return a.coords == b.coords; }
  std::string to_string() const;
};

/// Differential operator in z of the form sum_m z^m P_m(z d/dz), with P_m a
/// polynomial with rational coefficients (index = power of z d/dz).
class ZOp {
 public:
  using Poly = std::vector<Rational>;

  ZOp() = default;
  static ZOp z_power(int m);
  static ZOp euler();
  /// z^m P(z d/dz).
  static ZOp term(int m, Poly poly);
  /// The z-side of a_k, Lambda_m, M_m, the cut-and-join operator and linear
  /// combinations of them with rational coefficients.
  static ZOp from_spec(const OperatorSpec& spec);

  const std::map<int, Poly>& parts() const { return parts_; }
  bool is_zero() const { return parts_.empty(); }

  ZOp& operator+=(const ZOp& o);
  ZOp& operator*=(const Rational& c);
  friend ZOp operator+(ZOp a, const ZOp& b) { return a += b; }
  friend ZOp operator-(ZOp a, ZOp b) { return a += (b *= -1); }
  friend ZOp operator*(const Rational& c, ZOp a) { return a *= c; }
  friend bool operator==(const ZOp& a, const ZOp& b) { return a.parts_ == b.parts_; }

  /// Action on a single power: A(z^k) = sum_m P_m(k) z^{k+m}.
  static Rational eval(const Poly& p, const Rational& k);

 private:
  void add_part(int m, const Poly& p);
  std::map<int, Poly> parts_;
};

/// [a, b] computed in the algebra of operators in z.
ZOp commutator(const ZOp& a, const ZOp& b);

/// Regularized action on the wedge space: Leibniz rule off the diagonal and
/// sum_i (a_{k_i} - a_{-i}) on it. Output truncated to the input energy cap.
WedgeVector hat_apply(const ZOp& op, const WedgeVector& v);

/// Schur polynomial from the vacuum-coefficient formula.
Series schur(const Partition& lambda);
/// sum_lambda coords[lambda] s_lambda, truncated at weight energy_cap.
Series fermion_to_boson(const WedgeVector& v);
/// Schur-basis coordinates of a series in p (graded solve, weight by weight).
WedgeVector boson_to_fermion(const Series& s, int energy_cap);

/// True iff the wedge action of the z-side operator equals the conjugated
/// action of the bosonic operator on every v_lambda with |lambda| <= energy_cap.
/// On failure `detail` names the first mismatching basis vector.
bool table_check(const OperatorSpec& spec, int energy_cap, std::string* detail = nullptr);

/// Plucker coordinates of phi_1 ^ phi_2 ^ ... where factors beyond the list are
/// z^{-j}. Each listed factor must be z^{-j} + higher powers.
WedgeVector decomposable_to_coords(const std::vector<LaurentZ>& factors, int energy_cap);

/// phi_j = z^{-j} + sum_{s >= 1} c_{j,s} z^{s-j} for j = 1..count with small
/// pseudo-random rationals c from the seed (mt19937_64, reproducible).
std::vector<LaurentZ> random_decomposable_factors(std::uint64_t seed, int count, int z_max);

/// phi_k = sum_i e^{beta i(i-2k+1)/2} z^{i-k}/i!, k = 1..count.
std::vector<LaurentZ> hurwitz_wedge_factors(int count, int beta_cap, int z_max);

}  // namespace hodgekit
