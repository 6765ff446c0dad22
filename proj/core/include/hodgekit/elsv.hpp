#pragma once

#include <compare>
#include <map>
#include <utility>
#include <vector>

#include "hodgekit/hurwitz.hpp"
#include "hodgekit/laurent.hpp"
#include "hodgekit/series.hpp"

namespace hodgekit {

/// Key of a Hodge integral <lambda_j tau_{k_1} ... tau_{k_n}> in genus g.
struct CorrelatorKey {
  int j = 0;
  std::vector<int> ks;  // sorted ascending
  int genus = 0;

  int n() const { return static_cast<int>(ks.size()); }
  /// j + sum k_i == 3g - 3 + n.
  bool dimension_ok() const;
  auto operator<=>(const CorrelatorKey&) const = default;
};

using CorrelatorTable = std::map<CorrelatorKey, Rational>;

/// Linear change p_b = sum_{k >= b} c^b_k q_k with parameter-series coefficients.
struct ChangeOfVariables {
  Family source = Family::P;
  Family target = Family::Q;
  int max_index = 0;
  std::map<std::pair<int, int>, Series> matrix;  // (b, k) -> c^b_k

  Series entry(int b, int k) const;
};

/// x(z) = z/(1 + beta z) exp(-beta z/(1 + beta z)) up to z^{z_max}, beta^{beta_cap}.
LaurentZ elsv_x_of_z(int z_max, int beta_cap);

/// Matrix of expansion coefficients x(z)^b = sum_k c^b_k z^k for b, k <= max_index.
ChangeOfVariables change_from_xz(const LaurentZ& x_of_z, int max_index, Family source = Family::P,
                                 Family target = Family::Q);

/// Substitutes p_b -> sum_k c^b_k q_k and truncates to `target`.
Series apply_change(const Series& s, const ChangeOfVariables& c, const Caps& target);

/// T_k as a linear form in q with coefficients in u (Param::U).
Series t_linear(int k);
/// The shifted forms from their own recursion in r with coefficients in v.
Series t_tilde(int k);

/// (H - H01 - H02) after the change, with beta = u^3 and q_k -> u^{-4k} q_k,
/// truncated to q-weight <= weight_cap and u-exponent <= u_cap. Negative
/// u-exponents, if any, are kept (window down to -(weight_cap + 4)).
Series build_G(int weight_cap, int u_cap, int max_factors = kUnbounded);

/// Solves the ELSV linear system for all Hodge integrals of type (g, n).
CorrelatorTable elsv_solve(int g, int n, HurwitzTable* table = nullptr);
/// Solves every listed (g, n) sharing one Hurwitz table.
CorrelatorTable elsv_solve_many(const std::vector<std::pair<int, int>>& types);
/// Stable (g, n) whose contribution to G reaches q-weight <= weight_cap and u <= u_cap.
std::vector<std::pair<int, int>> types_for_caps(int weight_cap, int u_cap);
/// Stable (g, n) with 2g - 2 + n <= chi_max.
std::vector<std::pair<int, int>> types_up_to_euler(int chi_max);

/// sum (-1)^j <lambda_j prod tau> u^{2j} prod T_d^{k_d}/k_d!, truncated to caps.
/// CapError if some required (g, n) is missing from the table.
Series assemble_preHodge(const CorrelatorTable& table, const Caps& caps);
/// The exact polynomial contribution of one (g, n).
Series assemble_type(const CorrelatorTable& table, int g, int n);

/// psi(beta, z) = (1+beta z)^{-3/2} e^{-beta z/(2(1+beta z))} phi(x(z)).
LaurentZ xi_transform(const LaurentZ& phi, int z_max);
/// d psi/d beta + (2z^2 + beta z^3) d psi/dz + (2z + 3/2 beta z^2) psi.
LaurentZ xi_residual(const LaurentZ& psi);

/// q_k -> sum_i binom(k,i) (-1)^{k-i} v^{i-k/3-1} r_i on a series in q and u;
/// the result is in r and v = u^{-3}. With `tilde`, substitutes the variables
/// r~_i = r_i / v instead (still written r_i). Throws if a u-power is not a
/// multiple of three.
Series r_shift(const Series& s, bool tilde = false);

/// Psi_{g,n} = v * G_{g,n} written in r (power series in v).
Series psi_type(const CorrelatorTable& table, int g, int n);

}  // namespace hodgekit
