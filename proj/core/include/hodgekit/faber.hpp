#pragma once

#include <map>
#include <string>
#include <vector>

#include "hodgekit/diffop.hpp"
#include "hodgekit/elsv.hpp"
#include "hodgekit/kp.hpp"
#include "hodgekit/series.hpp"

namespace hodgekit {

/// A = 1/2 sum binom(i+j, i) t_i t_j d/dt_{i+j-1}, applied term by term.
/// Output keeps the caps of the input.
Series op_A(const Series& s);

/// P_{m,d} = 1/m! sum over ordered (d_1..d_m) with sum d of the multinomial
/// times t_{d_1}...t_{d_m}.
Series p_md(int m, int d);

/// Polynomial in x_1..x_m keyed by exponent vectors.
using SymPoly = std::map<std::vector<int>, Rational>;

/// t_{d_1}...t_{d_m} -> sum over permutations of x^{d_sigma}. Throws on
/// input that is not homogeneous of degree m.
SymPoly symmetrize(int m, const Series& s);
/// (x_1 + ... + x_m)^d.
SymPoly power_sum_power(int m, int d);
SymPoly operator*(const Rational& c, SymPoly p);

/// c_g = <lambda_g tau_{2g-2}>_g read from an ELSV table, g = 1..g_max.
std::map<int, Rational> faber_constants(const CorrelatorTable& table, int g_max);

/// Top Hodge series from F1 = sum (-1)^g c_g t_{2g-2}, the cubic seed t0^3/6
/// and F(m+1) = A F(m) / m, truncated at t-weight weight_cap and factor count
/// max_factors, keeping genera up to max_genus. Throws if some needed c_g is missing.
Series ftop_build(int weight_cap, const std::map<int, Rational>& c, int max_factors = kUnbounded,
                  int max_genus = kUnbounded);
/// F - sum t_i dF/dt_i + A F + t0^3/3.
Series ftop_residual(const Series& f);

/// All <lambda_g tau_d> with sum d = 2g-3+n against multinomial(2g-3+n; d) c_g.
bool faber_check(const CorrelatorTable& table, int g, int n, std::string* detail = nullptr);

/// t_k -> (-1)^k k! r_{k+1}.
Series top_t_to_r(const Series& f_t);

/// 2g - 2 + n of the type a monomial of Psi comes from: S + 1 - n - a with S
/// the r-weight, n the degree and a the v-exponent.
int psi_euler(const Monomial& m);
/// Sum of Psi_{g,n} over the table's stable types with 2g - 2 + n <= chi_max.
Series psi_series(const CorrelatorTable& table, int chi_max);
/// Residual of the evolution equation for Psi in v (unfiltered).
Series psi_pde_residual(const Series& psi);
/// Residual restricted to the part fixed by types with 2g - 2 + n <= chi_max.
KPReport psi_pde_check(const CorrelatorTable& table, int chi_max);

/// G in the variables r~ = r / v (written r), summed over types up to chi_max.
Series gtilde_series(const CorrelatorTable& table, int chi_max);
/// The operator -M2 + 2v M3 - M4 + Lambda1 + v/6 a3 - v^2/8 a4.
OperatorSpec gtilde_generator();
/// dG~/dv - e^{-G~} R e^{G~} at r-weight <= chi_max - 4, where types up to
/// chi_max determine it (R lowers r-weight by at most 4).
KPReport gtilde_evolution_check(const CorrelatorTable& table, int chi_max);

/// The reduction operator W in t-variables, with Bernoulli-number
/// coefficients times powers of u, truncated at u^{u_cap}; sums over t-indices
/// stop at max_index.
DiffOp w_operator(int u_cap, int max_index);
/// log(e^W e^F) for a polynomial F in t, by integrating dF/dgamma =
/// e^{-F} W e^{F} in an auxiliary parameter up to gamma = 1. Exact for a
/// polynomial input; the caller decides which coefficients the input determines.
Series w_reduce(const Series& f_t, int u_cap);
/// Reads <lambda_j prod tau>_g = (-1)^j [u^{2j} prod t^k/k!] from a reduced
/// series, for 3g - 3 + n <= max_dim and j <= g.
CorrelatorTable correlators_from_reduced(const Series& calf, int max_dim);
/// The lambda_0 input for w_reduce: g=0 n<=7, g=1 n<=5, g=2 n<=3, so that the
/// output is determined for 3g - 3 + n <= 4.
Series reduction_input(const CorrelatorTable& table);

}  // namespace hodgekit
