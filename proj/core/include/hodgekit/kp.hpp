#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hodgekit/diffop.hpp"
#include "hodgekit/elsv.hpp"
#include "hodgekit/series.hpp"

namespace hodgekit {

/// Residual of one equation together with the region where it is trusted
/// (the residual's own caps).
struct KPReport {
  std::string id;
  Series residual;
  bool passed = false;
  std::optional<Monomial> first_offending;
};

KPReport make_report(std::string id, Series residual);

/// The four equations KP22, KP32, KP42, KP33 on F(x_1, x_2, ...) where x is
/// the given family. Residuals lose 4, 5, 6 and 6 from the weight cap.
std::vector<KPReport> kp_residuals(const Series& f, Family family = Family::P);

/// sum <tau_{d_1}...tau_{d_n}> prod t^k/k! over the lambda_0 entries of the
/// table, truncated at weight (2d+1 per t_d) <= weight_cap.
Series witten_potential_t(const CorrelatorTable& table, int weight_cap);
/// The same potential in odd p-variables, p_{2d+1} = t_d/(2d-1)!!.
Series t_to_odd_p(const Series& f_t);

/// Embeds F(t) into odd p-variables and runs the KP equations.
KPReport kdv_check(const Series& f_t);

/// (2m+3) dF/dp_{2m+3} - e^{-F} Lambda_{-2m} e^F - delta_{m,0}/8, m >= -1.
KPReport virasoro_check(const Series& f_p, int m);

/// The right-hand operator of the transformed cut-and-join equation, multiplied by u^4.
OperatorSpec newcaj_operator();
/// u^4 (1/3 u^{-2} dG/du - e^{-G} R e^G) for G in q-variables and u.
KPReport newcaj_check(const Series& g);

/// The u^{-4} part M4 - Lambda1 + a4/8 of the cut-and-join operator conjugated
/// by F (in p), differentiated once in p_{2m+4} and restricted to odd variables.
Series newcaj_virasoro_extraction(const Series& f_p, int m);

/// (Phi - H02) with p_b replaced by sum_k [z^k] x(z)^b q_k for the ELSV x(z),
/// truncated at q-weight weight_cap and beta^{beta_cap}.
Series elsv_kp_transform(const Series& phi, int weight_cap, int beta_cap);

}  // namespace hodgekit
