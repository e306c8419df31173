#pragma once

#include <string>
#include <vector>

#include "qkm/insertion.hpp"

namespace qkm {

struct FreeEnergyResult {
  std::size_t d = 0;
  bool r_neq_truncated = false;  // d > 1: only the O(lambda) compensation term is included
  Series f1;
  Series ln_r0;    // ln R'(0)
  Series ln_prod;  // ln prod_i R'(-beta_i)
  Series r_neq;
};

FreeEnergyResult f1(const SpectralInput& in, int order);
// d = 1: ln prod R'(-beta_i) through the explicit branch points in h
Series ln_prod_h(const SpectralInput& in, int order);
// (1/12)(3^n/n)(2^{2n-1} - (2n-1)!/(n!(n-1)!)) times (-1)^n: the lambda^n coefficient at 2e = 1
Scalar f1_closed_coefficient(int n);
// O(lambda) compensation term (lambda/N) sum_{k != l} (r_k + r_l)/(e_k + e_l)^2
Series r_graph(const SpectralInput& in, int order);

// T_b = -(N/r_b) d/de_b applied to ln R'(0) and ln prod R'(-beta_i), via forward differentiation
struct LogDerivatives {
  Series Tb_ln_r0;
  Series Tb_ln_prod;
};
LogDerivatives creation_of_logs(const SpectralInput& in, int order, std::size_t b);

// T_b R_neq / 24 in closed form over ramification points; `literal` selects the printed bracket
Series compensation_rhs(const SpectralInput& in, int order, std::size_t b, bool literal);

struct CreationCheck {
  std::vector<IdentityReport> checks;       // assertions
  std::vector<IdentityReport> diagnostics;  // reported, expected to fail where noted
};
CreationCheck f1_creation_check(const SpectralInput& in, int order, std::size_t b);

// ---------------------------------------------------------------------------
// Bergman tau at d = 1

struct TauResult {
  Series quarter_gap_h;      // (b_1 - b_2)/4 in h
  Series gamma_h;            // i h sqrt(rhohat)
  bool gap_matches = false;  // (b_1 - b_2)/4 == gamma
  Series ln_tau_series;      // (1/2) ln(rhohat / rhohat(0)), the analytic part of ln(b_1-b_2)/4
  std::vector<std::string> tags;  // non-analytic pieces, kept symbolic
  IdentityReport literal_ode;     // d ln tau = sum_i (1/24)(...) db_i with ln tau = ln((b_1-b_2)/4)
  IdentityReport quarter_ode;     // the same with ln tau = (1/4) ln(b_1-b_2)
};
TauResult tau_d1(const SpectralInput& in, int order);

struct BipartiteTables {
  Series direct;  // -(1/2) ln tau series part + F^(1)
  Series closed;  // the double-sum series, weight (2e)^{-(2n+2)}
  Series difference;
};
BipartiteTables bipartite_f1(const SpectralInput& in, int order);
// coefficient of lambda^{n+1} in the double sum (2e = 1), as printed
Scalar bipartite_closed_coefficient(int n);

}  // namespace qkm
