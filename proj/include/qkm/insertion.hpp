#pragma once

#include <string>
#include <vector>

#include "qkm/spectral.hpp"
#include "qkm/trengine.hpp"

namespace qkm {

// ---------------------------------------------------------------------------
// Backend dispatch shared by the identity checks.

inline Series to_plain(const HBackend&, const Series& s) { return to_h(s); }
inline Series to_plain(const TraceBackend<Series>&, const Series& s) { return s; }
inline Series to_lambda(const HBackend&, const Series& p) { return HBackend::lam_of(p); }
inline Series to_lambda(const TraceBackend<Series>&, const Series& p) { return p; }

// f(backend, W) returns a plain value; d = 1 runs in h, d > 1 in the trace ring.
template <class F>
Series on_backend(const SpectralInput& in, int order, F&& f) {
  return adaptive(order, [&](int W) -> Series {
    Deformation def = solve_deformation(in, W);
    if (in.d() == 1) {
      HBackend be(def);
      return to_lambda(be, f(be, W));
    }
    TraceBackend<Series> tb(def);
    return to_lambda(tb, f(tb, W));
  });
}

// records a vanishing-difference outcome into a report
void record(IdentityReport& rep, const Series& diff);

// ---------------------------------------------------------------------------

struct DeformationDerivatives {
  std::size_t b = 0;
  std::vector<Series> deps;  // d eps_k / d e_b
  std::vector<Series> drho;  // d rhohat_k / d e_b
};
DeformationDerivatives deformation_derivatives(const SpectralInput& in, int order, std::size_t b);

// d/d e_b data at working order W
struct DerivData {
  std::size_t b = 0;
  DualDeformation dd;
  Curve<DualSeries> dc;
  Curve<Series> c;

  // rho_shift is added to rhohat_1 (mutation testing only)
  DerivData(const SpectralInput& in, int W, std::size_t b, const Scalar& rho_shift = Scalar(0));
  Series dR(const Series& z) const { return dc.R(0, DualSeries(z)).d; }  // at fixed z
  Series deps(std::size_t k) const { return dd.eps[k].d; }
  Series dRp_eps(std::size_t k) const { return dc.R(1, dd.eps[k]).d; }  // total derivative of R'(eps_k)
  // S(z) = (N/lambda) d_b R(z) expressed through d eps_k and d R'(eps_k)
  Series S_coeff_a(std::size_t k) const;  // r_k dR'(eps_k) / R'(eps_k)^2
  Series S_coeff_c(std::size_t k) const;  // r_k d eps_k / R'(eps_k)
};

// ---------------------------------------------------------------------------
// d = 1 homogeneity form: c * lambda^n (2e)^{-m}.

struct GradedTerm {
  int n = 0;
  int m = 0;
  Scalar c;
};
using GradedTable = std::vector<GradedTerm>;

// grades a 2e = 1 series by m = m0 + step * n
GradedTable graded_d1(const Series& at_unit, int m0, int step);
GradedTable creation_d1(const GradedTable& t);  // -d/de on every monomial
Series evaluate_graded(const GradedTable& t, const Scalar& e, int prec);
// one-matrix-model form with t4 = -lambda: 4 lambda dF/dlambda
Series creation_1mm(const Series& f);

// ---------------------------------------------------------------------------
// Omega_{0,2} and Omega_{0,3}

Series omega02(const SpectralInput& in, int order, const Scalar& z, const Scalar& w);
// regularized diagonal at eps_a: closed form and the direct limit of the subtraction
Series omega02_diagonal(const SpectralInput& in, int order, std::size_t a);
Series omega02_diagonal_limit(const SpectralInput& in, int order, std::size_t a);

// Omega_{0,3}(z, v, u) at rational points or at eps_b
Series omega03(const SpectralInput& in, int order, PointSpec z, PointSpec v, PointSpec u);
Series omega03_diagonal(const SpectralInput& in, int order, std::size_t b);
// -(N/r_b) [d_b Omega_{0,2}(z,v) - sum_i dOmega_{0,2}/dR(z_i) d_b R(z_i)]
Series omega03_from_creation(const SpectralInput& in, int order, const Scalar& z, const Scalar& v, std::size_t b);

// ---------------------------------------------------------------------------

std::vector<Scalar> default_points();  // {2, 3, 5/2}
std::vector<IdentityReport> lemma_checks(const SpectralInput& in, int order, std::size_t b,
                                         const std::vector<Scalar>& points, const Scalar& rho_shift = Scalar(0));

}  // namespace qkm
