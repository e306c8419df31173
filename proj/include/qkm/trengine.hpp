#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "qkm/spectral.hpp"

namespace qkm {

// ---------------------------------------------------------------------------
// Closed-form omega_{1,1}, valid for any d. BE is HBackend or TraceBackend<T>.

template <class P>
struct Om11Parts {
  P pole0;  // the two pole-at-zero terms
  P third;  // 1/(beta^2 ...) term; with pole0 this is the blob part
  P tr;     // ramification-point terms
  P rprime; // R'(z)
};

template <class BE, class P>
Om11Parts<P> omega11_parts(const BE& be, const P& z) {
  const auto& c = be.plain();
  P zero = be.plain_const(Scalar(0));
  P R10 = c.R(1, zero), R20 = c.R(2, zero);
  Om11Parts<P> out;
  out.pole0 = -c.lam / (c.c(8) * R10 * R10 * ipow(z, 3)) + c.lam * R20 / (c.c(16) * ipow(R10, 3) * z * z);
  auto zl = be.lift(z);
  out.third = be.sum_plain([&](const auto& C, const auto& b, const auto&) {
    auto mb = -b;
    auto zb = zl - b;
    return -C.lam / (C.c(8) * b * b * C.R(2, b) * C.R(1, mb) * zb * zb);
  });
  out.tr = be.sum_plain([&](const auto& C, const auto& b, const auto&) {
    auto mb = -b;
    auto r1m = C.R(1, mb), r2m = C.R(2, mb), r3m = C.R(3, mb);
    auto r2 = C.R(2, b), r3 = C.R(3, b), r4 = C.R(4, b);
    auto izb = C.one / (zl - b);
    auto izb2 = izb * izb;
    auto v = -izb2 * izb2 / (C.c(8) * r1m * r2) + r3 * izb2 * izb / (C.c(24) * r2 * r2 * r1m) +
             r3m * izb2 / (C.c(48) * r2 * r1m * r1m) + r3 * r2m * izb2 / (C.c(48) * r2 * r2 * r1m * r1m) +
             r4 * izb2 / (C.c(48) * r2 * r2 * r1m) - r3 * r3 * izb2 / (C.c(48) * ipow(r2, 3) * r1m);
    return C.lam * v;
  });
  out.rprime = c.R(1, z);
  return out;
}

enum class Om11Part { total, blob, pure };

template <class P>
P omega11_from_parts(const Om11Parts<P>& p, Om11Part which) {
  switch (which) {
    case Om11Part::blob: return (p.pole0 + p.third) / p.rprime;
    case Om11Part::pure: return p.tr / p.rprime;
    default: return (p.pole0 + p.third + p.tr) / p.rprime;
  }
}

// Omega_{1,1}(eps_b) (or at a rational point) as a lambda-series, computed to `order`.
// d = 1 uses the h-backend, d > 1 the trace backend; both adapt the working order.
struct PointSpec {
  bool at_eps = true;
  std::size_t b = 0;
  Scalar z;
  static PointSpec eps(std::size_t b) { return {true, b, Scalar(0)}; }
  static PointSpec value(const Scalar& z) { return {false, 0, z}; }
};

Series omega11_closed(const SpectralInput& in, int order, PointSpec at = PointSpec::eps(0),
                      Om11Part which = Om11Part::total, bool force_trace = false);
Series omega11_blob(const SpectralInput& in, int order, PointSpec at = PointSpec::eps(0));

// h-series form at d = 1 (before conversion), used by the blob-split and reality checks.
Series omega11_closed_h(const Deformation& def, PointSpec at, Om11Part which);
// the pole-at-zero terms alone, divided by R'(z), in h
Series omega11_pole0_h(const Deformation& def, PointSpec at);

// ---------------------------------------------------------------------------
// d = 1 topological recursion in the Zhukovsky coordinate t (x = -eps + gt (t + 1/t)).
// A form is a sum of C * prod_j dt_j / (t_j - a_j)^{k_j} with a_j = +-1.

using FormKey = std::vector<std::pair<int, int>>;
using Form = std::map<FormKey, Series>;

enum class Convention { pure, blobbed_polar };

class ZhukovskyTR {
 public:
  // `order` is the lambda working order, `u_prec` the local expansion precision at t = +-1
  ZhukovskyTR(const SpectralInput& in, int order, int u_prec);

  Form omega03() const;
  Form omega11(Convention conv) const;
  Form omega12(const Form& w11, const Form& w03) const;
  Form omega21(const Form& w11, const Form& w12) const;

  // the form at Zhukovsky points t_j
  Series eval(const Form& f, const std::vector<Series>& t) const;
  // Omega_{g,n} = lambda^{2g-2+n} omega / prod dR(z_j), as an h-series at points z_j (h-series)
  Series omega_at(const Form& f, int g, const std::vector<Series>& z) const;

  const BranchData& branch() const { return br_; }
  const Deformation& deformation() const { return def_; }
  Series t_of(const Series& z) const { return (br_.eps_h + z) / br_.gamma; }
  Series rprime(const Series& z) const;

 private:
  using US = Laurent<Series>;
  using PKey = std::vector<std::tuple<int, int, int>>;  // (variable, a, k)
  using Partial = std::map<PKey, US>;
  struct Local {
    int a = 1;
    US u, q, qinv, sm, dy, xp, dsig, one, kern;
  };

  const Local& local(int a) const { return a == 1 ? lp_ : lm_; }
  Local make_local(int a) const;
  US expand_slot(const Local& L, int b, int k, bool sigma) const;
  Partial b_partial(const Local& L, int var, bool sigma) const;
  Partial subst_form(const Local& L, int a, const Form& form, const std::vector<bool>& slots,
                     const std::vector<int>& varmap) const;
  static Partial mul_partial(const Partial& A, const Partial& B);
  static void add_into(Partial& A, const Partial& B);
  Form residue_step(const std::map<int, Partial>& w_by_a) const;

  Deformation def_;
  BranchData br_;
  Series s0_;
  int M_;
  Local lp_, lm_;
};

struct OmegaResult {
  int g = 0, n = 0;
  std::string convention;
  Series value;    // Omega_{g,n} at (eps, ..., eps) as a lambda-series
  Series value_h;  // the same before conversion from h
};

// (g, n) in {(0,3), (1,1), (1,2), (2,1)}; d must be 1
OmegaResult tr_omega(const SpectralInput& in, int g, int n, Convention conv, int order);

// Appendix-B identity: R'(z)Om11(z) - R'(-z)Om11(-z) against the stated derivative, at rational z.
struct IdentityReport {
  std::string name;
  std::size_t d = 0;
  std::vector<std::string> points;
  int max_order_checked = 0;
  bool ok = false;
  int first_failing_order = -1;
};
IdentityReport symplectic_check(const SpectralInput& in, int order, const std::vector<Scalar>& points);
// S_B(z)/6 from the diagonal of the blob phi_{0,2}(u,z) = B(u,-z); returns S_B(z)
Scalar bergman_projective_connection(const Scalar& z);

}  // namespace qkm
