#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "qkm/dual.hpp"
#include "qkm/poly.hpp"
#include "qkm/series.hpp"

namespace qkm {

struct SpectralInput {
  std::vector<Scalar> e;  // distinct positive eigenvalues
  std::vector<long> r;    // multiplicities
  long N = 1;
  int order = 6;

  std::size_t d() const { return e.size(); }
  void validate() const;  // throws std::invalid_argument

  static SpectralInput single(const Scalar& e0 = Scalar(1, 2), int order = 6);
  static SpectralInput from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

// eps_k(lambda) and rhohat_k = rho_k / N as lambda-series.
template <class T>
struct DeformationT {
  SpectralInput in;
  int order = 0;
  std::vector<T> eps;
  std::vector<T> rho;  // rhohat
};
using Deformation = DeformationT<Series>;
using DualDeformation = DeformationT<DualSeries>;

// constant embedding of a scalar into the various value types
inline Series embed(const Series&, const Scalar& c) { return cst(c); }
inline DualSeries embed(const DualSeries&, const Scalar& c) { return DualSeries(cst(c)); }
inline Laurent<Series> embed(const Laurent<Series>& like, const Scalar& c) {
  return Laurent<Series>::constant(cst(c), like.var());
}
template <class T>
RootFrac<T> embed(const RootFrac<T>& like, const Scalar& c) {
  return like.lift(embed(Ring<T>::one(), c));
}

template <class X>
X ipow(const X& x, int n) {
  if constexpr (requires { x.pow(n); }) {
    return x.pow(n);
  } else {
    X r = x;
    for (int i = 1; i < n; ++i) r = r * x;
    return r;
  }
}

template <class T>
DeformationT<T> solve_deformation_t(const SpectralInput& in, int order, int seed_index) {
  in.validate();
  std::size_t d = in.d();
  T one = Ring<T>::one();
  T lam_t = one * T(lam(order));
  std::vector<T> e0(d), r0(d), eps(d), rho(d);
  for (std::size_t k = 0; k < d; ++k) {
    e0[k] = embed(one, in.e[k]);
    if constexpr (std::is_same_v<T, DualSeries>) {
      if (static_cast<int>(k) == seed_index) e0[k] = DualSeries(cst(in.e[k]), cst(1));
    }
    r0[k] = embed(one, Scalar(in.r[k], in.N));
    eps[k] = e0[k];
    rho[k] = r0[k];
  }
  for (int sweep = 0; sweep <= order; ++sweep) {
    std::vector<T> ne(d), nr(d);
    for (std::size_t k = 0; k < d; ++k) {
      T acc = Ring<T>::zero();
      T acc2 = Ring<T>::zero();
      for (std::size_t l = 0; l < d; ++l) {
        T inv = Ring<T>::inv(eps[l] + eps[k]);
        acc = acc + rho[l] * inv;
        acc2 = acc2 + rho[l] * inv * inv;
      }
      ne[k] = e0[k] + lam_t * acc;
      nr[k] = r0[k] * Ring<T>::inv(one + lam_t * acc2);
    }
    eps = std::move(ne);
    rho = std::move(nr);
  }
  DeformationT<T> out;
  out.in = in;
  out.order = order;
  out.eps = std::move(eps);
  out.rho = std::move(rho);
  return out;
}

Deformation solve_deformation(const SpectralInput& in, int order);
DualDeformation solve_deformation_dual(const SpectralInput& in, int order, std::size_t b);
Deformation derivative_part(const DualDeformation& dd);  // d eps/d e_b, d rhohat/d e_b

// R(z) = z - lambda sum rhohat_k/(eps_k + z) and derivatives, over a generic value type X.
template <class X>
struct Curve {
  std::vector<X> eps, rho;
  X lam;
  X one;

  X c(const Scalar& s) const { return embed(one, s); }

  X R(int k, const X& z) const {
    X acc = k == 0 ? z : (k == 1 ? one : c(Scalar(0)));
    Scalar fact(1);
    for (int i = 2; i <= k; ++i) fact = fact * Scalar(i);
    Scalar sign = (k % 2 == 1) ? Scalar(1) : Scalar(-1);  // (-1)^{k+1}
    X sum = c(Scalar(0));
    for (std::size_t l = 0; l < eps.size(); ++l) sum = sum + rho[l] * ipow(X(one / (z + eps[l])), k + 1);
    if (k == 0) return acc - lam * sum;
    return acc + c(sign * fact) * lam * sum;
  }
  X R1(const X& z) const { return R(1, z); }
};

template <class T>
Curve<T> curve_of(const DeformationT<T>& def) {
  Curve<T> c;
  c.one = Ring<T>::one();
  c.lam = c.one * T(lam(def.order));
  c.eps = def.eps;
  c.rho = def.rho;
  return c;
}

// numerator of R'(z): P(z) = prod (z+eps_k)^2 + lambda sum_k rhohat_k prod_{l != k} (z+eps_l)^2
template <class T>
Poly<T> ramification_poly(const DeformationT<T>& def) {
  std::size_t d = def.eps.size();
  T one = Ring<T>::one();
  T lam_t = one * T(lam(def.order));
  std::vector<Poly<T>> sq(d);
  for (std::size_t k = 0; k < d; ++k) sq[k] = poly_mul(Poly<T>{def.eps[k], one}, Poly<T>{def.eps[k], one});
  Poly<T> all = {one};
  for (std::size_t k = 0; k < d; ++k) all = poly_mul(all, sq[k]);
  Poly<T> P = all;
  for (std::size_t k = 0; k < d; ++k) {
    Poly<T> term = {lam_t * def.rho[k]};
    for (std::size_t l = 0; l < d; ++l)
      if (l != k) term = poly_mul(term, sq[l]);
    P = poly_add(P, term);
  }
  P.back() = one;  // leading coefficient is the exact unit
  return P;
}

// d = 1 branch data in h (h^2 = lambda)
struct BranchData {
  Series eps_h, rho_h, lam_h;
  Series gamma;            // i h sqrt(rhohat)
  Series beta_plus, beta_minus;
  Series b_plus, b_minus;  // branch values
};
BranchData branch_data(const Deformation& def);  // d must be 1

struct RamificationData {
  Poly<Series> P;
  bool has_branch = false;
  BranchData branch;
};
RamificationData ramification(const Deformation& def);

// Zhukovsky coordinate at d = 1: z = -eps + gamma t, x = -eps + gamma (t + 1/t)
struct Zhukovsky {
  BranchData br;
  Series t_of(const Series& z) const;
  Series z_of(const Series& t) const;
  Series x_of_t(const Series& t) const;
  static Series sigma(const Series& t) { return t.inv(); }
};
Zhukovsky zhukovsky(const Deformation& def);

// Helpers passed to summands over ramification points.
struct HRootHelper {
  const std::vector<Series>* betas;
  std::size_t index;
  Series plus(const Series& x) const;  // sum_j 1/(x + beta_j)^2
  Series others() const;               // sum_{j != i} 1/(beta_i - beta_j)^2
};

template <class T>
struct TraceRootHelper {
  const Poly<T>* P;
  RootFrac<T> beta;
  RootFrac<T> plus(const RootFrac<T>& x) const {
    Poly<T> d1 = poly_deriv(*P), d2 = poly_deriv(d1);
    RootFrac<T> mx = -x, one = x.lift(Ring<T>::one());
    RootFrac<T> p0 = poly_eval(*P, mx, one), p1 = poly_eval(d1, mx, one), p2 = poly_eval(d2, mx, one);
    return (p1 * p1 - p0 * p2) / (p0 * p0);
  }
  RootFrac<T> others() const {
    Poly<T> d1 = poly_deriv(*P), d2 = poly_deriv(d1), d3 = poly_deriv(d2);
    RootFrac<T> one = beta.lift(Ring<T>::one());
    RootFrac<T> q1 = poly_eval(d1, beta, one), q2 = poly_eval(d2, beta, one), q3 = poly_eval(d3, beta, one);
    return q2 * q2 / (embed(one, Scalar(4)) * q1 * q1) - q3 / (embed(one, Scalar(3)) * q1);
  }
};

// d = 1: h-series backend. f(curve, beta, helper) -> Series in h; the sum over both roots
// is returned as a lambda-series after the reality/evenness check.
struct HBackend {
  Deformation def;
  BranchData br;
  Curve<Series> curve;  // in h
  std::vector<Series> betas;

  explicit HBackend(const Deformation& d);
  Series h(const Series& lam_series) const { return to_h(lam_series); }
  Series point(const Scalar& z) const { return cst(z, Var::h); }

  template <class F>
  Series sum_h(F&& f) const {
    Series acc = Series::zero(Var::h);
    for (std::size_t i = 0; i < betas.size(); ++i) {
      HRootHelper hp{&betas, i};
      acc = acc + f(curve, betas[i], hp);
    }
    return acc;
  }
  template <class F>
  Series sum(F&& f) const {
    return lam_of(sum_h(std::forward<F>(f)));
  }
  // uniform interface shared with TraceBackend
  const Curve<Series>& plain() const { return curve; }
  Series lift(const Series& z) const { return z; }
  Series from_plain(const Series& z) const { return z; }
  template <class F>
  Series sum_plain(F&& f) const {
    return sum_h(std::forward<F>(f));
  }
  Series plain_eps(std::size_t k) const { return curve.eps.at(k); }
  Series plain_const(const Scalar& c) const { return cst(c, Var::h); }
  // h-series -> lambda-series with reality/evenness enforcement
  static Series lam_of(const Series& hs);
};

// General d: trace backend over T = Series or DualSeries.
template <class T>
struct TraceBackend {
  DeformationT<T> def;
  Poly<T> P;
  std::shared_ptr<const Quotient<T>> q;
  Curve<RootFrac<T>> rcurve;
  Curve<T> curve;

  explicit TraceBackend(const DeformationT<T>& d) : def(d), P(ramification_poly(d)) {
    q = std::make_shared<const Quotient<T>>(P);
    curve = curve_of(def);
    RootFrac<T> one = RootFrac<T>::constant(q, Ring<T>::one());
    rcurve.one = one;
    rcurve.lam = one * curve.lam;
    for (std::size_t k = 0; k < def.eps.size(); ++k) {
      rcurve.eps.push_back(one * def.eps[k]);
      rcurve.rho.push_back(one * def.rho[k]);
    }
  }
  RootFrac<T> lift(const T& x) const { return rcurve.one * x; }
  RootFrac<T> root() const { return RootFrac<T>::root(q); }

  template <class F>
  T sum(F&& f) const {
    TraceRootHelper<T> hp{&P, root()};
    return f(rcurve, root(), hp).root_sum();
  }
  const Curve<T>& plain() const { return curve; }
  template <class F>
  T sum_plain(F&& f) const {
    return sum(std::forward<F>(f));
  }
  T plain_eps(std::size_t k) const { return curve.eps.at(k); }
  T plain_const(const Scalar& c) const { return embed(curve.one, c); }
};

// Upper bound on truncation orders, from QKM_MAX_ORDER (default 40).
int max_order();

// Runs compute(W) with growing working order until the result is known to `target`.
Series adaptive(int target, const std::function<Series(int)>& compute, int cap = 200);

}  // namespace qkm
