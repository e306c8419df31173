#pragma once

#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qkm/laurent.hpp"

namespace qkm {

// Dense polynomial in z, ascending coefficients.
template <class T>
using Poly = std::vector<T>;

template <class T>
Poly<T> poly_add(const Poly<T>& a, const Poly<T>& b) {
  Poly<T> r(std::max(a.size(), b.size()), Ring<T>::zero());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = r[i] + a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = r[i] + b[i];
  return r;
}

template <class T>
Poly<T> poly_scale(const Poly<T>& a, const T& s) {
  Poly<T> r;
  r.reserve(a.size());
  for (const auto& x : a) r.push_back(x * s);
  return r;
}

template <class T>
Poly<T> poly_mul(const Poly<T>& a, const Poly<T>& b) {
  if (a.empty() || b.empty()) return {};
  Poly<T> r(a.size() + b.size() - 1, Ring<T>::zero());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) Ring<T>::add_product(r[i + j], a[i], b[j]);
  return r;
}

template <class T>
Poly<T> poly_deriv(const Poly<T>& a) {
  Poly<T> r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(Ring<T>::times_int(a[i], static_cast<long>(i)));
  return r;
}

// p(-z)
template <class T>
Poly<T> poly_reflect(const Poly<T>& a) {
  Poly<T> r = a;
  for (std::size_t i = 1; i < r.size(); i += 2) r[i] = -r[i];
  return r;
}

template <class T, class X>
X poly_eval(const Poly<T>& a, const X& x, const X& one) {
  X r = one * Ring<T>::zero();
  for (std::size_t i = a.size(); i-- > 0;) r = r * x + one * a[i];
  return r;
}

template <class T>
T poly_eval(const Poly<T>& a, const T& x) {
  T r = Ring<T>::zero();
  for (std::size_t i = a.size(); i-- > 0;) r = r * x + a[i];
  return r;
}

template <class T>
using Matrix = std::vector<std::vector<T>>;

// Characteristic polynomial det(tI - A) by Berkowitz (division free), highest degree first.
template <class T>
std::vector<T> berkowitz(const Matrix<T>& A) {
  std::size_t n = A.size();
  std::vector<T> C = {Ring<T>::one(), -A[0][0]};
  for (std::size_t r = 1; r < n; ++r) {
    // t = [1, -a_rr, -R C, -R A C, ..., -R A^{r-1} C]
    std::vector<T> t = {Ring<T>::one(), -A[r][r]};
    std::vector<T> col(r);
    for (std::size_t i = 0; i < r; ++i) col[i] = A[i][r];
    for (std::size_t k = 0; k < r; ++k) {
      T acc = Ring<T>::zero();
      for (std::size_t j = 0; j < r; ++j) Ring<T>::add_product(acc, A[r][j], col[j]);
      t.push_back(-acc);
      if (k + 1 < r) {
        std::vector<T> next(r, Ring<T>::zero());
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < r; ++j) Ring<T>::add_product(next[i], A[i][j], col[j]);
        col = std::move(next);
      }
    }
    std::vector<T> nc(r + 2, Ring<T>::zero());
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, r); ++j) Ring<T>::add_product(nc[i], t[i - j], C[j]);
    C = std::move(nc);
  }
  return C;
}

// Quotient ring T[z]/(P) for monic P of degree n, elements stored as n ascending coefficients.
template <class T>
class Quotient {
 public:
  using Elem = std::vector<T>;

  explicit Quotient(Poly<T> P) : P_(std::move(P)) {
    if (P_.size() < 2) throw std::invalid_argument("quotient modulus must have positive degree");
    n_ = P_.size() - 1;
    // monic check is structural: leading coefficient must be the exact unit
    power_sums();
  }

  std::size_t degree() const { return n_; }
  const Poly<T>& modulus() const { return P_; }

  Elem reduce(Poly<T> a) const {
    const T& lead = P_[n_];
    T lead_inv = Ring<T>::inv(lead);
    for (std::size_t k = a.size(); k-- > n_;) {
      T c = a[k] * lead_inv;
      if (Ring<T>::is_zero(c)) continue;
      for (std::size_t i = 0; i <= n_; ++i) a[k - n_ + i] = a[k - n_ + i] - c * P_[i];
    }
    a.resize(n_, Ring<T>::zero());
    return a;
  }

  Elem constant(const T& c) const {
    Elem e(n_, Ring<T>::zero());
    e[0] = c;
    return e;
  }
  Elem z() const {
    Elem e(n_, Ring<T>::zero());
    if (n_ > 1) e[1] = Ring<T>::one();
    else e[0] = -P_[0] * Ring<T>::inv(P_[1]);
    return e;
  }

  Elem add(const Elem& a, const Elem& b) const {
    Elem r(n_);
    for (std::size_t i = 0; i < n_; ++i) r[i] = a[i] + b[i];
    return r;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    Elem r(n_);
    for (std::size_t i = 0; i < n_; ++i) r[i] = a[i] - b[i];
    return r;
  }
  Elem neg(const Elem& a) const {
    Elem r(n_);
    for (std::size_t i = 0; i < n_; ++i) r[i] = -a[i];
    return r;
  }
  Elem mul(const Elem& a, const Elem& b) const { return reduce(poly_mul(a, b)); }

  Matrix<T> mult_matrix(const Elem& a) const {
    Matrix<T> M(n_, std::vector<T>(n_, Ring<T>::zero()));
    Elem col = a;
    for (std::size_t j = 0; j < n_; ++j) {
      for (std::size_t i = 0; i < n_; ++i) M[i][j] = col[i];
      if (j + 1 < n_) {
        Poly<T> shifted(n_ + 1, Ring<T>::zero());
        for (std::size_t i = 0; i < n_; ++i) shifted[i + 1] = col[i];
        col = reduce(shifted);
      }
    }
    return M;
  }

  // sum over roots of a
  T trace(const Elem& a) const {
    T acc = Ring<T>::zero();
    for (std::size_t k = 0; k < n_; ++k) Ring<T>::add_product(acc, a[k], p_[k]);
    return acc;
  }

  // product over roots of a, i.e. the norm
  T norm(const Elem& a) const {
    auto C = berkowitz(mult_matrix(a));
    T c0 = C[n_];
    return n_ % 2 == 0 ? c0 : -c0;
  }

  // returns (a*, N(a)) with a * a* = N(a)
  std::pair<Elem, T> adjoint(const Elem& a) const {
    auto C = berkowitz(mult_matrix(a));
    // a^{n-1} + c_{n-1} a^{n-2} + ... + c_1, where C = [1, c_{n-1}, ..., c_0]
    Elem S = constant(Ring<T>::one());
    for (std::size_t k = 1; k < n_; ++k) S = add(mul(S, a), constant(C[k]));
    T c0 = C[n_];
    T det = n_ % 2 == 0 ? c0 : -c0;
    if (n_ % 2 == 0) S = neg(S);
    return {S, det};
  }

  const std::vector<T>& power_sums_vec() const { return p_; }

 private:
  void power_sums() {
    // roots of monic P: Newton identities with e-coefficients a_i of z^i
    T lead_inv = Ring<T>::inv(P_[n_]);
    std::vector<T> a(n_ + 1);
    for (std::size_t i = 0; i <= n_; ++i) a[i] = P_[i] * lead_inv;
    p_.assign(n_, Ring<T>::zero());
    p_[0] = Ring<T>::times_int(Ring<T>::one(), static_cast<long>(n_));
    for (std::size_t k = 1; k < n_; ++k) {
      T acc = Ring<T>::times_int(a[n_ - k], static_cast<long>(k));
      for (std::size_t i = 1; i < k; ++i) Ring<T>::add_product(acc, a[n_ - i], p_[k - i]);
      p_[k] = -acc;
    }
  }

  Poly<T> P_;
  std::size_t n_ = 0;
  std::vector<T> p_;
};

// Rational function of a generic root of P, kept as numerator/denominator in T[z]/(P).
template <class T>
class RootFrac {
 public:
  using Q = Quotient<T>;
  using Elem = typename Q::Elem;

  RootFrac() = default;
  RootFrac(std::shared_ptr<const Q> q, Elem num, Elem den, bool unit_den = false)
      : q_(std::move(q)), num_(std::move(num)), den_(std::move(den)), unit_den_(unit_den) {}

  static RootFrac constant(std::shared_ptr<const Q> q, const T& c) {
    Elem n = q->constant(c), d = q->constant(Ring<T>::one());
    return RootFrac(q, n, d, true);
  }
  static RootFrac root(std::shared_ptr<const Q> q) {
    Elem n = q->z(), d = q->constant(Ring<T>::one());
    return RootFrac(q, n, d, true);
  }
  static RootFrac poly(std::shared_ptr<const Q> q, const Poly<T>& p) {
    Elem n = q->reduce(p), d = q->constant(Ring<T>::one());
    return RootFrac(q, n, d, true);
  }

  const std::shared_ptr<const Q>& algebra() const { return q_; }
  const Elem& num() const { return num_; }
  const Elem& den() const { return den_; }

  RootFrac lift(const T& c) const { return constant(q_, c); }

  RootFrac operator-() const { return RootFrac(q_, q_->neg(num_), den_, unit_den_); }
  friend RootFrac operator+(const RootFrac& a, const RootFrac& b) { return combine(a, b, false); }
  friend RootFrac operator-(const RootFrac& a, const RootFrac& b) { return combine(a, b, true); }
  friend RootFrac operator*(const RootFrac& a, const RootFrac& b) {
    const Q& q = *a.q_;
    Elem d = a.unit_den_ ? b.den_ : (b.unit_den_ ? a.den_ : q.mul(a.den_, b.den_));
    return RootFrac(a.q_, q.mul(a.num_, b.num_), d, a.unit_den_ && b.unit_den_);
  }
  RootFrac inv() const { return RootFrac(q_, den_, num_, false); }
  friend RootFrac operator/(const RootFrac& a, const RootFrac& b) { return a * b.inv(); }
  friend RootFrac operator*(const RootFrac& a, const T& c) {
    Elem n = a.num_;
    for (auto& x : n) x = x * c;
    return RootFrac(a.q_, n, a.den_, a.unit_den_);
  }
  friend RootFrac operator*(const T& c, const RootFrac& a) { return a * c; }
  friend RootFrac operator+(const RootFrac& a, const T& c) { return a + a.lift(c); }
  friend RootFrac operator-(const RootFrac& a, const T& c) { return a - a.lift(c); }
  friend RootFrac operator+(const T& c, const RootFrac& a) { return a.lift(c) + a; }
  friend RootFrac operator-(const T& c, const RootFrac& a) { return a.lift(c) - a; }
  friend RootFrac operator/(const RootFrac& a, const T& c) { return a * Ring<T>::inv(c); }
  friend RootFrac operator/(const T& c, const RootFrac& a) { return a.inv() * c; }

  RootFrac pow(int n) const {
    if (n < 0) return inv().pow(-n);
    RootFrac r = lift(Ring<T>::one());
    for (int i = 0; i < n; ++i) r = r * *this;
    return r;
  }

  // sum over all roots of P
  T root_sum() const {
    if (unit_den_) return q_->trace(num_);
    auto [adj, det] = q_->adjoint(den_);
    return q_->trace(q_->mul(num_, adj)) * Ring<T>::inv(det);
  }

 private:
  static RootFrac combine(const RootFrac& a, const RootFrac& b, bool subtract) {
    const Q& q = *a.q_;
    if (a.unit_den_ && b.unit_den_)
      return RootFrac(a.q_, subtract ? q.sub(a.num_, b.num_) : q.add(a.num_, b.num_), a.den_, true);
    Elem n1 = b.unit_den_ ? a.num_ : q.mul(a.num_, b.den_);
    Elem n2 = a.unit_den_ ? b.num_ : q.mul(b.num_, a.den_);
    Elem d = a.unit_den_ ? b.den_ : (b.unit_den_ ? a.den_ : q.mul(a.den_, b.den_));
    return RootFrac(a.q_, subtract ? q.sub(n1, n2) : q.add(n1, n2), d, false);
  }

  std::shared_ptr<const Q> q_;
  Elem num_, den_;
  bool unit_den_ = false;
};

// Sum over the roots of P of num(beta)/den(beta), with polynomial num, den.
template <class T>
T trace_mod(const Poly<T>& P, const Poly<T>& num, const Poly<T>& den) {
  auto q = std::make_shared<const Quotient<T>>(P);
  RootFrac<T> f = RootFrac<T>::poly(q, num) / RootFrac<T>::poly(q, den);
  return f.root_sum();
}

// Product over the roots of P of g(beta).
template <class T>
T product_over_roots(const Poly<T>& P, const Poly<T>& g) {
  Quotient<T> q(P);
  return q.norm(q.reduce(g));
}

}  // namespace qkm
