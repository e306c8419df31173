#pragma once

#include "qkm/laurent.hpp"
#include "qkm/series.hpp"

namespace qkm {

// First-order dual number v + d*eps over a commutative ring T (eps^2 = 0).
template <class T>
struct Dual {
  T v;
  T d;

  Dual() : v(Ring<T>::zero()), d(Ring<T>::zero()) {}
  Dual(const T& value) : v(value), d(Ring<T>::zero()) {}  // NOLINT
  Dual(const T& value, const T& deriv) : v(value), d(deriv) {}

  Dual operator-() const { return {-v, -d}; }
  Dual& operator+=(const Dual& o) {
    v = v + o.v;
    d = d + o.d;
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    v = v - o.v;
    d = d - o.d;
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    T nd = v * o.d + d * o.v;
    v = v * o.v;
    d = std::move(nd);
    return *this;
  }
  Dual inv() const {
    T iv = Ring<T>::inv(v);
    return {iv, -(d * iv * iv)};
  }
  Dual& operator/=(const Dual& o) { return *this *= o.inv(); }
  Dual pow(int n) const {
    if (n < 0) return inv().pow(-n);
    Dual r(Ring<T>::one());
    for (int i = 0; i < n; ++i) r *= *this;
    return r;
  }

  friend Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
  friend Dual operator/(Dual a, const Dual& b) { return a /= b; }
};

template <class T>
struct Ring<Dual<T>> {
  static Dual<T> zero() { return Dual<T>(); }
  static Dual<T> one() { return Dual<T>(Ring<T>::one()); }
  static bool is_zero(const Dual<T>& c) { return Ring<T>::is_zero(c.v) && Ring<T>::is_zero(c.d); }
  static Dual<T> inv(const Dual<T>& c) { return c.inv(); }
  static Dual<T> times_int(const Dual<T>& c, long k) { return {Ring<T>::times_int(c.v, k), Ring<T>::times_int(c.d, k)}; }
  static void add_product(Dual<T>& acc, const Dual<T>& a, const Dual<T>& b) { acc += a * b; }
};

using DualSeries = Dual<Series>;

// ln of a dual series whose value part has constant term 1
inline DualSeries log1(const DualSeries& x) { return {log1(x.v), x.d * x.v.inv()}; }

}  // namespace qkm
