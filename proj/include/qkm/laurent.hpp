#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qkm/scalar.hpp"

namespace qkm {

enum class Var : unsigned char { lambda, h, t, z, u, delta };

std::string var_name(Var v);
Var parse_var(const std::string& name);

class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// a leading coefficient was lost to truncation; a higher working order may recover it
class VanishingError : public PrecisionError {
 public:
  using PrecisionError::PrecisionError;
};

// Minimal ring interface used by Laurent<C>.
template <class C>
struct Ring;

template <>
struct Ring<Scalar> {
  static Scalar zero() { return Scalar(); }
  static Scalar one() { return Scalar(1); }
  static bool is_zero(const Scalar& c) { return c.is_zero(); }
  static Scalar inv(const Scalar& c) { return c.inv(); }
  static Scalar times_int(const Scalar& c, long k) { return c * Scalar(k); }
  static void add_product(Scalar& acc, const Scalar& a, const Scalar& b) { acc.add_mul(a, b); }
};

// Truncated Laurent series sum_{k>=lo} c_k x^k + O(x^prec).
// prec == kExact marks an exact finite expansion (constants, monomials, fixed polynomials).
template <class C>
class Laurent {
 public:
  static constexpr int kExact = 1 << 28;

  Laurent() = default;
  Laurent(Var v, int lo, std::vector<C> coeffs, int prec)
      : var_(v), lo_(lo), c_(std::move(coeffs)), prec_(prec) {
    normalize();
  }

  static Laurent zero(Var v = Var::lambda, int prec = kExact) { return Laurent(v, 0, {}, prec); }
  static Laurent constant(const C& c, Var v = Var::lambda, int prec = kExact) {
    return Laurent(v, 0, {c}, prec);
  }
  static Laurent monomial(const C& c, int k, Var v, int prec = kExact) { return Laurent(v, k, {c}, prec); }
  static Laurent variable(Var v, int prec = kExact) { return monomial(Ring<C>::one(), 1, v, prec); }

  Var var() const { return var_; }
  int lo() const { return lo_; }
  int valuation() const { return c_.empty() ? prec_ : lo_; }
  int prec() const { return prec_; }
  int end() const { return lo_ + static_cast<int>(c_.size()); }
  bool exact() const { return prec_ >= kExact / 2; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<C>& coeffs() const { return c_; }

  // scalar-like: exact and only a constant term, usable with any variable tag
  bool is_constant() const { return exact() && (c_.empty() || (lo_ == 0 && c_.size() == 1)); }

  C at(int k) const {
    int i = k - lo_;
    if (i < 0 || i >= static_cast<int>(c_.size())) return Ring<C>::zero();
    return c_[static_cast<std::size_t>(i)];
  }
  C coef(int k) const {
    if (k >= prec_) throw PrecisionError("coefficient " + std::to_string(k) + " beyond precision " + std::to_string(prec_));
    return at(k);
  }

  Laurent with_var(Var v) const {
    Laurent r = *this;
    r.var_ = v;
    return r;
  }
  Laurent truncated(int p) const {
    Laurent r = *this;
    r.prec_ = std::min(prec_, p);
    r.normalize();
    return r;
  }
  // multiply by x^k
  Laurent shifted(int k) const {
    Laurent r = *this;
    r.lo_ += k;
    if (!exact()) r.prec_ += k;
    return r;
  }

  Laurent operator-() const {
    Laurent r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  Laurent& operator+=(const Laurent& o) { return *this = add(*this, o, false); }
  Laurent& operator-=(const Laurent& o) { return *this = add(*this, o, true); }
  Laurent& operator*=(const Laurent& o) { return *this = mul(*this, o); }
  Laurent& operator*=(const C& s) {
    if (Ring<C>::is_zero(s)) {
      *this = zero(var_, exact() ? kExact : prec_);
      return *this;
    }
    for (auto& x : c_) x = x * s;
    normalize();
    return *this;
  }
  Laurent& operator/=(const Laurent& o) { return *this = mul(*this, o.inv()); }

  friend Laurent operator+(const Laurent& a, const Laurent& b) { return add(a, b, false); }
  friend Laurent operator-(const Laurent& a, const Laurent& b) { return add(a, b, true); }
  friend Laurent operator*(const Laurent& a, const Laurent& b) { return mul(a, b); }
  friend Laurent operator/(const Laurent& a, const Laurent& b) { return mul(a, b.inv()); }
  friend Laurent operator*(Laurent a, const C& s) { return a *= s; }
  friend Laurent operator*(const C& s, Laurent a) { return a *= s; }
  friend Laurent operator+(const Laurent& a, const C& s) { return a + constant(s, a.var_); }
  friend Laurent operator+(const C& s, const Laurent& a) { return a + constant(s, a.var_); }
  friend Laurent operator-(const Laurent& a, const C& s) { return a - constant(s, a.var_); }
  friend Laurent operator-(const C& s, const Laurent& a) { return constant(s, a.var_) - a; }
  friend Laurent operator/(const Laurent& a, const C& s) { return a * Ring<C>::inv(s); }
  friend Laurent operator/(const C& s, const Laurent& a) { return a.inv() * s; }

  Laurent inv() const {
    if (c_.empty()) {
      if (exact()) throw std::domain_error("inverse of zero");
      throw VanishingError("inverse of a series that vanishes to its precision");
    }
    int v = lo_;
    C a0inv = Ring<C>::inv(c_[0]);
    if (exact()) {
      if (c_.size() == 1) return Laurent(var_, -v, {a0inv}, kExact);
      throw PrecisionError("inverse of an exact non-monomial needs an explicit truncation order");
    }
    int pr = prec_ - 2 * v;
    int n = pr + v;
    std::vector<C> out;
    out.reserve(static_cast<std::size_t>(std::max(n, 0)));
    for (int k = 0; k < n; ++k) {
      C acc = k == 0 ? Ring<C>::one() : Ring<C>::zero();
      int jmax = std::min(k, static_cast<int>(c_.size()) - 1);
      for (int j = 1; j <= jmax; ++j) {
        if (Ring<C>::is_zero(c_[static_cast<std::size_t>(j)])) continue;
        C t = c_[static_cast<std::size_t>(j)] * out[static_cast<std::size_t>(k - j)];
        acc = acc - t;
      }
      out.push_back(acc * a0inv);
    }
    return Laurent(var_, -v, std::move(out), pr);
  }

  Laurent pow(int n) const {
    if (n < 0) return inv().pow(-n);
    Laurent r = constant(Ring<C>::one(), var_);
    Laurent b = *this;
    while (n > 0) {
      if (n & 1) r *= b;
      n >>= 1;
      if (n) b *= b;
    }
    return r;
  }

  Laurent deriv() const {
    std::vector<C> out;
    out.reserve(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) out.push_back(Ring<C>::times_int(c_[i], lo_ + static_cast<int>(i)));
    return Laurent(var_, lo_ - 1, std::move(out), exact() ? kExact : prec_ - 1);
  }

  // Antiderivative with zero constant; throws if the x^-1 coefficient is nonzero.
  Laurent integ() const {
    if (!Ring<C>::is_zero(at(-1))) throw std::domain_error("integrating x^-1");
    std::vector<C> out;
    out.reserve(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) {
      int k = lo_ + static_cast<int>(i) + 1;
      out.push_back(k == 0 ? Ring<C>::zero() : c_[i] * Ring<C>::inv(Ring<C>::times_int(Ring<C>::one(), k)));
    }
    return Laurent(var_, lo_ + 1, std::move(out), exact() ? kExact : prec_ + 1);
  }

  C residue() const { return at(-1); }

 private:
  void normalize() {
    if (prec_ >= kExact / 2) prec_ = kExact;
    int keep = std::max(0, prec_ - lo_);
    if (static_cast<int>(c_.size()) > keep) c_.resize(static_cast<std::size_t>(keep));
    std::size_t first = 0;
    while (first < c_.size() && Ring<C>::is_zero(c_[first])) ++first;
    if (first) {
      c_.erase(c_.begin(), c_.begin() + static_cast<long>(first));
      lo_ += static_cast<int>(first);
    }
    while (!c_.empty() && Ring<C>::is_zero(c_.back())) c_.pop_back();
    if (c_.empty()) lo_ = exact() ? 0 : prec_;
  }

  static Var pick_var(const Laurent& a, const Laurent& b) {
    if (a.var_ == b.var_) return a.var_;
    if (a.is_constant()) return b.var_;
    if (b.is_constant()) return a.var_;
    throw std::invalid_argument("series variable mismatch: " + var_name(a.var_) + " vs " + var_name(b.var_));
  }

  static Laurent add(const Laurent& a, const Laurent& b, bool subtract) {
    Var v = pick_var(a, b);
    int pr = std::min(a.prec_, b.prec_);
    if (a.c_.empty() && b.c_.empty()) return zero(v, pr);
    int lo = kExact, hi = -kExact;
    for (const Laurent* x : {&a, &b}) {
      if (x->c_.empty()) continue;
      lo = std::min(lo, x->lo_);
      hi = std::max(hi, x->end());
    }
    hi = std::min(hi, pr);
    if (lo >= hi) return zero(v, pr);
    std::vector<C> out(static_cast<std::size_t>(hi - lo), Ring<C>::zero());
    for (int k = std::max(lo, a.lo_); k < std::min(hi, a.end()); ++k) out[static_cast<std::size_t>(k - lo)] = a.c_[static_cast<std::size_t>(k - a.lo_)];
    for (int k = std::max(lo, b.lo_); k < std::min(hi, b.end()); ++k) {
      auto& slot = out[static_cast<std::size_t>(k - lo)];
      const C& y = b.c_[static_cast<std::size_t>(k - b.lo_)];
      slot = subtract ? slot - y : slot + y;
    }
    return Laurent(v, lo, std::move(out), pr);
  }

  static Laurent mul(const Laurent& a, const Laurent& b) {
    Var v = pick_var(a, b);
    int va = a.valuation(), vb = b.valuation();
    long pa = a.prec_, pb = b.prec_;
    long pr = std::min(pa + vb, pb + va);
    if (a.exact() && b.exact()) pr = kExact;
    if (pr > kExact) pr = kExact;
    if (a.c_.empty() || b.c_.empty()) return zero(v, static_cast<int>(pr));
    int lo = a.lo_ + b.lo_;
    long n = std::min<long>(pr - lo, static_cast<long>(a.c_.size() + b.c_.size() - 1));
    if (n <= 0) return zero(v, static_cast<int>(pr));
    std::vector<C> out(static_cast<std::size_t>(n), Ring<C>::zero());
    for (std::size_t i = 0; i < a.c_.size() && static_cast<long>(i) < n; ++i) {
      if (Ring<C>::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size() && static_cast<long>(i + j) < n; ++j) {
        if (Ring<C>::is_zero(b.c_[j])) continue;
        Ring<C>::add_product(out[i + j], a.c_[i], b.c_[j]);
      }
    }
    return Laurent(v, lo, std::move(out), static_cast<int>(pr));
  }

  Var var_ = Var::lambda;
  int lo_ = 0;
  std::vector<C> c_;
  int prec_ = kExact;
};

// Laurent series can themselves serve as coefficients.
template <class C>
struct Ring<Laurent<C>> {
  using L = Laurent<C>;
  static L zero() { return L::zero(); }
  static L one() { return L::constant(Ring<C>::one()); }
  static bool is_zero(const L& c) { return c.is_zero(); }
  static L inv(const L& c) { return c.inv(); }
  static L times_int(const L& c, long k) { return c * Ring<C>::times_int(Ring<C>::one(), k); }
  static void add_product(L& acc, const L& a, const L& b) { acc += a * b; }
};

}  // namespace qkm
