#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>

namespace qkm {

// Exact Gaussian rational re + im*i. Real values simply carry im == 0.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : re_(v) {}  // NOLINT
  Scalar(const mpq_class& re) : re_(re) {}  // NOLINT
  Scalar(const mpq_class& re, const mpq_class& im) : re_(re), im_(im) {}
  Scalar(long num, long den) : re_(num, den) { re_.canonicalize(); }

  static Scalar i() { return Scalar(mpq_class(0), mpq_class(1)); }
  static Scalar parse(const std::string& text);

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

  Scalar conj() const { return Scalar(re_, -im_); }
  Scalar inv() const;
  // Square root inside Q(i) restricted to real arguments; throws otherwise.
  Scalar sqrt_exact() const;

  Scalar operator-() const { return Scalar(-re_, -im_); }
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o) { return *this *= o.inv(); }
  // this += a*b
  void add_mul(const Scalar& a, const Scalar& b);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  // "p/q", "p/q+r/s i", "r/s i"
  std::string str() const;

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

mpq_class parse_rational(const std::string& text);
std::string rational_str(const mpq_class& q);

}  // namespace qkm
