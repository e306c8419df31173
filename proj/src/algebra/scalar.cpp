#include "qkm/scalar.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace qkm {

namespace {

bool perfect_square(const mpz_class& z, mpz_class& root) {
  if (sgn(z) < 0) return false;
  root = sqrt(z);
  return root * root == z;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

mpq_class parse_rational(const std::string& raw) {
  std::string text = trim(raw);
  if (text.empty()) throw std::invalid_argument("empty rational");
  if (text[0] == '+') text = text.substr(1);
  for (char c : text) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '/'))
      throw std::invalid_argument("malformed rational '" + raw + "'");
  }
  auto slash = text.find('/');
  mpz_class num, den(1);
  if (num.set_str(text.substr(0, slash), 10) != 0) throw std::invalid_argument("malformed rational '" + raw + "'");
  if (slash != std::string::npos && den.set_str(text.substr(slash + 1), 10) != 0)
    throw std::invalid_argument("malformed rational '" + raw + "'");
  if (sgn(den) == 0) throw std::invalid_argument("zero denominator in '" + raw + "'");
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

std::string rational_str(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Scalar Scalar::parse(const std::string& raw) {
  std::string text = trim(raw);
  if (!text.empty() && text.back() == 'i') {
    std::string body = trim(text.substr(0, text.size() - 1));
    // split at the last sign that is not the leading one
    std::size_t cut = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
      if (body[k] == '+' || body[k] == '-') {
        cut = k;
        break;
      }
    }
    if (cut == std::string::npos) return Scalar(mpq_class(0), parse_rational(body.empty() ? "1" : body));
    std::string ims = trim(body.substr(cut));
    if (ims == "+" || ims == "-") ims += "1";
    return Scalar(parse_rational(body.substr(0, cut)), parse_rational(ims));
  }
  return Scalar(parse_rational(text));
}

Scalar& Scalar::operator+=(const Scalar& o) {
  re_ += o.re_;
  if (sgn(o.im_) != 0) im_ += o.im_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  re_ -= o.re_;
  if (sgn(o.im_) != 0) im_ -= o.im_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class r = re_ * o.re_ - im_ * o.im_;
  mpq_class m = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(m);
  return *this;
}

void Scalar::add_mul(const Scalar& a, const Scalar& b) {
  if (sgn(a.im_) == 0 && sgn(b.im_) == 0) {
    mpq_class t;
    mpq_mul(t.get_mpq_t(), a.re_.get_mpq_t(), b.re_.get_mpq_t());
    re_ += t;
    return;
  }
  *this += a * b;
}

Scalar Scalar::inv() const {
  if (is_zero()) throw std::domain_error("division by exact zero");
  if (sgn(im_) == 0) return Scalar(mpq_class(1) / re_);
  mpq_class n = re_ * re_ + im_ * im_;
  return Scalar(re_ / n, -im_ / n);
}

Scalar Scalar::sqrt_exact() const {
  if (!is_real()) throw std::domain_error("square root of non-real scalar not supported");
  mpq_class a = abs(re_);
  mpz_class rn, rd;
  if (!perfect_square(a.get_num(), rn) || !perfect_square(a.get_den(), rd))
    throw std::domain_error("no exact square root of " + rational_str(re_));
  mpq_class r(rn, rd);
  r.canonicalize();
  if (sgn(re_) < 0) return Scalar(mpq_class(0), r);
  return Scalar(r);
}

std::string Scalar::str() const {
  if (sgn(im_) == 0) return rational_str(re_);
  std::string ims = rational_str(abs(im_)) + " i";
  if (sgn(re_) == 0) return (sgn(im_) < 0 ? "-" : "") + ims;
  return rational_str(re_) + (sgn(im_) < 0 ? "-" : "+") + ims;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace qkm
