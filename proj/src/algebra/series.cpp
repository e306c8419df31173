#include "qkm/series.hpp"

#include <sstream>
#include <stdexcept>

namespace qkm {

std::string var_name(Var v) {
  switch (v) {
    case Var::lambda: return "lambda";
    case Var::h: return "h";
    case Var::t: return "t";
    case Var::z: return "z";
    case Var::u: return "u";
    case Var::delta: return "delta";
  }
  return "?";
}

Var parse_var(const std::string& name) {
  for (Var v : {Var::lambda, Var::h, Var::t, Var::z, Var::u, Var::delta})
    if (var_name(v) == name) return v;
  throw std::invalid_argument("unknown series variable '" + name + "'");
}

Series from_coeffs(const std::vector<Scalar>& c, int prec, Var v, int lo) { return Series(v, lo, c, prec); }

namespace {

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

Series sqrt(const Series& a) {
  if (a.is_zero()) throw std::domain_error("square root of a series vanishing to its precision");
  int v = a.lo();
  if (v % 2 != 0) throw std::domain_error("square root of a series with odd valuation");
  if (a.exact() && a.coeffs().size() > 1) throw PrecisionError("square root of an exact non-monomial needs a truncation order");
  Scalar r0 = a.coeffs()[0].sqrt_exact();
  if (a.exact()) return Series::monomial(r0, v / 2, a.var());
  int prec = a.prec() - v / 2;
  int n = prec - v / 2;
  std::vector<Scalar> out;
  out.reserve(static_cast<std::size_t>(std::max(n, 0)));
  out.push_back(r0);
  Scalar inv2r0 = (Scalar(2) * r0).inv();
  for (int k = 1; k < n; ++k) {
    Scalar acc = a.at(v + k);
    for (int j = 1; j < k; ++j) acc -= out[static_cast<std::size_t>(j)] * out[static_cast<std::size_t>(k - j)];
    out.push_back(acc * inv2r0);
  }
  return Series(a.var(), v / 2, std::move(out), prec);
}

Series log1(const Series& a) {
  if (a.lo() != 0 || a.is_zero() || !a.coeffs()[0].is_one())
    throw std::domain_error("log needs constant term 1");
  if (a.exact() && a.coeffs().size() == 1) return Series::zero(a.var());
  return (a.deriv() * a.inv()).integ();
}

Series exp0(const Series& a) {
  if (a.valuation() < 1) throw std::domain_error("exp needs positive valuation");
  if (a.exact() && a.is_zero()) return cst(1, a.var());
  if (a.exact()) throw PrecisionError("exp of an exact series needs a truncation order");
  int p = a.prec();
  std::vector<Scalar> e(static_cast<std::size_t>(std::max(p, 1)));
  e[0] = Scalar(1);
  for (int n = 1; n < p; ++n) {
    Scalar acc;
    for (int k = 1; k <= n; ++k) acc += Scalar(k) * a.at(k) * e[static_cast<std::size_t>(n - k)];
    e[static_cast<std::size_t>(n)] = acc * Scalar(1, n);
  }
  return Series(a.var(), 0, std::move(e), p);
}

Series compose(const Series& a, const Series& b) {
  if (b.valuation() < 1) throw std::domain_error("compose needs an inner series of positive valuation");
  if (a.lo() < 0) throw std::domain_error("compose needs a power series as outer function");
  int top = a.exact() ? a.end() : a.prec();
  Series r = Series::zero(b.var());
  for (int k = top - 1; k >= 0; --k) r = r * b + cst(a.at(k), b.var());
  if (!a.exact()) {
    long cap = static_cast<long>(a.prec()) * b.valuation();
    if (cap < Series::kExact) r = r.truncated(static_cast<int>(cap));
  }
  return r;
}

Series revert(const Series& a) {
  if (a.valuation() != 1) throw std::domain_error("revert needs a = c1 x + O(x^2) with c1 != 0");
  int p = a.exact() ? Series::kExact : a.prec();
  if (a.exact()) throw PrecisionError("revert of an exact series needs a truncation order");
  Scalar c1inv = a.at(1).inv();
  Series x = Series::variable(a.var(), p);
  Series nonlin = a - Series::monomial(a.at(1), 1, a.var());
  Series g = x * c1inv;
  for (int it = 0; it < p; ++it) g = (x - compose(nonlin, g)) * c1inv;
  return g.truncated(p);
}

Series to_h(const Series& s) {
  std::vector<Scalar> c;
  c.reserve(s.coeffs().size() * 2);
  for (std::size_t i = 0; i < s.coeffs().size(); ++i) {
    if (i) c.emplace_back();
    c.push_back(s.coeffs()[i]);
  }
  int prec = s.exact() ? Series::kExact : 2 * s.prec();
  return Series(Var::h, 2 * s.lo(), std::move(c), prec);
}

bool has_odd_h(const Series& s) {
  for (std::size_t i = 0; i < s.coeffs().size(); ++i) {
    int k = s.lo() + static_cast<int>(i);
    if ((k % 2 != 0) && !s.coeffs()[i].is_zero()) return true;
  }
  return false;
}

Series from_h(const Series& s) {
  if (has_odd_h(s)) throw std::domain_error("h-series has odd powers; not a lambda-series");
  int plo = -floor_div(-s.lo(), 2);
  int pr = s.exact() ? Series::kExact : floor_div(s.prec() + 1, 2);
  int top = s.exact() ? floor_div(s.end() + 1, 2) : pr;
  std::vector<Scalar> c;
  for (int k = plo; k < top; ++k) c.push_back(s.at(2 * k));
  return Series(Var::lambda, plo, std::move(c), pr);
}

bool is_real(const Series& a) {
  for (const auto& c : a.coeffs())
    if (!c.is_real()) return false;
  return true;
}

Series real_part(const Series& a) {
  std::vector<Scalar> c;
  for (const auto& x : a.coeffs()) c.emplace_back(x.re());
  return Series(a.var(), a.lo(), std::move(c), a.prec());
}

Series imag_part(const Series& a) {
  std::vector<Scalar> c;
  for (const auto& x : a.coeffs()) c.emplace_back(x.im());
  return Series(a.var(), a.lo(), std::move(c), a.prec());
}

std::vector<Scalar> coeff_range(const Series& s, int a, int b) {
  std::vector<Scalar> out;
  for (int k = a; k < b; ++k) out.push_back(s.coef(k));
  return out;
}

bool agree(const Series& a, const Series& b) {
  Series d = a - b;
  return d.is_zero();
}

int first_difference(const Series& a, const Series& b, int from, int upto) {
  for (int k = from; k < upto; ++k) {
    if (k >= a.prec() || k >= b.prec()) return k;
    if (a.at(k) != b.at(k)) return k;
  }
  return upto;
}

std::string to_string(const Series& s) {
  std::ostringstream os;
  bool first = true;
  std::string v = var_name(s.var());
  for (std::size_t i = 0; i < s.coeffs().size(); ++i) {
    const Scalar& c = s.coeffs()[i];
    if (c.is_zero()) continue;
    int k = s.lo() + static_cast<int>(i);
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    if (k != 0) os << "*" << v << "^" << k;
  }
  if (first) os << "0";
  if (!s.exact()) os << " + O(" << v << "^" << s.prec() << ")";
  return os.str();
}

nlohmann::json to_json(const Series& s) {
  nlohmann::json j;
  j["variable"] = var_name(s.var());
  j["lowest_exponent"] = s.lo();
  j["order"] = s.exact() ? s.end() : s.prec();
  j["exact"] = s.exact();
  nlohmann::json arr = nlohmann::json::array();
  int stop = s.exact() ? s.end() : s.prec();
  for (int k = s.lo(); k < stop; ++k) arr.push_back(s.at(k).str());
  j["coefficients"] = arr;
  return j;
}

Series series_from_json(const nlohmann::json& j) {
  Var v = parse_var(j.at("variable").get<std::string>());
  int lo = j.at("lowest_exponent").get<int>();
  int order = j.at("order").get<int>();
  bool exact = j.value("exact", false);
  std::vector<Scalar> c;
  for (const auto& x : j.at("coefficients")) c.push_back(Scalar::parse(x.get<std::string>()));
  return Series(v, lo, std::move(c), exact ? Series::kExact : order);
}

}  // namespace qkm
