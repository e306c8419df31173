#include "qkm/insertion.hpp"

#include <stdexcept>

namespace qkm {

void record(IdentityReport& rep, const Series& diff) {
  if (diff.is_zero()) return;
  rep.ok = false;
  int k = diff.valuation();
  if (rep.first_failing_order < 0 || k < rep.first_failing_order) rep.first_failing_order = k;
}

DeformationDerivatives deformation_derivatives(const SpectralInput& in, int order, std::size_t b) {
  if (b >= in.d()) throw std::invalid_argument("boundary index out of range");
  Deformation dp = derivative_part(solve_deformation_dual(in, order, b));
  DeformationDerivatives out;
  out.b = b;
  for (auto& x : dp.eps) out.deps.push_back(x.truncated(order));
  for (auto& x : dp.rho) out.drho.push_back(x.truncated(order));
  return out;
}

DerivData::DerivData(const SpectralInput& in, int W, std::size_t bb, const Scalar& rho_shift)
    : b(bb), dd(solve_deformation_dual(in, W, bb)) {
  if (!rho_shift.is_zero()) dd.rho[0].v = dd.rho[0].v + cst(rho_shift);
  dc = curve_of(dd);
  c.one = cst(1);
  c.lam = dc.lam.v;
  for (const auto& e : dd.eps) c.eps.push_back(e.v);
  for (const auto& r : dd.rho) c.rho.push_back(r.v);
}

Series DerivData::S_coeff_a(std::size_t k) const {
  Series rp = c.R(1, c.eps[k]);
  return cst(Scalar(dd.in.r[k])) * dRp_eps(k) / (rp * rp);
}

Series DerivData::S_coeff_c(std::size_t k) const {
  return cst(Scalar(dd.in.r[k])) * deps(k) / c.R(1, c.eps[k]);
}

// ---------------------------------------------------------------------------

GradedTable graded_d1(const Series& at_unit, int m0, int step) {
  if (at_unit.var() != Var::lambda) throw std::invalid_argument("graded tables need a lambda-series");
  GradedTable t;
  for (int n = at_unit.lo(); n < at_unit.end(); ++n) {
    Scalar c = at_unit.at(n);
    if (!c.is_zero()) t.push_back({n, m0 + step * n, c});
  }
  return t;
}

GradedTable creation_d1(const GradedTable& t) {
  GradedTable out;
  for (const auto& term : t) {
    if (term.m == 0) continue;
    out.push_back({term.n, term.m + 1, Scalar(2 * term.m) * term.c});
  }
  return out;
}

Series evaluate_graded(const GradedTable& t, const Scalar& e, int prec) {
  Series acc = Series::zero(Var::lambda, prec);
  Scalar inv2e = Scalar(1) / (Scalar(2) * e);
  for (const auto& term : t) {
    if (term.n >= prec) continue;
    Scalar w(1);
    for (int i = 0; i < term.m; ++i) w = w * inv2e;
    acc = acc + Series::monomial(term.c * w, term.n, Var::lambda);
  }
  return acc;
}

Series creation_1mm(const Series& f) { return cst(4) * lam(Series::kExact) * f.deriv(); }

// ---------------------------------------------------------------------------

namespace {

using US = Laurent<Series>;

// curve re-expanded around a point: values are series in the local variable u
Curve<US> local_curve(const Curve<Series>& c) {
  Curve<US> L;
  L.one = US::constant(c.one, Var::u);
  L.lam = US::constant(c.lam, Var::u);
  for (const auto& e : c.eps) L.eps.push_back(US::constant(e, Var::u));
  for (const auto& r : c.rho) L.rho.push_back(US::constant(r, Var::u));
  return L;
}

template <class X>
X omega02_plain(const Curve<X>& c, const X& z, const X& w) {
  X a = c.one / (z - w), b = c.one / (z + w);
  return (a * a + b * b) / (c.R(1, z) * c.R(1, w));
}

// d_u d_v then d_z of Q(v;z)/(R'(z)R'(-z)(z+u))
template <class X>
X omega03_part(const Curve<X>& c, const X& z, const X& v, const X& u) {
  X ip = c.one / (v + z), im = c.one / (v - z);
  X A = -(ip * ip + im * im);
  X dA = c.c(2) * ip * ip * ip - c.c(2) * im * im * im;
  X mz = -z;
  X r1 = c.R(1, z), r1m = c.R(1, mz);
  X zu = z + u;
  X k = c.one / (r1 * r1m * zu * zu);
  X kp = k * (-c.R(2, z) / r1 + c.R(2, mz) / r1m - c.c(2) / zu);
  return -(dA * k) - A * kp;
}

// sum_i -Q'(z;b)Q'(v;b)/((u-b)^2 R'(-b) R''(b)) with Q'(a;b) = -1/(a+b)^2 - 1/(a-b)^2
template <class BE, class P>
P omega03_roots(const BE& be, const P& z, const P& v, const P& u) {
  auto zl = be.lift(z), vl = be.lift(v), ul = be.lift(u);
  return be.sum_plain([&](const auto& C, const auto& b, const auto&) {
    auto qz = (zl + b).pow(-2) + (zl - b).pow(-2);
    auto qv = (vl + b).pow(-2) + (vl - b).pow(-2);
    auto ub = ul - b;
    return -(qz * qv) / (ub * ub * C.R(1, -b) * C.R(2, b));
  });
}

template <class BE>
Series point_of(const BE& be, const PointSpec& p) {
  return p.at_eps ? be.plain_eps(p.b) : be.plain_const(p.z);
}

template <class BE, class P>
P omega03_general(const BE& be, const P& z, const P& v, const P& u) {
  const auto& c = be.plain();
  P body = omega03_part(c, z, v, u) + omega03_part(c, v, z, u) + omega03_roots(be, z, v, u);
  return c.lam * body / (c.R(1, u) * c.R(1, z) * c.R(1, v));
}

template <class BE, class P>
P omega03_diag(const BE& be, const P& x) {
  const auto& c = be.plain();
  Curve<US> L = local_curve(c);
  const int M = 10;
  US s = US::variable(Var::u, M);
  US xs = US::constant(x, Var::u);
  US zz = xs + s, vv = xs - s;
  US near = omega03_part(L, zz, vv, xs) + omega03_part(L, vv, zz, xs);
  if (near.prec() < 1) throw PrecisionError("local expansion too short for the diagonal limit");
  for (int k = near.lo(); k < 0; ++k)
    if (!Ring<Series>::is_zero(near.at(k))) throw std::logic_error("diagonal limit of Omega_{0,3} is singular");
  P body = near.at(0) + omega03_roots(be, x, x, x);
  P r1 = c.R(1, x);
  return c.lam * body / (r1 * r1 * r1);
}

}  // namespace

Series omega02(const SpectralInput& in, int order, const Scalar& z, const Scalar& w) {
  if (z == w || z == -w) throw std::invalid_argument("omega02 needs z != +-w; use the regularized diagonal");
  Curve<Series> c = curve_of(solve_deformation(in, order));
  return omega02_plain(c, cst(z), cst(w)).truncated(order);
}

Series omega02_diagonal(const SpectralInput& in, int order, std::size_t a) {
  Curve<Series> c = curve_of(solve_deformation(in, order));
  Series x = c.eps.at(a);
  Series r1 = c.R(1, x), r2 = c.R(2, x), r3 = c.R(3, x);
  Series tx = cst(2) * x;
  Series v = cst(1) / (r1 * r1 * tx * tx) +
             (r2 * r2 / (cst(4) * r1 * r1) - r3 / (cst(6) * r1)) / (r1 * r1);
  return v.truncated(order);
}

Series omega02_diagonal_limit(const SpectralInput& in, int order, std::size_t a) {
  Curve<Series> c = curve_of(solve_deformation(in, order));
  Curve<US> L = local_curve(c);
  const int M = 6;
  US s = US::variable(Var::u, M);
  US x = US::constant(c.eps.at(a), Var::u);
  US w = x + s;
  US diff = L.R(0, w) - L.R(0, x);
  US reg = omega02_plain(L, x, w) - (diff * diff).inv();
  return reg.at(0).truncated(order);
}

Series omega03(const SpectralInput& in, int order, PointSpec z, PointSpec v, PointSpec u) {
  // the brace is regular only with eps in the last slot; the function is symmetric
  int at_eps = int(z.at_eps) + int(v.at_eps) + int(u.at_eps);
  if (at_eps == 3 && z.b == v.b && v.b == u.b) return omega03_diagonal(in, order, u.b);
  if (at_eps > 1) throw std::invalid_argument("omega03 supports at most one argument at an eps_k, or all three equal");
  if (z.at_eps) std::swap(z, u);
  if (v.at_eps) std::swap(v, u);
  for (const auto& p : {z, v, u})
    if (p.at_eps && p.b >= in.d()) throw std::invalid_argument("boundary index out of range");
  if (!z.at_eps && !v.at_eps && (z.z == v.z || z.z == -v.z))
    throw std::invalid_argument("omega03 needs distinct points");
  return on_backend(in, order, [&](const auto& be, int) {
    return omega03_general(be, point_of(be, z), point_of(be, v), point_of(be, u));
  });
}

Series omega03_diagonal(const SpectralInput& in, int order, std::size_t b) {
  return on_backend(in, order, [&](const auto& be, int) { return omega03_diag(be, be.plain_eps(b)); });
}

Series omega03_from_creation(const SpectralInput& in, int order, const Scalar& z, const Scalar& v, std::size_t b) {
  return adaptive(order, [&](int W) {
    DerivData D(in, W, b);
    const Curve<Series>& c = D.c;
    Series zs = cst(z), vs = cst(v);
    Series d_om = omega02_plain(D.dc, DualSeries(zs), DualSeries(vs)).d;
    Series om = omega02_plain(c, zs, vs);
    Series r1z = c.R(1, zs), r1v = c.R(1, vs);
    Series im = cst(1) / (zs - vs), ip = cst(1) / (zs + vs);
    Series bz = cst(-2) * im * im * im - cst(2) * ip * ip * ip;
    Series bv = cst(2) * im * im * im - cst(2) * ip * ip * ip;
    Series dz = (-(c.R(2, zs) / r1z) * om + bz / (r1z * r1v)) / r1z;
    Series dv = (-(c.R(2, vs) / r1v) * om + bv / (r1z * r1v)) / r1v;
    Series inner = d_om - dz * D.dR(zs) - dv * D.dR(vs);
    return cst(Scalar(-in.N, in.r[b])) * inner;
  });
}

// ---------------------------------------------------------------------------

std::vector<Scalar> default_points() { return {Scalar(2), Scalar(3), Scalar(5, 2)}; }

namespace {

IdentityReport new_report(const std::string& name, const SpectralInput& in, int order) {
  IdentityReport r;
  r.name = name;
  r.d = in.d();
  r.max_order_checked = order;
  r.ok = true;
  return r;
}

// per-root identities D(beta_i) = 0 are certified through weighted root sums:
// moments beta^m for m < 2d, and 1/(z - beta) at the sample points
template <class Summand>
void check_per_root(IdentityReport& rep, const SpectralInput& in, int order, const std::vector<Scalar>& points,
                    std::size_t b, const Scalar& rho_shift, Summand&& D) {
  std::size_t nroots = 2 * in.d();
  auto run = [&](auto weight) {
    Series diff = on_backend(in, order, [&](const auto& be, int W) {
      DerivData dd(in, W, b, rho_shift);
      return be.sum_plain([&](const auto& C, const auto& beta, const auto& hp) {
        return D(be, dd, C, beta, hp) * weight(be, C, beta);
      });
    });
    record(rep, diff);
  };
  for (std::size_t m = 0; m < nroots; ++m) {
    rep.points.push_back("beta^" + std::to_string(m));
    run([m](const auto&, const auto& C, const auto& beta) {
      auto w = C.one;
      for (std::size_t i = 0; i < m; ++i) w = w * beta;
      return w;
    });
  }
  for (const auto& z : points) {
    rep.points.push_back("1/(" + z.str() + "-beta)");
    run([z](const auto& be, const auto& C, const auto& beta) { return C.one / (be.lift(be.plain_const(z)) - beta); });
  }
}

}  // namespace

std::vector<IdentityReport> lemma_checks(const SpectralInput& in, int order, std::size_t b,
                                         const std::vector<Scalar>& points, const Scalar& rho_shift) {
  if (b >= in.d()) throw std::invalid_argument("boundary index out of range");
  std::vector<IdentityReport> out;
  const std::size_t d = in.d();
  const Scalar rb_over_N(in.r[b], in.N);
  const Scalar rb(in.r[b]);

  // lem:1 with the factor -lambda on the right, lambda-series only
  {
    IdentityReport rep = new_report("lem:1", in, order);
    for (const auto& z : points) {
      rep.points.push_back(z.str());
      Series diff = adaptive(order, [&](int W) {
        DerivData D(in, W, b, rho_shift);
        const auto& c = D.c;
        Series zs = cst(z), mz = cst(-z), eb = c.eps[b];
        Series lhs = D.dR(mz) + c.R(1, mz) / c.R(1, zs) * D.dR(zs);
        Series im = cst(1) / (zs - eb), ip = cst(1) / (zs + eb);
        Series rhs = c.lam * cst(rb_over_N) * (im * im + ip * ip) / (c.R(1, zs) * c.R(1, eb));
        return lhs - rhs;
      });
      record(rep, diff);
    }
    out.push_back(rep);
  }

  // lem:2 in both printed forms; d^int z = -d_b R(z) / R'(z)
  {
    IdentityReport rep = new_report("lem:2", in, order);
    IdentityReport rep2 = new_report("lem:2 (interpolation form)", in, order);
    for (const auto& z : points) {
      rep.points.push_back(z.str());
      rep2.points.push_back(z.str());
      Series diff = on_backend(in, order, [&](const auto& be, int W) {
        DerivData D(in, W, b, rho_shift);
        const auto& c = be.plain();
        Series zp = be.plain_const(z), eb = be.plain_eps(b);
        Series dint = to_plain(be, -D.dR(cst(z)) / D.c.R(1, cst(z)));
        Series lhs = -be.plain_const(Scalar(in.N) / rb) * c.R(1, eb) * dint;
        Series ze = zp + eb;
        auto zl = be.lift(zp), el = be.lift(eb);
        Series roots = be.sum_plain([&](const auto& C, const auto& beta, const auto&) {
          auto be2 = beta - el;
          return (C.one / (zl - beta) + C.one / (zl + beta)) / (be2 * be2 * C.R(1, -beta) * C.R(2, beta));
        });
        Series rhs = c.lam * (c.one / (c.R(1, zp) * c.R(1, -zp) * ze * ze) + roots);
        return Series(lhs - rhs);
      });
      record(rep, diff);
      Series diff2 = on_backend(in, order, [&](const auto& be, int W) {
        DerivData D(in, W, b, rho_shift);
        const auto& c = be.plain();
        Series zp = be.plain_const(z), eb = be.plain_eps(b);
        Series dint = to_plain(be, -D.dR(cst(z)) / D.c.R(1, cst(z)));
        Series lhs = c.R(1, eb) * dint / be.plain_const(rb);
        auto zl = be.lift(zp), el = be.lift(eb);
        Series roots = be.sum_plain([&](const auto& C, const auto& beta, const auto&) {
          auto bp = beta + el, bm = beta - el;
          return (C.one / (bp * bp) + C.one / (bm * bm)) / ((zl - beta) * C.R(1, -beta) * C.R(2, beta));
        });
        return Series(lhs + c.lam * roots / be.plain_const(Scalar(in.N)));
      });
      record(rep2, diff2);
    }
    out.push_back(rep);
    out.push_back(rep2);
  }

  // pfe0 at pairs of sample points
  {
    IdentityReport rep = new_report("pfe0", in, order);
    for (std::size_t i = 0; i < points.size(); ++i) {
      const Scalar& z = points[i];
      const Scalar& w = points[(i + 1) % points.size()];
      rep.points.push_back("(" + z.str() + "," + w.str() + ")");
      Series diff = on_backend(in, order, [&](const auto& be, int) {
        const auto& c = be.plain();
        Series zp = be.plain_const(z), wp = be.plain_const(w), zw = zp + wp;
        Series r1w = c.R(1, wp), r1mw = c.R(1, -wp);
        Series lhs = c.one / (c.R(1, zp) * c.R(1, -zp) * zw * zw);
        Series rhs = c.one / (r1w * r1mw * zw * zw) + (c.R(2, wp) / r1w - c.R(2, -wp) / r1mw) / (r1w * r1mw * zw);
        auto zl = be.lift(zp), wl = be.lift(wp);
        rhs = rhs + be.sum_plain([&](const auto& C, const auto& beta, const auto&) {
          auto wpb = wl + beta, wmb = wl - beta;
          return (C.one / ((zl - beta) * wpb * wpb) - C.one / ((zl + beta) * wmb * wmb)) / (C.R(2, beta) * C.R(1, -beta));
        });
        return Series(lhs - rhs);
      });
      record(rep, diff);
    }
    out.push_back(rep);
  }

  // pfe: both lines
  {
    IdentityReport rep = new_report("pfe", in, order);
    for (const auto& z : points) {
      rep.points.push_back(z.str());
      for (int line = 0; line < 2; ++line) {
        Series diff = on_backend(in, order, [&](const auto& be, int) {
          const auto& c = be.plain();
          Series zp = be.plain_const(z);
          Series r1 = c.R(1, zp), r2 = c.R(2, zp);
          auto zl = be.lift(zp);
          Series epsum = zp - zp;
          for (std::size_t k = 0; k < d; ++k) {
            Series t = c.one / (zp + be.plain_eps(k));
            epsum = epsum + (line == 0 ? t : t * t);
          }
          if (line == 0) {
            Series rs = be.sum_plain([&](const auto& C, const auto& beta, const auto&) { return C.one / (zl - beta); });
            return Series(r2 / r1 - rs + c.c(2) * epsum);
          }
          Series rs = be.sum_plain([&](const auto& C, const auto& beta, const auto&) { return (zl - beta).pow(-2); });
          return Series(c.R(3, zp) / r1 - r2 * r2 / (r1 * r1) + rs - c.c(2) * epsum);
        });
        record(rep, diff);
      }
    }
    out.push_back(rep);
  }

  // id2, per ramification point
  {
    IdentityReport rep = new_report("id2", in, order);
    check_per_root(rep, in, order, points, b, rho_shift, [d](const auto& be, const DerivData&, const auto& C, const auto& beta, const auto& hp) {
      auto r2 = C.R(2, beta), r3 = C.R(3, beta), r4 = C.R(4, beta);
      auto epsum = C.one - C.one;
      for (std::size_t k = 0; k < d; ++k) epsum = epsum + (beta + be.lift(be.plain_eps(k))).pow(-2);
      return r4 / (C.c(3) * r2) - r3 * r3 / (C.c(4) * r2 * r2) + hp.others() - C.c(2) * epsum;
    });
    out.push_back(rep);
  }

  // RE
  {
    IdentityReport rep = new_report("RE", in, order);
    for (const auto& z : points) {
      rep.points.push_back(z.str());
      Series diff = adaptive(order, [&](int W) {
        DerivData D(in, W, b, rho_shift);
        const auto& c = D.c;
        auto S = [&](const Series& x) {
          Series acc = Series::zero();
          for (std::size_t k = 0; k < d; ++k) {
            Series t = cst(1) / (c.eps[k] + x);
            acc = acc + D.S_coeff_a(k) * t + D.S_coeff_c(k) * t * t;
          }
          return acc;
        };
        Series zs = cst(z), mz = cst(-z), eb = c.eps[b];
        Series lhs = (c.R(1, mz) * S(zs) + c.R(1, zs) * S(mz)) / cst(rb);
        Series im = cst(1) / (zs - eb), ip = cst(1) / (zs + eb);
        return lhs - (im * im + ip * ip) / c.R(1, eb);
      });
      record(rep, diff);
    }
    out.push_back(rep);
  }

  // betaid, per ramification point
  {
    IdentityReport rep = new_report("betaid", in, order);
    check_per_root(rep, in, order, points, b, rho_shift, [&](const auto& be, const DerivData& D, const auto& C, const auto& beta, const auto&) {
      auto S = C.one - C.one;
      for (std::size_t k = 0; k < d; ++k) {
        auto t = C.one / (be.lift(be.plain_eps(k)) + beta);
        S = S + be.lift(to_plain(be, D.S_coeff_a(k))) * t + be.lift(to_plain(be, D.S_coeff_c(k))) * t * t;
      }
      auto el = be.lift(be.plain_eps(b));
      auto bp = beta + el, bm = beta - el;
      auto rhs = (C.one / (bp * bp) + C.one / (bm * bm)) / (C.R(1, -beta) * C.R(1, el));
      return S / C.c(rb) - rhs;
    });
    out.push_back(rep);
  }

  // d eps_a / d e_b against the closed form over ramification points
  {
    IdentityReport rep = new_report("deps closed form", in, order);
    for (std::size_t a = 0; a < d; ++a) {
      rep.points.push_back("a=" + std::to_string(a + 1));
      Series diff = on_backend(in, order, [&](const auto& be, int W) {
        DerivData D(in, W, b, rho_shift);
        const auto& c = be.plain();
        Series ea = be.plain_eps(a), eb = be.plain_eps(b);
        auto al = be.lift(ea), bl = be.lift(eb);
        Series roots = be.sum_plain([&](const auto& C, const auto& beta, const auto&) {
          auto bp = beta + bl, bm = beta - bl;
          return (C.one / (bp * bp) + C.one / (bm * bm)) / ((al - beta) * C.R(1, -beta) * C.R(2, beta));
        });
        Series rhs = c.lam * be.plain_const(rb_over_N) / c.R(1, eb) * roots;
        rhs = -rhs;
        if (a == b) rhs = rhs + c.one / c.R(1, ea);
        return Series(to_plain(be, D.deps(a)) - rhs);
      });
      record(rep, diff);
    }
    out.push_back(rep);
  }

  return out;
}

}  // namespace qkm
