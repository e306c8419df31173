#include "qkm/freenergy.hpp"

#include <stdexcept>

namespace qkm {

namespace {

IdentityReport report(const std::string& name, const SpectralInput& in, int order) {
  IdentityReport r;
  r.name = name;
  r.d = in.d();
  r.max_order_checked = order;
  r.ok = true;
  return r;
}

template <class T>
Poly<T> reflected(const Poly<T>& P) {
  Poly<T> out = P;
  for (std::size_t j = 1; j < out.size(); j += 2) out[j] = -out[j];
  return out;
}

// prod_i R'(-beta_i) = prod_i P(-beta_i) / prod_k P(eps_k)^2
template <class T>
T prod_rprime_reflected(const DeformationT<T>& def) {
  Poly<T> P = ramification_poly(def);
  T num = product_over_roots(P, reflected(P));
  T den = Ring<T>::one();
  for (const auto& e : def.eps) {
    T v = poly_eval(P, e);
    den = den * v * v;
  }
  return num / den;
}

mpz_class factorial(long n) {
  mpz_class f = 1;
  for (long i = 2; i <= n; ++i) f *= i;
  return f;
}

Series truncate_lambda(const Series& s, int order) { return s.truncated(order); }

}  // namespace

Series r_graph(const SpectralInput& in, int order) {
  std::size_t d = in.d();
  Scalar acc(0);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l) {
      if (k == l) continue;
      Scalar s = in.e[k] + in.e[l];
      acc += Scalar(in.r[k] + in.r[l]) / (s * s);
    }
  return (lam(order) * (acc / Scalar(in.N))).truncated(order);
}

Series ln_prod_h(const SpectralInput& in, int order) {
  if (in.d() != 1) throw std::invalid_argument("the branch-point route needs d = 1");
  return adaptive(order, [&](int W) {
    HBackend be(solve_deformation(in, W));
    Series p = cst(1, Var::h);
    for (const auto& beta : be.betas) p = p * be.curve.R(1, -beta);
    return log1(HBackend::lam_of(p));
  });
}

FreeEnergyResult f1(const SpectralInput& in, int order) {
  FreeEnergyResult out;
  out.d = in.d();
  out.ln_r0 = adaptive(order, [&](int W) {
    Curve<Series> c = curve_of(solve_deformation(in, W));
    return log1(c.R(1, cst(0)));
  });
  out.ln_prod = adaptive(order, [&](int W) { return log1(prod_rprime_reflected(solve_deformation(in, W))); });
  if (in.d() == 1) {
    out.r_neq = Series::zero(Var::lambda, Series::kExact);
  } else {
    out.r_neq = r_graph(in, order);
    out.r_neq_truncated = true;
  }
  Series f = (out.r_neq - out.ln_r0 - out.ln_prod) / Scalar(24);
  out.f1 = truncate_lambda(f, order);
  out.ln_r0 = truncate_lambda(out.ln_r0, order);
  out.ln_prod = truncate_lambda(out.ln_prod, order);
  return out;
}

Scalar f1_closed_coefficient(int n) {
  if (n < 1) return Scalar(0);
  mpz_class three = 1, four = 1;
  for (int i = 0; i < n; ++i) three *= 3;
  for (int i = 0; i < 2 * n - 1; ++i) four *= 2;
  mpz_class binom = factorial(2 * n - 1) / (factorial(n) * factorial(n - 1));
  mpq_class c(three * (four - binom), 12 * n);
  c.canonicalize();
  if (n % 2 == 1) c = -c;
  return Scalar(c);
}

LogDerivatives creation_of_logs(const SpectralInput& in, int order, std::size_t b) {
  if (b >= in.d()) throw std::invalid_argument("boundary index out of range");
  Scalar pref = -Scalar(in.N) / Scalar(in.r[b]);
  LogDerivatives out;
  out.Tb_ln_r0 = adaptive(order, [&](int W) {
    Curve<DualSeries> c = curve_of(solve_deformation_dual(in, W, b));
    DualSeries r0 = c.R(1, DualSeries(cst(0)));
    return Series(r0.d / r0.v * pref);
  });
  out.Tb_ln_prod = adaptive(order, [&](int W) {
    DualSeries x = prod_rprime_reflected(solve_deformation_dual(in, W, b));
    return Series(x.d / x.v * pref);
  });
  return out;
}

Series compensation_rhs(const SpectralInput& in, int order, std::size_t b, bool literal) {
  if (b >= in.d()) throw std::invalid_argument("boundary index out of range");
  std::size_t d = in.d();
  return on_backend(in, order, [&](const auto& be, int) {
    const auto& c = be.plain();
    auto eb = be.plain_eps(b);
    auto el = be.lift(eb);
    auto sum = be.sum_plain([&](const auto& C, const auto& beta, const auto& hp) {
      auto mb = -beta;
      auto r1m = C.R(1, mb), r2m = C.R(2, mb), r3m = C.R(3, mb);
      auto w = C.one / (r1m * C.R(2, beta));
      auto bm = beta - el, bp = beta + el, eb_b = el - beta;
      auto m = C.one / (bm * bm), p = C.one / (bp * bp);
      auto S1 = hp.plus(beta);
      auto S3p = S1 - C.one / (C.c(4) * beta * beta);
      auto epsum = C.one - C.one;
      for (std::size_t k = 0; k < d; ++k) epsum = epsum + (beta + be.lift(be.plain_eps(k))).pow(-2);
      auto tail = C.c(2) * r2m / (r1m * bp * bp * bp) + C.one / (beta * eb_b * eb_b * eb_b);
      auto mixed = r2m / (C.c(2) * r1m * beta) * (m + p);
      if (literal) {
        auto br = -m * (S1 / C.c(2) + C.c(4) * epsum + S3p) + p * (r3m / r1m + S1 / C.c(2) + S3p) - tail +
                  C.one / (beta * beta * eb_b * eb_b) - mixed;
        return w * br;
      }
      auto br = m * S1 + C.c(4) * m * epsum - p * r3m / r1m - C.c(3) * p * S1 + C.c(2) * p * S3p +
                C.c(2) * r2m / (r1m * bp * bp * bp) - C.one / (beta * eb_b * eb_b * eb_b) - mixed;
      return w * br;
    });
    if (literal) return decltype(sum)(sum / c.c(24));
    return decltype(sum)(c.lam * sum / (c.c(24) * c.R(1, eb)));
  });
}

CreationCheck f1_creation_check(const SpectralInput& in, int order, std::size_t b) {
  if (b >= in.d()) throw std::invalid_argument("boundary index out of range");
  CreationCheck out;
  PointSpec at = PointSpec::eps(b);
  Series om = omega11_closed(in, order, at);
  Series blob = omega11_blob(in, order, at);
  Series pure = omega11_closed(in, order, at, Om11Part::pure);
  LogDerivatives L = creation_of_logs(in, order, b);
  Series X = compensation_rhs(in, order, b, false);

  if (in.d() == 1) {
    IdentityReport rep = report("creation (homogeneity)", in, order);
    rep.points.push_back("eps_1");
    Series at_unit = f1(SpectralInput::single(Scalar(1, 2), order), order).f1;
    GradedTable t = creation_d1(graded_d1(at_unit, 0, 2));
    record(rep, (evaluate_graded(t, in.e[0], order) - om).truncated(order));
    out.checks.push_back(rep);

    IdentityReport rz = report("compensation vanishes", in, order);
    rz.points.push_back("eps_1");
    record(rz, X.truncated(order));
    out.checks.push_back(rz);
  }

  std::string pt = "eps_" + std::to_string(b + 1);
  {
    IdentityReport rep = report("creation (forward derivative)", in, order);
    rep.points.push_back(pt);
    record(rep, (X - (L.Tb_ln_r0 + L.Tb_ln_prod) / Scalar(24) - om).truncated(order));
    out.checks.push_back(rep);
  }
  {
    IdentityReport rep = report("step A: ln R'(0)", in, order);
    rep.points.push_back(pt);
    record(rep, (-L.Tb_ln_r0 / Scalar(24) - blob * Scalar(2, 3)).truncated(order));
    out.checks.push_back(rep);
  }
  {
    IdentityReport rep = report("steps B+C", in, order);
    rep.points.push_back(pt);
    record(rep, (X - L.Tb_ln_prod / Scalar(24) - pure - blob / Scalar(3)).truncated(order));
    out.checks.push_back(rep);
  }
  if (in.d() > 1) {
    // T_b R_graph / 24 = (lambda / (6 r_b)) sum_{l != b} (r_b + r_l)/(e_b + e_l)^3
    Scalar acc(0);
    for (std::size_t l = 0; l < in.d(); ++l) {
      if (l == b) continue;
      Scalar s = in.e[b] + in.e[l];
      acc += Scalar(in.r[b] + in.r[l]) / (s * s * s);
    }
    Series tg = lam(Series::kExact) * (acc / (Scalar(6) * Scalar(in.r[b])));
    IdentityReport rep = report("compensation at O(lambda)", in, 2);
    rep.points.push_back(pt);
    record(rep, (X - tg).truncated(2));
    out.checks.push_back(rep);
  }
  {
    IdentityReport rep = report("compensation (printed bracket)", in, order);
    rep.points.push_back(pt);
    record(rep, (compensation_rhs(in, order, b, true) - X).truncated(order));
    out.diagnostics.push_back(rep);
  }
  return out;
}

// ---------------------------------------------------------------------------

TauResult tau_d1(const SpectralInput& in, int order) {
  if (in.d() != 1) throw std::invalid_argument("tau is available at d = 1 only");
  TauResult out;
  out.literal_ode = report("tau ODE, ln tau = ln((b_1 - b_2)/4)", in, order);
  out.quarter_ode = report("tau ODE, ln tau = (1/4) ln(b_1 - b_2)", in, order);
  out.literal_ode.points.push_back("h");
  out.quarter_ode.points.push_back("h");
  int hprec = 2 * order;
  for (int W = order + 2;; W += 2) {
    if (W > max_order()) throw PrecisionError("tau: working order exceeds the cap");
    Deformation def = solve_deformation(in, W);
    HBackend be(def);
    const BranchData& br = be.br;
    Series gap = (br.b_plus - br.b_minus) / Scalar(4);
    Series dln = gap.deriv() / gap;
    Series rhs = Series::zero(Var::h);
    const Series* bs[2] = {&br.beta_plus, &br.beta_minus};
    const Series* vs[2] = {&br.b_plus, &br.b_minus};
    for (int i = 0; i < 2; ++i) {
      Series r2 = be.curve.R(2, *bs[i]), r3 = be.curve.R(3, *bs[i]), r4 = be.curve.R(4, *bs[i]);
      rhs = rhs + (r4 / (r2 * r2) - r3 * r3 / (r2 * r2 * r2)) * vs[i]->deriv() / Scalar(24);
    }
    Series lit = dln - rhs, quart = dln / Scalar(4) - rhs;
    if (lit.prec() < hprec - 1 || quart.prec() < hprec - 1) continue;
    auto to_report = [&](IdentityReport& rep, const Series& diff) {
      Series t = diff.truncated(hprec - 1);
      if (t.is_zero()) return;
      rep.ok = false;
      int v = t.valuation() + 1;  // d/dh lowers the h-order by one
      rep.first_failing_order = v >= 0 ? v / 2 : -((1 - v) / 2);
    };
    to_report(out.literal_ode, lit);
    to_report(out.quarter_ode, quart);
    out.quarter_gap_h = gap.truncated(hprec);
    out.gamma_h = br.gamma.truncated(hprec);
    out.gap_matches = (out.quarter_gap_h - out.gamma_h).truncated(hprec).is_zero();
    Series rho = def.rho[0];
    Scalar rho0 = rho.at(0);
    out.ln_tau_series = (log1(rho / rho0) / Scalar(2)).truncated(order);
    break;
  }
  out.tags = {"(1/2) ln lambda", "ln i", "(1/2) ln rhohat(0)"};
  return out;
}

Scalar bipartite_closed_coefficient(int n) {
  if (n < 0) return Scalar(0);
  mpq_class sum = 0;
  mpz_class f = factorial(2 * n + 2);
  for (int p = 0; p <= n; ++p) {
    mpz_class m3 = 1;
    for (int i = 0; i < p; ++i) m3 *= 3;
    mpq_class w = 1 - mpq_class((p % 2 == 1) ? -1 : 1, m3);
    w.canonicalize();
    mpq_class term(f, factorial(n - p) * factorial(n + 2 + p));
    term.canonicalize();
    sum += term * w;
  }
  mpz_class three = 1;
  for (int i = 0; i <= n; ++i) three *= 3;
  mpq_class pre(three, 12 * (n + 1));
  pre.canonicalize();
  return Scalar(mpq_class(pre * sum));
}

BipartiteTables bipartite_f1(const SpectralInput& in, int order) {
  if (in.d() != 1) throw std::invalid_argument("bipartite tables are available at d = 1 only");
  BipartiteTables out;
  TauResult tau = tau_d1(in, order);
  FreeEnergyResult fe = f1(in, order);
  out.direct = (fe.f1 - tau.ln_tau_series / Scalar(2)).truncated(order);
  Scalar inv2e = Scalar(1) / (Scalar(2) * in.e[0]);
  Scalar w = inv2e * inv2e;
  std::vector<Scalar> c(static_cast<std::size_t>(std::max(order, 0)));
  Scalar wp = w;
  for (int n = 0; n + 1 < order; ++n) {
    c[static_cast<std::size_t>(n + 1)] = bipartite_closed_coefficient(n) * wp;
    wp = wp * w;
  }
  out.closed = from_coeffs(c, order);
  out.difference = (out.direct - out.closed).truncated(order);
  return out;
}

}  // namespace qkm
