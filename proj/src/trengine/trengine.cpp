#include "qkm/trengine.hpp"

#include <algorithm>
#include <stdexcept>

namespace qkm {

namespace {

Series h_point(const HBackend& be, const PointSpec& at) { return at.at_eps ? be.plain_eps(at.b) : be.plain_const(at.z); }

}  // namespace

Series omega11_closed_h(const Deformation& def, PointSpec at, Om11Part which) {
  HBackend be(def);
  return omega11_from_parts(omega11_parts(be, h_point(be, at)), which);
}

Series omega11_pole0_h(const Deformation& def, PointSpec at) {
  HBackend be(def);
  auto p = omega11_parts(be, h_point(be, at));
  return p.pole0 / p.rprime;
}

Series omega11_closed(const SpectralInput& in, int order, PointSpec at, Om11Part which, bool force_trace) {
  if (in.d() == 1 && !force_trace) {
    return adaptive(order, [&](int W) { return HBackend::lam_of(omega11_closed_h(solve_deformation(in, W), at, which)); });
  }
  return adaptive(order, [&](int W) {
    Deformation def = solve_deformation(in, W);
    TraceBackend<Series> tb(def);
    Series z = at.at_eps ? tb.plain_eps(at.b) : tb.plain_const(at.z);
    return omega11_from_parts(omega11_parts(tb, z), which);
  });
}

Series omega11_blob(const SpectralInput& in, int order, PointSpec at) {
  return omega11_closed(in, order, at, Om11Part::blob);
}

// ---------------------------------------------------------------------------

ZhukovskyTR::ZhukovskyTR(const SpectralInput& in, int order, int u_prec)
    : def_(solve_deformation(in, order)), br_(branch_data(def_)), M_(u_prec) {
  s0_ = cst(2, Var::h) * br_.eps_h / br_.gamma;
  lp_ = make_local(1);
  lm_ = make_local(-1);
}

ZhukovskyTR::Local ZhukovskyTR::make_local(int a) const {
  Local L;
  L.a = a;
  L.one = US::constant(cst(1, Var::h), Var::u, M_);
  L.u = US::variable(Var::u, M_);
  L.q = L.one * cst(a, Var::h) + L.u;
  L.qinv = L.q.inv();
  L.sm = L.qinv - L.one * cst(a, Var::h);
  US s0 = L.one * s0_;
  // y(q) - y(1/q) with y(z) = -R(-z), in t
  L.dy = (L.q - L.qinv) * br_.gamma - ((s0 - L.q).inv() - (s0 - L.qinv).inv()) * br_.gamma;
  L.xp = (L.one - L.qinv * L.qinv) * br_.gamma;
  L.dsig = -(L.qinv * L.qinv);
  L.kern = (L.dy * L.xp).inv() * cst(Scalar(1, 2), Var::h);
  return L;
}

ZhukovskyTR::US ZhukovskyTR::expand_slot(const Local& L, int b, int k, bool sigma) const {
  US base = (sigma ? L.qinv : L.q) - L.one * cst(b, Var::h);
  US r = base.inv().pow(k);
  if (sigma) r = r * L.dsig;
  return r;
}

ZhukovskyTR::Partial ZhukovskyTR::b_partial(const Local& L, int var, bool sigma) const {
  // B(Q, t) = sum_m (m+1) (Q-a)^m / (t-a)^{m+2} dQ dt
  int a = L.a;
  Partial out;
  const US& x = sigma ? L.sm : L.u;
  US xm = L.one;
  for (int m = 0; m < M_ + 2; ++m) {
    US c = xm * cst(m + 1, Var::h);
    if (sigma) c = c * L.dsig;
    out[{{var, a, m + 2}}] = c;
    xm = xm * x;
  }
  return out;
}

ZhukovskyTR::Partial ZhukovskyTR::subst_form(const Local& L, int /*a*/, const Form& form,
                                              const std::vector<bool>& slots,
                                              const std::vector<int>& varmap) const {
  Partial out;
  std::map<std::tuple<int, int, bool>, US> cache;
  std::size_t ns = slots.size();
  for (const auto& [key, C] : form) {
    US val = L.one * C;
    for (std::size_t i = 0; i < ns; ++i) {
      auto ck = std::make_tuple(key[i].first, key[i].second, static_cast<bool>(slots[i]));
      auto it = cache.find(ck);
      if (it == cache.end()) it = cache.emplace(ck, expand_slot(L, key[i].first, key[i].second, slots[i])).first;
      val = val * it->second;
    }
    PKey rest;
    for (std::size_t j = 0; j + ns < key.size(); ++j) rest.emplace_back(varmap[j], key[ns + j].first, key[ns + j].second);
    auto it = out.find(rest);
    if (it == out.end()) out.emplace(rest, val);
    else it->second = it->second + val;
  }
  return out;
}

ZhukovskyTR::Partial ZhukovskyTR::mul_partial(const Partial& A, const Partial& B) {
  Partial out;
  for (const auto& [ka, va] : A) {
    for (const auto& [kb, vb] : B) {
      PKey k = ka;
      k.insert(k.end(), kb.begin(), kb.end());
      std::sort(k.begin(), k.end());
      US v = va * vb;
      auto it = out.find(k);
      if (it == out.end()) out.emplace(k, v);
      else it->second = it->second + v;
    }
  }
  return out;
}

void ZhukovskyTR::add_into(Partial& A, const Partial& B) {
  for (const auto& [k, v] : B) {
    auto it = A.find(k);
    if (it == A.end()) A.emplace(k, v);
    else it->second = it->second + v;
  }
}

Form ZhukovskyTR::residue_step(const std::map<int, Partial>& w_by_a) const {
  Form res;
  for (const auto& [a, W] : w_by_a) {
    const Local& L = local(a);
    std::vector<US> upow{L.one}, spow{L.one};
    for (const auto& [key, w] : W) {
      US f = L.kern * w;
      if (f.is_zero()) continue;
      int P = -f.lo();
      for (int m = 0; m <= P; ++m) {
        while (static_cast<int>(upow.size()) <= m) {
          upow.push_back(upow.back() * L.u);
          spow.push_back(spow.back() * L.sm);
        }
        US g = (upow[m] - spow[m]) * f;
        if (g.prec() <= -1) throw PrecisionError("local expansion precision too small for the residue");
        Series r = g.at(-1);
        if (r.is_zero()) continue;
        FormKey k{{a, m + 1}};
        for (const auto& [v, aa, kk] : key) k.emplace_back(aa, kk);
        auto it = res.find(k);
        if (it == res.end()) res.emplace(k, r);
        else it->second = it->second + r;
      }
    }
  }
  return res;
}

Form ZhukovskyTR::omega11(Convention conv) const {
  std::map<int, Partial> W;
  for (int a : {1, -1}) {
    const Local& L = local(a);
    US d = (L.q - L.qinv).inv();
    US w = d * d * L.dsig;  // B(q, 1/q)
    if (conv == Convention::blobbed_polar) {
      // blob B(q, -sigma q) in t: dq dsigma / (q + sigma - s0)^2
      US den = (L.q + L.qinv - L.one * s0_).inv();
      w = w + den * den * L.dsig;
    }
    W[a] = Partial{{PKey{}, w}};
  }
  return residue_step(W);
}

Form ZhukovskyTR::omega03() const {
  std::map<int, Partial> W;
  for (int a : {1, -1}) {
    const Local& L = local(a);
    Partial t = mul_partial(b_partial(L, 0, false), b_partial(L, 1, true));
    add_into(t, mul_partial(b_partial(L, 1, false), b_partial(L, 0, true)));
    W[a] = t;
  }
  return residue_step(W);
}

Form ZhukovskyTR::omega12(const Form& w11, const Form& w03) const {
  std::map<int, Partial> W;
  for (int a : {1, -1}) {
    const Local& L = local(a);
    Partial t = subst_form(L, a, w03, {false, true}, {0});
    Partial w11q = subst_form(L, a, w11, {false}, {});
    Partial w11s = subst_form(L, a, w11, {true}, {});
    add_into(t, mul_partial(b_partial(L, 0, false), w11s));
    add_into(t, mul_partial(w11q, b_partial(L, 0, true)));
    W[a] = t;
  }
  return residue_step(W);
}

Form ZhukovskyTR::omega21(const Form& w11, const Form& w12) const {
  std::map<int, Partial> W;
  for (int a : {1, -1}) {
    const Local& L = local(a);
    Partial t = subst_form(L, a, w12, {false, true}, {});
    add_into(t, mul_partial(subst_form(L, a, w11, {false}, {}), subst_form(L, a, w11, {true}, {})));
    W[a] = t;
  }
  return residue_step(W);
}

Series ZhukovskyTR::eval(const Form& f, const std::vector<Series>& t) const {
  Series acc = Series::zero(Var::h);
  for (const auto& [key, C] : f) {
    if (key.size() != t.size()) throw std::invalid_argument("form evaluated at the wrong number of points");
    Series term = C;
    for (std::size_t j = 0; j < key.size(); ++j) term = term * (t[j] - cst(key[j].first, Var::h)).pow(-key[j].second);
    acc = acc + term;
  }
  return acc;
}

Series ZhukovskyTR::rprime(const Series& z) const {
  return cst(1, Var::h) + br_.lam_h * br_.rho_h / (z + br_.eps_h).pow(2);
}

Series ZhukovskyTR::omega_at(const Form& f, int g, const std::vector<Series>& z) const {
  std::vector<Series> t;
  Series den = cst(1, Var::h);
  for (const auto& zj : z) {
    t.push_back(t_of(zj));
    den = den * br_.gamma * rprime(zj);
  }
  int n = static_cast<int>(z.size());
  return eval(f, t) * br_.lam_h.pow(2 * g - 2 + n) / den;
}

OmegaResult tr_omega(const SpectralInput& in, int g, int n, Convention conv, int order) {
  if (in.d() != 1) throw std::invalid_argument("the recursion is implemented for d = 1 only");
  bool supported = (g == 0 && n == 3) || (g == 1 && n == 1) || (g == 1 && n == 2) || (g == 2 && n == 1);
  if (!supported) throw std::invalid_argument("unsupported (g, n); available: (0,3), (1,1), (1,2), (2,1)");
  if (conv == Convention::blobbed_polar && !(g == 1 && n == 1))
    throw std::invalid_argument("the blobbed polar part is implemented for (1,1) only");
  int M = 4 + 2 * (2 * g - 2 + n);
  int W = order + 1;
  for (int attempt = 0; attempt < 12; ++attempt) {
    try {
      ZhukovskyTR tr(in, W, M);
      Form f;
      if (g == 1 && n == 1) {
        f = tr.omega11(conv);
      } else {
        Form w03 = tr.omega03();
        if (g == 0) {
          f = w03;
        } else {
          Form w11 = tr.omega11(Convention::pure);
          Form w12 = tr.omega12(w11, w03);
          f = g == 1 ? w12 : tr.omega21(w11, w12);
        }
      }
      Series e = tr.branch().eps_h;
      Series vh = tr.omega_at(f, g, std::vector<Series>(static_cast<std::size_t>(n), e));
      Series v = HBackend::lam_of(vh);
      if (v.prec() < order) {
        W += std::max(2, order / 2);
        continue;
      }
      OmegaResult r;
      r.g = g;
      r.n = n;
      r.convention = conv == Convention::pure ? "pure" : "blobbed-polar";
      r.value = v.truncated(order);
      r.value_h = vh;
      return r;
    } catch (const PrecisionError&) {
      M += 2;
    }
  }
  throw PrecisionError("recursion did not reach the requested order");
}

// ---------------------------------------------------------------------------

namespace {

// R'(z)Om11(z) - R'(-z)Om11(-z) with Om11 from the closed form; returned as a plain value
template <class BE, class P>
P symplectic_lhs(const BE& be, const P& z, bool blob_only) {
  auto part = [&](const P& x) {
    auto p = omega11_parts(be, x);
    return blob_only ? P(p.pole0 + p.third) : P(p.pole0 + p.third + p.tr);
  };
  return part(z) - part(-z);
}

template <class T>
Curve<Dual<T>> dual_curve(const Curve<T>& c) {
  Curve<Dual<T>> d;
  d.one = Dual<T>(c.one);
  d.lam = Dual<T>(c.lam);
  for (const auto& e : c.eps) d.eps.emplace_back(e);
  for (const auto& r : c.rho) d.rho.emplace_back(r);
  return d;
}

template <class T>
T symplectic_rhs(const Curve<T>& c, const T& z0, bool blob_only) {
  Curve<Dual<T>> d = dual_curve(c);
  Dual<T> z(z0, c.one);
  Dual<T> mz = -z;
  auto r1 = d.R(1, z), r1m = d.R(1, mz), r2 = d.R(2, z), r2m = d.R(2, mz), r3 = d.R(3, z), r3m = d.R(3, mz);
  Dual<T> bracket;
  Dual<T> pre;
  if (blob_only) {
    // lambda S_B / (12 R'(z) R'(-z)), S_B = 3/(2 z^2)
    bracket = Dual<T>(embed(c.one, Scalar(3, 2))) / (z * z);
    pre = d.lam / (Dual<T>(embed(c.one, Scalar(12))) * r1 * r1m);
  } else {
    bracket = Dual<T>(embed(c.one, Scalar(3))) / (z * z) - r3 / r1 - r3m / r1m + r2 * r2 / (r1 * r1) +
              r2m * r2m / (r1m * r1m) - r2 * r2m / (r1 * r1m);
    pre = d.lam / (Dual<T>(embed(c.one, Scalar(24))) * r1 * r1m);
  }
  return (pre * bracket).d;
}

}  // namespace

IdentityReport symplectic_check(const SpectralInput& in, int order, const std::vector<Scalar>& points) {
  IdentityReport rep;
  rep.name = "appendix-B symplectic identity";
  rep.d = in.d();
  rep.max_order_checked = order;
  rep.ok = true;
  for (const auto& z : points) rep.points.push_back(z.str());
  for (bool blob_only : {false, true}) {
    for (const auto& z : points) {
      Series diff = adaptive(order, [&](int W) {
        Deformation def = solve_deformation(in, W);
        if (in.d() == 1) {
          HBackend be(def);
          Series zh = cst(z, Var::h);
          return HBackend::lam_of(symplectic_lhs(be, zh, blob_only) - symplectic_rhs(be.curve, zh, blob_only));
        }
        TraceBackend<Series> tb(def);
        Series zs = cst(z);
        return Series(symplectic_lhs(tb, zs, blob_only) - symplectic_rhs(tb.curve, zs, blob_only));
      });
      if (!diff.is_zero()) {
        rep.ok = false;
        int k = diff.valuation();
        if (rep.first_failing_order < 0 || k < rep.first_failing_order) rep.first_failing_order = k;
      }
    }
  }
  return rep;
}

Scalar bergman_projective_connection(const Scalar& z) {
  // phi_{0,2}(u, z) = 1/(u+z)^2 expanded at u = z + s; S_B/6 is the s^0 coefficient
  Series s = Series::variable(Var::t, 4);
  Series phi = (cst(Scalar(2) * z, Var::t) + s).pow(-2);
  return Scalar(6) * phi.at(0);
}

}  // namespace qkm
