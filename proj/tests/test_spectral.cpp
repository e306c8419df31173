#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qkm/spectral.hpp"

using namespace qkm;

namespace {

// eps(e, lambda) = (4e + sqrt(4e^2 + 12 lambda))/6, rho from rho R'(eps) = 1
std::pair<Series, Series> closed_d1(const Scalar& e, int O) {
  Series root = sqrt(cst(Scalar(4) * e * e) + cst(12) * lam(O + 1));
  Series eps = (cst(Scalar(4) * e) + root) / cst(6);
  Series num = cst(Scalar(2) * e) * root - cst(Scalar(4) * e * e) + cst(12) * lam(O + 1);
  Series rho = num.shifted(-1) / cst(18);
  return {eps.truncated(O), rho.truncated(O)};
}

SpectralInput d2(int O) {
  SpectralInput in;
  in.e = {Scalar(1, 2), Scalar(1, 3)};
  in.r = {1, 2};
  in.N = 3;
  in.order = O;
  return in;
}

}  // namespace

TEST_CASE("d=1 deformation against the closed form") {
  Deformation def = solve_deformation(SpectralInput::single(Scalar(1, 2), 4), 4);
  CHECK(coeff_range(def.eps[0], 0, 4) == std::vector<Scalar>{Scalar(1, 2), 1, -3, 18});
  CHECK(coeff_range(def.rho[0], 0, 4) == std::vector<Scalar>{1, -1, 6, -45});
  for (Scalar e : {Scalar(1, 2), Scalar(1, 3), Scalar(3, 2)}) {
    Deformation d = solve_deformation(SpectralInput::single(e, 12), 12);
    auto [eps, rho] = closed_d1(e, 12);
    CHECK(agree(d.eps[0], eps));
    CHECK(agree(d.rho[0], rho));
  }
}

TEST_CASE("undeformed limit") {
  Deformation def = solve_deformation(d2(1), 1);
  CHECK(def.eps[0].at(0) == Scalar(1, 2));
  CHECK(def.rho[1].at(0) == Scalar(2, 3));
  CHECK(def.eps[0].prec() == 1);
}

TEST_CASE("residuals of the defining equations at d=2") {
  Deformation def = solve_deformation(d2(6), 6);
  Curve<Series> c = curve_of(def);
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(agree(c.R(0, def.eps[k]), cst(def.in.e[k])));
    CHECK(agree(def.rho[k] * c.R(1, def.eps[k]), cst(Scalar(def.in.r[k], 3))));
    CHECK(def.eps[k].prec() >= 6);
  }
}

TEST_CASE("R'(0) at d=1") {
  Deformation def = solve_deformation(SpectralInput::single(Scalar(1, 2), 4), 4);
  Curve<Series> c = curve_of(def);
  Series r1 = c.R(1, cst(0));
  CHECK(agree(r1, cst(1) + lam(4) * def.rho[0] / def.eps[0].pow(2)));
  CHECK(coeff_range(r1, 0, 3) == std::vector<Scalar>{1, 4, -20});
}

TEST_CASE("ramification polynomial and branch data") {
  Deformation def = solve_deformation(SpectralInput::single(Scalar(1, 2), 6), 6);
  RamificationData rd = ramification(def);
  REQUIRE(rd.P.size() == 3);
  CHECK(rd.P[0].at(0) == Scalar(1, 4));
  CHECK(rd.P[1].at(0) == Scalar(1));
  const BranchData& br = rd.branch;
  Curve<Series> ch;
  ch.one = cst(1, Var::h);
  ch.lam = br.lam_h;
  ch.eps = {br.eps_h};
  ch.rho = {br.rho_h};
  Series rp = ch.R(1, br.beta_plus);
  CHECK(rp.is_zero());
  CHECK(rp.prec() >= 2 * 6 - 2);
  // gamma = i h (1 - lambda/2 + ...)
  CHECK(br.gamma.at(1) == Scalar::i());
  CHECK(br.gamma.at(3) == Scalar(mpq_class(0), mpq_class(-1, 2)));
  CHECK(agree(br.b_plus, ch.R(0, br.beta_plus)));
}

TEST_CASE("P reconstructs the numerator of R' at d=2") {
  Deformation def = solve_deformation(d2(5), 5);
  Poly<Series> P = ramification_poly(def);
  CHECK(P.size() == 5);
  Curve<Series> c = curve_of(def);
  for (Scalar z : {Scalar(2), Scalar(3), Scalar(5, 2)}) {
    Series zs = cst(z);
    Series den = (zs + def.eps[0]).pow(2) * (zs + def.eps[1]).pow(2);
    CHECK(agree(poly_eval(P, zs), c.R(1, zs) * den));
  }
}

TEST_CASE("zhukovsky coordinate") {
  Deformation def = solve_deformation(SpectralInput::single(Scalar(1, 2), 5), 5);
  Zhukovsky zk = zhukovsky(def);
  Series t = cst(3, Var::h) + Series::variable(Var::h, 10);
  CHECK(agree(zk.x_of_t(t), zk.x_of_t(Zhukovsky::sigma(t))));
  CHECK(agree(zk.t_of(zk.br.beta_plus), cst(1, Var::h)));
  Series z = cst(Scalar(7, 3), Var::h);
  CHECK(agree(zk.z_of(zk.t_of(z)), z));
  // x(t(z)) = R(z)
  Curve<Series> ch;
  ch.one = cst(1, Var::h);
  ch.lam = zk.br.lam_h;
  ch.eps = {zk.br.eps_h};
  ch.rho = {zk.br.rho_h};
  CHECK(agree(zk.x_of_t(zk.t_of(z)), ch.R(0, z)));
}

TEST_CASE("partial fractions of R''/R' (pfe) at d=1 and general d") {
  Deformation def = solve_deformation(SpectralInput::single(Scalar(1, 2), 6), 6);
  HBackend hb(def);
  for (Scalar z : {Scalar(2), Scalar(3), Scalar(5, 2)}) {
    Series zh = hb.point(z);
    Series lhs = hb.curve.R(2, zh) / hb.curve.R(1, zh);
    Series rhs = (zh - hb.betas[0]).inv() + (zh - hb.betas[1]).inv() - cst(2, Var::h) * (zh + hb.br.eps_h).inv();
    CHECK(agree(lhs, rhs));
  }
  Deformation d = solve_deformation(d2(6), 6);
  Poly<Series> P = ramification_poly(d);
  Curve<Series> c = curve_of(d);
  for (Scalar z : {Scalar(2), Scalar(3), Scalar(5, 2)}) {
    Series zs = cst(z);
    Series lhs = c.R(2, zs) / c.R(1, zs);
    Series rhs = poly_eval(poly_deriv(P), zs) / poly_eval(P, zs) - cst(2) * ((zs + d.eps[0]).inv() + (zs + d.eps[1]).inv());
    CHECK(agree(lhs, rhs));
  }
}

TEST_CASE("trace backend matches h backend at d=1") {
  Deformation def = solve_deformation(SpectralInput::single(Scalar(1, 2), 8), 8);
  HBackend hb(def);
  Series viah = hb.sum([](const auto& c, const auto& b, const auto&) { return c.R(1, -b) * (b + c.c(2)).inv(); });
  TraceBackend<Series> tb(def);
  Series viatr = tb.sum([](const auto& c, const auto& b, const auto&) { return c.R(1, -b) * (b + c.c(2)).inv(); });
  CHECK(agree(viah, viatr));
  CHECK(viatr.prec() >= 6);
}

TEST_CASE("input validation") {
  SpectralInput in = SpectralInput::single(Scalar(1, 2), 3);
  in.e = {Scalar(-1)};
  CHECK_THROWS_AS(in.validate(), std::invalid_argument);
  in = d2(3);
  in.e[1] = in.e[0];
  CHECK_THROWS_AS(in.validate(), std::invalid_argument);
  nlohmann::json j = nlohmann::json::parse(R"({"d":2,"N":3,"eigenvalues":[{"e":"1/2","r":1},{"e":"1/3","r":2}],"order":4})");
  SpectralInput p = SpectralInput::from_json(j);
  CHECK(p.N == 3);
  CHECK(p.e[1] == Scalar(1, 3));
  CHECK(SpectralInput::from_json(p.to_json()).to_json() == p.to_json());
}
