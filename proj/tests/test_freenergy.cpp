#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qkm/freenergy.hpp"

using namespace qkm;

namespace {

SpectralInput unit(int O) { return SpectralInput::single(Scalar(1, 2), O); }

SpectralInput d2(int O) {
  SpectralInput in;
  in.e = {Scalar(1, 2), Scalar(1, 3)};
  in.r = {1, 2};
  in.N = 3;
  in.order = O;
  return in;
}

}  // namespace

TEST_CASE("F1 at 2e = 1") {
  FreeEnergyResult r = f1(unit(11), 11);
  CHECK(coeff_range(r.f1, 0, 7) == std::vector<Scalar>{0, Scalar(-1, 4), Scalar(15, 8), Scalar(-33, 2), Scalar(2511, 16),
                                                      Scalar(-15633, 10), Scalar(64233, 4)});
  for (int n = 1; n <= 10; ++n) CHECK(r.f1.at(n) == f1_closed_coefficient(n));
  CHECK_FALSE(r.r_neq_truncated);
  CHECK(r.r_neq.is_zero());
}

TEST_CASE("F1 against the one-matrix model closed form") {
  // (1/12) ln((1 + s)/(2 s)), s = sqrt(1 + 12 lambda)
  int O = 10;
  Series s = sqrt(cst(1) + cst(12) * lam(O));
  Series closed = log1((cst(1) + s) / (cst(2) * s)) / Scalar(12);
  CHECK(agree(f1(unit(O), O).f1, closed));
}

TEST_CASE("F1 scales homogeneously in e at d = 1") {
  Series a = f1(unit(6), 6).f1, b = f1(SpectralInput::single(Scalar(1, 3), 6), 6).f1;
  Scalar w = Scalar(9, 4), wp = w;
  for (int n = 1; n < 6; ++n, wp = wp * w) CHECK(b.at(n) == a.at(n) * wp);
}

TEST_CASE("two routes to ln prod R'(-beta)") {
  for (Scalar e : {Scalar(1, 2), Scalar(1, 3), Scalar(3, 2)}) {
    SpectralInput in = SpectralInput::single(e, 7);
    CHECK(agree(ln_prod_h(in, 7), f1(in, 7).ln_prod));
  }
  CHECK_THROWS(ln_prod_h(d2(3), 3));
}

TEST_CASE("compensation graph term") {
  CHECK(r_graph(unit(4), 4).is_zero());
  // (lambda/3) * 2 * (1 + 2)/(5/6)^2
  CHECK(coeff_range(r_graph(d2(4), 4), 0, 3) == std::vector<Scalar>{0, Scalar(72, 25), 0});
  CHECK(f1(d2(3), 3).r_neq_truncated);
}

TEST_CASE("creation of F1 at d = 1") {
  CreationCheck c = f1_creation_check(unit(6), 6, 0);
  for (const auto& r : c.checks) CHECK_MESSAGE(r.ok, r.name);
  REQUIRE(c.diagnostics.size() == 1);
  CHECK_FALSE(c.diagnostics[0].ok);
}

TEST_CASE("creation of F1 at d = 2") {
  for (std::size_t b = 0; b < 2; ++b) {
    CreationCheck c = f1_creation_check(d2(4), 4, b);
    for (const auto& r : c.checks) CHECK_MESSAGE(r.ok, r.name);
  }
}

TEST_CASE("log derivatives: step A alone") {
  LogDerivatives L = creation_of_logs(d2(4), 4, 1);
  Series blob = omega11_blob(d2(4), 4, PointSpec::eps(1));
  CHECK(agree(-L.Tb_ln_r0 / Scalar(24), blob * Scalar(2, 3)));
}

TEST_CASE("tau at d = 1") {
  TauResult t = tau_d1(unit(6), 6);
  CHECK(t.gap_matches);
  CHECK(t.quarter_ode.ok);
  CHECK_FALSE(t.literal_ode.ok);
  CHECK(t.tags.size() == 3);
  // (1/2) ln(rhohat/rhohat(0)) with rhohat = 1 - lambda + ...
  CHECK(t.ln_tau_series.at(1) == Scalar(-1, 2));
  CHECK_THROWS(tau_d1(d2(3), 3));
}

TEST_CASE("bipartite combination") {
  BipartiteTables bt = bipartite_f1(unit(7), 7);
  std::vector<Scalar> printed = {Scalar(1, 2), Scalar(20, 3), Scalar(307, 4), Scalar(856), Scalar(28457, 3)};
  for (int n = 1; n <= 5; ++n) {
    Scalar d = bt.direct.at(n + 1);
    CHECK((d == printed[n - 1] || d == -printed[n - 1]));
    CHECK(bt.closed.at(n + 1) == printed[n - 1]);
    CHECK(bipartite_closed_coefficient(n) == printed[n - 1]);
  }
  CHECK(bt.direct.at(1).is_zero());
}
