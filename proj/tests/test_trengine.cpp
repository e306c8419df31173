#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qkm/enumeration.hpp"
#include "qkm/freenergy.hpp"
#include "qkm/insertion.hpp"
#include "qkm/trengine.hpp"

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

std::vector<Scalar> abs_coeffs(const Series& s, int a, int b) {
  std::vector<Scalar> out;
  for (int k = a; k < b; ++k) {
    Scalar c = s.at(k);
    out.push_back(sgn(c.re()) < 0 ? -c : c);
  }
  return out;
}

}  // namespace

TEST_CASE("closed Omega11 at eps for 2e = 1") {
  Series om = omega11_closed(unit(7), 7);
  CHECK(abs_coeffs(om, 1, 7) == std::vector<Scalar>{1, 15, 198, 2511, 31266, 385398});
  // rooted torus quadrangulations, from the closed formula
  for (int n = 1; n <= 6; ++n) CHECK(abs_coeffs(om, n, n + 1)[0] == quadrangulation_counts(CountKind::rooted_torus, n));
}

TEST_CASE("Omega11 from the free energy by homogeneity") {
  Series f = Series::zero(Var::lambda, 7);
  for (int n = 1; n < 7; ++n) f = f + Series::monomial(f1_closed_coefficient(n), n, Var::lambda);
  CHECK(agree(omega11_closed(unit(7), 7), creation_1mm(f).truncated(7)));
}

TEST_CASE("trace and h routes agree at d = 1") {
  for (Scalar e : {Scalar(1, 2), Scalar(3, 2)}) {
    SpectralInput in = SpectralInput::single(e, 5);
    for (auto part : {Om11Part::total, Om11Part::blob, Om11Part::pure}) {
      CHECK(agree(omega11_closed(in, 5, PointSpec::eps(0), part), omega11_closed(in, 5, PointSpec::eps(0), part, true)));
      CHECK(agree(omega11_closed(in, 5, PointSpec::value(Scalar(2)), part),
                  omega11_closed(in, 5, PointSpec::value(Scalar(2)), part, true)));
    }
  }
}

TEST_CASE("pure recursion: bipartite numbers") {
  Series w11 = tr_omega(unit(7), 1, 1, Convention::pure, 7).value;
  CHECK(abs_coeffs(w11, 1, 7) == std::vector<Scalar>{0, 1, 20, 307, 4280, 56914});
  for (int n = 1; n <= 5; ++n) CHECK(abs_coeffs(w11, n + 1, n + 2)[0] == quadrangulation_counts(CountKind::bipartite_rooted, n));
  Series w21 = tr_omega(unit(8), 2, 1, Convention::pure, 8).value;
  CHECK(abs_coeffs(w21, 0, 8) == std::vector<Scalar>{0, 0, 0, 0, 21, 966, 27954, 650076});
}

TEST_CASE("pure recursion agrees with the polar part of the closed form") {
  for (Scalar e : {Scalar(1, 2), Scalar(1, 3)}) {
    SpectralInput in = SpectralInput::single(e, 6);
    CHECK(agree(tr_omega(in, 1, 1, Convention::pure, 6).value, omega11_closed(in, 6, PointSpec::eps(0), Om11Part::pure)));
  }
}

TEST_CASE("blob split reconstructs Omega11 in h") {
  Deformation def = solve_deformation(unit(9), 9);
  OmegaResult tr = tr_omega(unit(8), 1, 1, Convention::blobbed_polar, 8);
  Series full = omega11_closed_h(def, PointSpec::eps(0), Om11Part::total);
  CHECK((tr.value_h + omega11_pole0_h(def, PointSpec::eps(0)) - full).truncated(14).is_zero());
}

TEST_CASE("Omega12 is symmetric in its arguments through the recursion") {
  OmegaResult r = tr_omega(unit(6), 1, 2, Convention::pure, 6);
  CHECK(r.value.valuation() >= 2);
  CHECK(is_real(r.value_h));
}

TEST_CASE("symplectic identity") {
  CHECK(symplectic_check(unit(7), 7, default_points()).ok);
  CHECK(symplectic_check(d2(5), 5, default_points()).ok);
}

TEST_CASE("Bergman projective connection") {
  CHECK(bergman_projective_connection(Scalar(2)) == Scalar(3, 8));
  CHECK(bergman_projective_connection(Scalar(3)) == Scalar(1, 6));
}

TEST_CASE("recursion rejects unsupported input") {
  CHECK_THROWS(tr_omega(d2(3), 1, 1, Convention::pure, 3));
  CHECK_THROWS(tr_omega(unit(3), 3, 1, Convention::pure, 3));
}
