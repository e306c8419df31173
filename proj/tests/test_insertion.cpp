#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qkm/freenergy.hpp"
#include "qkm/insertion.hpp"

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

bool all_ok(const std::vector<IdentityReport>& v) {
  for (const auto& r : v)
    if (!r.ok) return false;
  return true;
}

}  // namespace

TEST_CASE("derivatives of the deformation against the closed form") {
  // eps = (4e + s)/6 with s = sqrt(4e^2 + 12 lambda); rhohat from 18 lambda rhohat = 2 e s - 4 e^2 + 12 lambda
  Scalar e(1, 2);
  int O = 8;
  Series s = sqrt(cst(Scalar(4) * e * e) + cst(12) * lam(O + 2));
  Series ds = cst(Scalar(4) * e) / s;
  Series deps = (cst(4) + ds) / cst(6);
  Series drho = ((cst(2) * s + cst(Scalar(2) * e) * ds - cst(Scalar(8) * e)).shifted(-1) / cst(18));
  DeformationDerivatives d = deformation_derivatives(SpectralInput::single(e, O), O, 0);
  CHECK(agree(d.deps[0], deps.truncated(O)));
  CHECK(agree(d.drho[0], drho.truncated(O)));
  CHECK(coeff_range(d.deps[0], 0, 4) == std::vector<Scalar>{1, -2, 18, -180});
}

TEST_CASE("identity suite at d = 1 and d = 2") {
  CHECK(all_ok(lemma_checks(unit(6), 6, 0, default_points())));
  for (std::size_t b = 0; b < 2; ++b) CHECK(all_ok(lemma_checks(d2(4), 4, b, default_points())));
}

TEST_CASE("a corrupted rhohat breaks lem:1 at lambda^1") {
  auto reps = lemma_checks(unit(5), 5, 0, default_points(), Scalar(1, 10));
  for (const auto& r : reps)
    if (r.name == "lem:1") {
      CHECK_FALSE(r.ok);
      CHECK(r.first_failing_order == 1);
    }
}

TEST_CASE("Omega02 is symmetric and refuses coincident points") {
  SpectralInput in = d2(4);
  CHECK(agree(omega02(in, 4, Scalar(2), Scalar(3)), omega02(in, 4, Scalar(3), Scalar(2))));
  CHECK_THROWS(omega02(in, 4, Scalar(2), Scalar(2)));
  CHECK_THROWS(omega02(in, 4, Scalar(2), Scalar(-2)));
}

TEST_CASE("regularized diagonals") {
  Series o2 = omega02_diagonal(unit(5), 5, 0);
  CHECK(coeff_range(o2, 0, 5) == std::vector<Scalar>{1, -7, 58, -522, 4941});
  CHECK(agree(o2, omega02_diagonal_limit(unit(5), 5, 0)));
  for (std::size_t a = 0; a < 2; ++a) CHECK(agree(omega02_diagonal(d2(4), 4, a), omega02_diagonal_limit(d2(4), 4, a)));
  CHECK(coeff_range(omega03_diagonal(unit(5), 5, 0), 0, 5) == std::vector<Scalar>{0, -12, 240, -3628, 49464});
}

TEST_CASE("Omega03 symmetry and the creation corollary") {
  for (const SpectralInput& in : {unit(4), d2(3)}) {
    int O = in.order;
    PointSpec a = PointSpec::value(Scalar(2)), b = PointSpec::value(Scalar(3)), c = PointSpec::value(Scalar(5, 2));
    Series abc = omega03(in, O, a, b, c);
    CHECK(agree(abc, omega03(in, O, b, a, c)));
    CHECK(agree(abc, omega03(in, O, c, b, a)));
    CHECK(agree(omega03(in, O, a, b, PointSpec::eps(0)), omega03_from_creation(in, O, Scalar(2), Scalar(3), 0)));
  }
}

TEST_CASE("Omega03 input validation") {
  CHECK_THROWS(omega03(unit(3), 3, PointSpec::value(Scalar(2)), PointSpec::value(Scalar(2)), PointSpec::value(Scalar(3))));
  CHECK_THROWS(omega03(d2(3), 3, PointSpec::eps(0), PointSpec::eps(1), PointSpec::value(Scalar(3))));
}

TEST_CASE("graded tables and the one-matrix creation form agree") {
  Series f = f1(unit(7), 7).f1;
  GradedTable t = creation_d1(graded_d1(f, 0, 2));
  CHECK(agree(evaluate_graded(t, Scalar(1, 2), 7), creation_1mm(f).truncated(7)));
  CHECK_THROWS(graded_d1(cst(1, Var::h), 0, 2));
}
