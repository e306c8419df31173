#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qkm/enumeration.hpp"
#include "qkm/freenergy.hpp"
#include "qkm/trengine.hpp"

using namespace qkm;

namespace {

SpectralInput unit() { return SpectralInput::single(Scalar(1, 2), 4); }

SpectralInput d2() {
  SpectralInput in;
  in.e = {Scalar(1, 2), Scalar(1, 3)};
  in.r = {1, 2};
  in.N = 3;
  in.order = 4;
  return in;
}

Scalar fact(int n) {
  Scalar f(1);
  for (int i = 2; i <= n; ++i) f = f * Scalar(i);
  return f;
}

// labeled matchings to rooted maps: 4v rootings over 4^v v! relabelings
Scalar rooted(long labeled, int v) { return Scalar(labeled) * Scalar(4 * v) / (fact(v) * Scalar(1L << (2 * v))); }

}  // namespace

TEST_CASE("matchings and Euler characteristic") {
  long want[] = {3, 105, 10395};
  for (int v = 1; v <= 3; ++v) {
    auto gs = ribbon_graphs(v);
    CHECK(static_cast<long>(gs.size()) == want[v - 1]);
    for (const auto& g : gs) {
      if (!g.connected) continue;
      CHECK(g.genus >= 0);
      CHECK(v - 2 * v + g.faces == 2 - 2 * g.genus);
    }
  }
  CHECK_THROWS(ribbon_graphs(0));
  CHECK_THROWS(ribbon_graphs(4));
}

TEST_CASE("labeled classes at v = 1, 2") {
  VacuumResult v1 = enumerate_vacuum(1, unit()), v2 = enumerate_vacuum(2, unit());
  CHECK(v1.by_genus[0].count == 2);
  CHECK(v1.by_genus[1].count == 1);
  CHECK(v2.disconnected == 9);
  CHECK(v2.by_genus[0].count == 36);
  CHECK(v2.by_genus[1].count == 60);
  CHECK(v2.by_genus[1].bipartite_count == 4);
}

TEST_CASE("genus-one weights against F1") {
  Series f = f1(unit(), 4).f1;
  CHECK(enumerate_vacuum(1, unit()).by_genus[1].weight == Scalar(-1, 4));
  CHECK(enumerate_vacuum(2, unit()).by_genus[1].weight == Scalar(15, 8));
  for (int v = 1; v <= 3; ++v) CHECK(enumerate_vacuum(v, unit()).by_genus[1].weight == f.at(v));
}

TEST_CASE("planar weights against the quartic one-matrix planar free energy") {
  // sum_k (-12 g)^k (2k-1)!/(k!(k+2)!)
  for (int v = 1; v <= 3; ++v) {
    Scalar m(1);
    for (int i = 0; i < v; ++i) m = m * Scalar(-12);
    Scalar want = m * fact(2 * v - 1) / (fact(v) * fact(v + 2));
    CHECK(enumerate_vacuum(v, unit()).by_genus[0].weight * Scalar(1L << (2 * v)) == want);
  }
}

TEST_CASE("rooted counts from labeled matchings") {
  for (int v = 1; v <= 3; ++v) {
    VacuumResult r = enumerate_vacuum(v, unit());
    CHECK(rooted(r.by_genus[1].count, v) == quadrangulation_counts(CountKind::rooted_torus, v));
    if (v >= 2) CHECK(rooted(r.by_genus[1].bipartite_count, v) == quadrangulation_counts(CountKind::bipartite_rooted, v - 1));
  }
}

TEST_CASE("weights are symmetric in the eigenvalue data") {
  SpectralInput a = d2(), b = d2();
  std::swap(b.e[0], b.e[1]);
  std::swap(b.r[0], b.r[1]);
  for (int v = 1; v <= 2; ++v) CHECK(enumerate_vacuum(v, a).by_genus[1].weight == enumerate_vacuum(v, b).by_genus[1].weight);
}

TEST_CASE("creation of the vacuum weights gives Omega11 at d = 2") {
  SpectralInput in = d2();
  for (std::size_t b = 0; b < 2; ++b) {
    Series om = omega11_closed(in, 4, PointSpec::eps(b));
    for (int v = 1; v <= 3; ++v) CHECK(creation_of_vacuum(v, in, b)[1] == om.at(v));
  }
}

TEST_CASE("v = 1 weight at d = 2 equals F1 at lambda^1") {
  CHECK(enumerate_vacuum(1, d2()).by_genus[1].weight == f1(d2(), 3).f1.at(1));
}

TEST_CASE("graph expansion identities") {
  AppendixAReport a = appendixA_identities(unit());
  CHECK(a.ok());
  CHECK(a.g4 == Scalar(-1, 8));
  CHECK(a.g1 + a.g2 + a.g3 + a.g4 == Scalar(-15, 8));
  for (const auto& c : a.checks)
    if (c.name == "c01 + c02 rearranged") CHECK_FALSE(c.ok);
  AppendixAReport b = appendixA_identities(d2());
  CHECK(b.ok());
}

TEST_CASE("closed-form counts") {
  CHECK(quadrangulation_counts(CountKind::rooted_torus, 2) == Scalar(15));
  CHECK(quadrangulation_counts(CountKind::rooted_torus, 5) == Scalar(31266));
  CHECK(quadrangulation_counts(CountKind::f1_series, 1) == Scalar(1, 4));
  CHECK(quadrangulation_counts(CountKind::bipartite_f1, 1) == Scalar(1, 2));
  CHECK(quadrangulation_counts(CountKind::bipartite_rooted, 4) == Scalar(4280));
  CHECK_THROWS(quadrangulation_counts(CountKind::rooted_torus, 0));
  CHECK_THROWS(parse_count_kind("spheres"));
  CHECK(count_kind_name(parse_count_kind("bipartite-f1")) == "bipartite-f1");
}
