#pragma once

#include <map>
#include <string>
#include <vector>

#include "qkm/spectral.hpp"

namespace qkm {

// Vacuum ribbon graph on v four-valent vertices. Vertex j owns half-edges 4j..4j+3 in cyclic order.
struct RibbonGraph {
  int v = 0;
  std::vector<int> match;    // half-edge -> partner
  std::vector<int> face_of;  // half-edge -> face, faces are the orbits of (next at vertex) o match
  int faces = 0;
  bool connected = false;
  int genus = -1;  // set for connected graphs
  bool bipartite = false;  // faces admit a proper 2-coloring across every edge
};

int max_vertices();  // 3
std::vector<RibbonGraph> ribbon_graphs(int v);

// sum over face labels of prod_faces (r_l/N) prod_edges 1/(e_p + e_q)
Scalar label_sum(const RibbonGraph& g, const SpectralInput& in);

struct GenusClass {
  long count = 0;  // labeled matchings
  Scalar weight;   // coefficient of lambda^v, including (-1)^v/(v! 4^v)
  long bipartite_count = 0;
  Scalar bipartite_weight;
};
struct VacuumResult {
  int v = 0;
  long matchings = 0;
  long disconnected = 0;
  std::map<int, GenusClass> by_genus;
};
VacuumResult enumerate_vacuum(int v, const SpectralInput& in);
// T_b = -(N/r_b) d/de_b of the per-genus weights
std::map<int, Scalar> creation_of_vacuum(int v, const SpectralInput& in, std::size_t b);

enum class CountKind { rooted_torus, f1_series, bipartite_rooted, bipartite_f1 };
CountKind parse_count_kind(const std::string& s);  // throws std::invalid_argument
std::string count_kind_name(CountKind k);
Scalar quadrangulation_counts(CountKind kind, int n);

// ---------------------------------------------------------------------------
// lambda^2 graph expansion of F^(1); coefficients of lambda^2 (lambda^1 for gamma_v1)

struct NamedCheck {
  std::string name;
  bool asserted = true;  // false: evaluated and reported only
  bool ok = false;
  Scalar lhs, rhs;
};
struct AppendixAReport {
  std::size_t d = 0;
  Scalar c01, c02, c03, cb1, cb2, cb3;
  Scalar g1, g2, g3, g4;
  Scalar gamma_v1;
  std::vector<NamedCheck> checks;
  bool ok() const;
};
AppendixAReport appendixA_identities(const SpectralInput& in);

}  // namespace qkm
