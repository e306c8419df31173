#include "qkm/enumeration.hpp"

#include <functional>
#include <numeric>
#include <stdexcept>

#include "qkm/freenergy.hpp"

namespace qkm {

namespace {

int next_at_vertex(int h) { return 4 * (h / 4) + (h % 4 + 1) % 4; }

void all_matchings(std::vector<int>& m, std::vector<std::vector<int>>& out) {
  int first = -1;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i] < 0) {
      first = static_cast<int>(i);
      break;
    }
  if (first < 0) {
    out.push_back(m);
    return;
  }
  for (std::size_t j = static_cast<std::size_t>(first) + 1; j < m.size(); ++j) {
    if (m[j] >= 0) continue;
    m[static_cast<std::size_t>(first)] = static_cast<int>(j);
    m[j] = first;
    all_matchings(m, out);
    m[static_cast<std::size_t>(first)] = -1;
    m[j] = -1;
  }
}

int find(std::vector<int>& p, int x) {
  while (p[static_cast<std::size_t>(x)] != x) x = p[static_cast<std::size_t>(x)] = p[static_cast<std::size_t>(p[static_cast<std::size_t>(x)])];
  return x;
}

RibbonGraph analyze(int v, std::vector<int> match) {
  RibbonGraph g;
  g.v = v;
  g.match = std::move(match);
  std::size_t H = g.match.size();
  g.face_of.assign(H, -1);
  for (std::size_t h = 0; h < H; ++h) {
    if (g.face_of[h] >= 0) continue;
    int x = static_cast<int>(h);
    while (g.face_of[static_cast<std::size_t>(x)] < 0) {
      g.face_of[static_cast<std::size_t>(x)] = g.faces;
      x = next_at_vertex(g.match[static_cast<std::size_t>(x)]);
    }
    ++g.faces;
  }
  std::vector<int> parent(static_cast<std::size_t>(v));
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t h = 0; h < H; ++h) {
    int a = find(parent, static_cast<int>(h) / 4), b = find(parent, g.match[h] / 4);
    if (a != b) parent[static_cast<std::size_t>(a)] = b;
  }
  int roots = 0;
  for (int j = 0; j < v; ++j)
    if (find(parent, j) == j) ++roots;
  g.connected = roots == 1;
  if (g.connected) g.genus = (2 - v + 2 * v - g.faces) / 2;

  std::vector<int> color(static_cast<std::size_t>(g.faces), -1);
  bool ok = true;
  for (int start = 0; start < g.faces && ok; ++start) {
    if (color[static_cast<std::size_t>(start)] >= 0) continue;
    color[static_cast<std::size_t>(start)] = 0;
    bool changed = true;
    while (changed && ok) {
      changed = false;
      for (std::size_t h = 0; h < H; ++h) {
        int f1 = g.face_of[h], f2 = g.face_of[static_cast<std::size_t>(g.match[h])];
        int c1 = color[static_cast<std::size_t>(f1)], c2 = color[static_cast<std::size_t>(f2)];
        if (c1 >= 0 && c2 >= 0) {
          if (c1 == c2) ok = false;
        } else if (c1 >= 0) {
          color[static_cast<std::size_t>(f2)] = 1 - c1;
          changed = true;
        } else if (c2 >= 0) {
          color[static_cast<std::size_t>(f1)] = 1 - c2;
          changed = true;
        }
      }
    }
  }
  g.bipartite = ok;
  return g;
}

Scalar pow_int(const Scalar& x, int n) {
  Scalar r(1);
  for (int i = 0; i < n; ++i) r = r * x;
  return r;
}

Scalar binomial(int n, int k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Scalar(mpq_class(b));
}

NamedCheck check(const std::string& name, const Scalar& lhs, const Scalar& rhs, bool asserted = true) {
  return {name, asserted, lhs == rhs, lhs, rhs};
}

}  // namespace

int max_vertices() { return 3; }

std::vector<RibbonGraph> ribbon_graphs(int v) {
  if (v < 1 || v > max_vertices()) throw std::invalid_argument("vertex count must be between 1 and " + std::to_string(max_vertices()));
  std::vector<int> m(static_cast<std::size_t>(4 * v), -1);
  std::vector<std::vector<int>> ms;
  all_matchings(m, ms);
  std::vector<RibbonGraph> out;
  out.reserve(ms.size());
  for (auto& x : ms) out.push_back(analyze(v, std::move(x)));
  return out;
}

namespace {

template <class T>
T label_sum_t(const RibbonGraph& g, const std::vector<T>& e, const std::vector<T>& w) {
  std::size_t d = e.size();
  std::vector<std::pair<int, int>> edges;
  for (std::size_t h = 0; h < g.match.size(); ++h)
    if (static_cast<int>(h) < g.match[h]) edges.emplace_back(g.face_of[h], g.face_of[static_cast<std::size_t>(g.match[h])]);
  std::vector<std::size_t> lab(static_cast<std::size_t>(g.faces), 0);
  T total = Ring<T>::zero();
  while (true) {
    T t = Ring<T>::one();
    for (auto l : lab) t = t * w[l];
    for (auto [a, b] : edges) t = t / (e[lab[static_cast<std::size_t>(a)]] + e[lab[static_cast<std::size_t>(b)]]);
    total = total + t;
    std::size_t i = 0;
    while (i < lab.size() && ++lab[i] == d) lab[i++] = 0;
    if (i == lab.size()) break;
  }
  return total;
}

Scalar vertex_norm(int v) {
  Scalar norm = Scalar(v % 2 == 0 ? 1 : -1);
  for (int j = 1; j <= v; ++j) norm = norm / Scalar(4 * j);
  return norm;
}

}  // namespace

Scalar label_sum(const RibbonGraph& g, const SpectralInput& in) {
  std::vector<Scalar> w(in.d());
  for (std::size_t k = 0; k < in.d(); ++k) w[k] = Scalar(in.r[k]) / Scalar(in.N);
  return label_sum_t(g, in.e, w);
}

std::map<int, Scalar> creation_of_vacuum(int v, const SpectralInput& in, std::size_t b) {
  in.validate();
  if (b >= in.d()) throw std::invalid_argument("boundary index out of range");
  using D = Dual<Scalar>;
  std::vector<D> e, w;
  for (std::size_t k = 0; k < in.d(); ++k) {
    e.emplace_back(in.e[k], k == b ? Scalar(1) : Scalar(0));
    w.emplace_back(Scalar(in.r[k]) / Scalar(in.N));
  }
  Scalar pref = -Scalar(in.N) / Scalar(in.r[b]) * vertex_norm(v);
  std::map<int, Scalar> out;
  for (const auto& g : ribbon_graphs(v)) {
    if (!g.connected) continue;
    out[g.genus] += pref * label_sum_t(g, e, w).d;
  }
  return out;
}

VacuumResult enumerate_vacuum(int v, const SpectralInput& in) {
  in.validate();
  VacuumResult out;
  out.v = v;
  Scalar norm = vertex_norm(v);
  for (const auto& g : ribbon_graphs(v)) {
    ++out.matchings;
    if (!g.connected) {
      ++out.disconnected;
      continue;
    }
    GenusClass& c = out.by_genus[g.genus];
    Scalar w = norm * label_sum(g, in);
    ++c.count;
    c.weight += w;
    if (g.bipartite) {
      ++c.bipartite_count;
      c.bipartite_weight += w;
    }
  }
  return out;
}

CountKind parse_count_kind(const std::string& s) {
  if (s == "rooted-torus") return CountKind::rooted_torus;
  if (s == "f1-series") return CountKind::f1_series;
  if (s == "bipartite-rooted") return CountKind::bipartite_rooted;
  if (s == "bipartite-f1") return CountKind::bipartite_f1;
  throw std::invalid_argument("unknown count kind '" + s + "'");
}

std::string count_kind_name(CountKind k) {
  switch (k) {
    case CountKind::rooted_torus: return "rooted-torus";
    case CountKind::f1_series: return "f1-series";
    case CountKind::bipartite_rooted: return "bipartite-rooted";
    case CountKind::bipartite_f1: return "bipartite-f1";
  }
  return "";
}

Scalar quadrangulation_counts(CountKind kind, int n) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  switch (kind) {
    case CountKind::rooted_torus:
      return pow_int(Scalar(3), n) / Scalar(6) * (pow_int(Scalar(4), n) - binomial(2 * n, n));
    case CountKind::f1_series: {
      Scalar c = f1_closed_coefficient(n);
      return n % 2 == 1 ? -c : c;
    }
    case CountKind::bipartite_f1: return bipartite_closed_coefficient(n);
    case CountKind::bipartite_rooted: return Scalar(n + 1) * bipartite_closed_coefficient(n);
  }
  return Scalar(0);
}

// ---------------------------------------------------------------------------

bool AppendixAReport::ok() const {
  for (const auto& c : checks)
    if (c.asserted && !c.ok) return false;
  return true;
}

AppendixAReport appendixA_identities(const SpectralInput& in) {
  in.validate();
  std::size_t d = in.d();
  AppendixAReport R;
  R.d = d;
  const auto& e = in.e;
  std::vector<Scalar> r(d);
  for (std::size_t k = 0; k < d; ++k) r[k] = Scalar(in.r[k]);
  Scalar N2 = Scalar(in.N) * Scalar(in.N);
  auto sum2 = [&](const std::function<Scalar(std::size_t, std::size_t)>& f) {
    Scalar s(0);
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t l = 0; l < d; ++l) s += r[k] * r[l] * f(k, l);
    return s / N2;
  };
  auto diag2 = [&](const std::function<Scalar(std::size_t, std::size_t)>& f) {
    Scalar s(0);
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t n = 0; n < d; ++n) s += r[k] * r[k] * f(k, n);
    return s / N2;
  };
  auto sum3 = [&](const std::function<Scalar(std::size_t, std::size_t, std::size_t)>& f) {
    Scalar s(0);
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t l = 0; l < d; ++l)
        for (std::size_t n = 0; n < d; ++n) s += r[k] * r[l] * f(k, l, n);
    return s / N2;
  };
  auto p = [](const Scalar& x, int n) { return pow_int(x, n); };

  R.c01 = -sum2([&](auto k, auto l) { return Scalar(2) / (p(e[k] + e[l], 2) * p(e[l], 2)); }) / Scalar(48);
  R.c02 = -sum2([&](auto k, auto l) { return Scalar(1) / (p(e[k], 2) * p(e[l], 2)); }) / Scalar(48);
  R.c03 = -sum2([&](auto k, auto l) { return Scalar(4) / ((e[k] + e[l]) * p(e[l], 3)); }) / Scalar(48);
  R.cb1 = -sum2([&](auto k, auto l) { return Scalar(1) / p(e[k] + e[l], 4); }) / Scalar(4);
  auto cb2_term = [&](std::size_t k, std::size_t l, std::size_t n) { return Scalar(1) / (p(e[k] + e[l], 3) * (e[n] + e[l])); };
  auto cb3_term = [&](std::size_t k, std::size_t l, std::size_t n) { return Scalar(1) / (p(e[n] + e[l], 2) * p(e[n] + e[k], 2)); };
  R.cb2 = -sum3(cb2_term) / Scalar(3);
  R.cb3 = -sum3(cb3_term) / Scalar(8);
  Scalar cb2_kk = -diag2([&](auto k, auto n) { return cb2_term(k, k, n); }) / Scalar(3);
  Scalar cb3_kk = -diag2([&](auto k, auto n) { return cb3_term(k, k, n); }) / Scalar(8);

  R.g1 = -sum2([&](auto k, auto l) { return Scalar(1) / (Scalar(8) * p(e[k], 3) * (e[k] + e[l])); });
  R.g2 = -sum2([&](auto k, auto l) { return Scalar(1) / (Scalar(4) * e[k] * e[l] * p(e[k] + e[l], 2)); }) / Scalar(4);
  R.g3 = -sum2([&](auto k, auto l) { return Scalar(1) / (Scalar(4) * p(e[k], 2) * p(e[k] + e[l], 2)); }) / Scalar(2);
  R.g4 = -sum2([&](auto k, auto l) { return Scalar(1) / p(e[k] + e[l], 4); }) / Scalar(8);
  for (std::size_t k = 0; k < d; ++k) R.gamma_v1 += -(r[k] / Scalar(in.N)) / (Scalar(4) * p(Scalar(2) * e[k], 2));

  Scalar c0 = R.c01 + R.c02 + R.c03, cb = R.cb1 + R.cb2 + R.cb3;
  Scalar gsum = R.g1 + R.g2 + R.g3;

  // independent routes: series expansion of the logs and the ribbon-graph enumerator
  FreeEnergyResult fe = f1(in, 3);
  VacuumResult v1 = enumerate_vacuum(1, in), v2 = enumerate_vacuum(2, in);

  R.checks.push_back(check("c0 sum = ln R'(0)/24 at lambda^2", c0, fe.ln_r0.at(2) / Scalar(24)));
  R.checks.push_back(check("c_beta sum = ln prod R'(-beta)/24 at lambda^2", cb, fe.ln_prod.at(2) / Scalar(24), d == 1));
  R.checks.push_back(check("c01 + c02 rearranged",
                           R.c01 + R.c02,
                           -sum2([&](auto k, auto l) {
                             return Scalar(1) / (Scalar(12) * p(e[l], 2) * p(e[k] + e[l], 2)) +
                                    Scalar(1) / (Scalar(24) * p(e[k] + e[l], 3) * e[l]);
                           }),
                           false));
  R.checks.push_back(check("3/2 (c01 + c02 + c03) = Gamma1 + Gamma2 + Gamma3", Scalar(3, 2) * c0, gsum));
  R.checks.push_back(check("3/2 (c01 + c02) = Gamma2 + Gamma3", Scalar(3, 2) * (R.c01 + R.c02), R.g2 + R.g3));
  R.checks.push_back(check("c03 + c_beta2|k=l = Gamma1", R.c03 + cb2_kk, R.g1, d == 1));
  R.checks.push_back(check("c_beta3|k=l = Gamma4", cb3_kk, R.g4, d == 1));
  R.checks.push_back(check("Gamma (v=1) = ribbon weight (v=1, genus 1)", R.gamma_v1, v1.by_genus[1].weight));
  R.checks.push_back(check("Gamma1..4 = -ribbon weight (v=2, genus 1)", gsum + R.g4, -v2.by_genus[1].weight));
  R.checks.push_back(check("Gamma4 = -bipartite ribbon weight (v=2, genus 1)", R.g4, -v2.by_genus[1].bipartite_weight));
  if (d == 1) {
    R.checks.push_back(check("c0 sum at d=1, 2e=1 scale", c0 * p(Scalar(2) * e[0], 4), Scalar(-28, 24)));
    R.checks.push_back(check("c_beta sum at d=1, 2e=1 scale", cb * p(Scalar(2) * e[0], 4), Scalar(-17, 24)));
  }
  return R;
}

}  // namespace qkm
