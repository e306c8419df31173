#include "qkm/spectral.hpp"

#include <cstdlib>
#include <stdexcept>

namespace qkm {

int max_order() {
  const char* env = std::getenv("QKM_MAX_ORDER");
  if (!env || !*env) return 40;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1) throw std::invalid_argument("QKM_MAX_ORDER must be a positive integer");
  return static_cast<int>(v);
}

void SpectralInput::validate() const {
  if (e.empty()) throw std::invalid_argument("spectral input needs at least one eigenvalue");
  if (e.size() != r.size()) throw std::invalid_argument("eigenvalue and multiplicity lists differ in length");
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (!e[k].is_real() || sgn(e[k].re()) <= 0) throw std::invalid_argument("eigenvalues must be positive rationals");
    if (r[k] < 1) throw std::invalid_argument("multiplicities must be positive");
    for (std::size_t l = 0; l < k; ++l)
      if (e[k] == e[l]) throw std::invalid_argument("eigenvalues must be pairwise distinct");
  }
  if (N < 1) throw std::invalid_argument("N must be positive");
  if (order < 1) throw std::invalid_argument("order must be at least 1");
  if (order > max_order()) throw std::invalid_argument("order exceeds QKM_MAX_ORDER");
}

SpectralInput SpectralInput::single(const Scalar& e0, int order) {
  SpectralInput in;
  in.e = {e0};
  in.r = {1};
  in.N = 1;
  in.order = order;
  return in;
}

SpectralInput SpectralInput::from_json(const nlohmann::json& j) {
  SpectralInput in;
  if (!j.contains("eigenvalues")) throw std::invalid_argument("config lacks 'eigenvalues'");
  long total = 0;
  for (const auto& ev : j.at("eigenvalues")) {
    const auto& ej = ev.at("e");
    in.e.push_back(ej.is_string() ? Scalar::parse(ej.get<std::string>()) : Scalar(ej.get<long>()));
    in.r.push_back(ev.value("r", 1L));
    total += in.r.back();
  }
  if (j.contains("d") && j.at("d").get<std::size_t>() != in.e.size())
    throw std::invalid_argument("'d' does not match the number of eigenvalues");
  in.N = j.value("N", total);
  in.order = j.value("order", 6);
  in.validate();
  return in;
}

nlohmann::json SpectralInput::to_json() const {
  nlohmann::json j;
  j["d"] = e.size();
  j["N"] = N;
  j["order"] = order;
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t k = 0; k < e.size(); ++k) arr.push_back({{"e", e[k].str()}, {"r", r[k]}});
  j["eigenvalues"] = arr;
  return j;
}

Deformation solve_deformation(const SpectralInput& in, int order) { return solve_deformation_t<Series>(in, order, -1); }

DualDeformation solve_deformation_dual(const SpectralInput& in, int order, std::size_t b) {
  if (b >= in.d()) throw std::invalid_argument("boundary index out of range");
  return solve_deformation_t<DualSeries>(in, order, static_cast<int>(b));
}

Deformation derivative_part(const DualDeformation& dd) {
  Deformation out;
  out.in = dd.in;
  out.order = dd.order;
  for (const auto& x : dd.eps) out.eps.push_back(x.d);
  for (const auto& x : dd.rho) out.rho.push_back(x.d);
  return out;
}

BranchData branch_data(const Deformation& def) {
  if (def.eps.size() != 1) throw std::invalid_argument("branch data in h is available only for d = 1");
  BranchData br;
  br.eps_h = to_h(def.eps[0]);
  br.rho_h = to_h(def.rho[0]);
  br.lam_h = to_h(lam(def.order));
  br.gamma = to_h(sqrt(def.rho[0])) * Series::monomial(Scalar::i(), 1, Var::h);
  br.beta_plus = -br.eps_h + br.gamma;
  br.beta_minus = -br.eps_h - br.gamma;
  Series two = cst(2, Var::h);
  br.b_plus = -br.eps_h + two * br.gamma;
  br.b_minus = -br.eps_h - two * br.gamma;
  return br;
}

RamificationData ramification(const Deformation& def) {
  RamificationData rd;
  rd.P = ramification_poly(def);
  if (def.eps.size() == 1) {
    rd.has_branch = true;
    rd.branch = branch_data(def);
  }
  return rd;
}

Series Zhukovsky::t_of(const Series& z) const { return (br.eps_h + z) / br.gamma; }
Series Zhukovsky::z_of(const Series& t) const { return -br.eps_h + br.gamma * t; }
Series Zhukovsky::x_of_t(const Series& t) const { return -br.eps_h + br.gamma * (t + t.inv()); }

Zhukovsky zhukovsky(const Deformation& def) { return Zhukovsky{branch_data(def)}; }

Series HRootHelper::plus(const Series& x) const {
  Series acc = Series::zero(Var::h);
  for (const auto& b : *betas) acc = acc + (x + b).pow(-2);
  return acc;
}

Series HRootHelper::others() const {
  Series acc = Series::zero(Var::h);
  const auto& bs = *betas;
  for (std::size_t j = 0; j < bs.size(); ++j)
    if (j != index) acc = acc + (bs[index] - bs[j]).pow(-2);
  return acc;
}

HBackend::HBackend(const Deformation& d) : def(d), br(branch_data(d)) {
  curve.one = cst(1, Var::h);
  curve.lam = br.lam_h;
  curve.eps = {br.eps_h};
  curve.rho = {br.rho_h};
  betas = {br.beta_plus, br.beta_minus};
}

Series HBackend::lam_of(const Series& hs) {
  if (!is_real(hs)) throw std::domain_error("h-series assembled from conjugate roots has an imaginary part");
  return from_h(hs);
}

Series adaptive(int target, const std::function<Series(int)>& compute, int cap) {
  int step = std::max(2, target / 2);
  for (int W = target + 1; W <= cap; W += step) {
    Series s;
    try {
      s = compute(W);
    } catch (const VanishingError&) {
      continue;
    }
    if (s.prec() >= target) return s.truncated(target);
  }
  throw PrecisionError("working order cap reached before the requested precision");
}

}  // namespace qkm
