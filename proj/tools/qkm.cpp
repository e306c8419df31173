#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "qkm/enumeration.hpp"
#include "qkm/freenergy.hpp"
#include "qkm/insertion.hpp"
#include "qkm/trengine.hpp"
#include "qkm/verify.hpp"

using namespace qkm;
using nlohmann::json;

namespace {

constexpr const char* kLambdaConvention = "lambda^n (vertex weight -lambda)";
constexpr const char* kMagnitude = "magnitude";

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Table {
  std::string quantity;
  Series s;
  std::string convention = kLambdaConvention;
  std::vector<std::string> notes;
};

json table_json(const Table& t) {
  json j;
  j["quantity"] = t.quantity;
  j["variable"] = var_name(t.s.var());
  j["sign_convention"] = t.convention;
  j["precision"] = t.s.exact() ? t.s.end() : t.s.prec();
  json rows = json::array();
  int stop = t.s.exact() ? t.s.end() : t.s.prec();
  for (int k = t.s.lo(); k < stop; ++k) rows.push_back({{"power", k}, {"coefficient", t.s.at(k).str()}});
  j["coefficients"] = rows;
  j["notes"] = t.notes;
  return j;
}

struct Output {
  json doc;
  std::vector<Table> tables;
  std::vector<std::vector<std::string>> csv_rows;  // header first, used when there are no tables
};

void emit(const Output& out, const std::string& format) {
  if (format == "json") {
    json d = out.doc;
    json ts = json::array();
    for (const auto& t : out.tables) ts.push_back(table_json(t));
    if (!out.tables.empty()) d["tables"] = ts;
    std::cout << d.dump(2) << "\n";
  } else if (format == "csv") {
    if (!out.tables.empty()) {
      std::cout << "quantity,power,coefficient,sign_convention\n";
      for (const auto& t : out.tables) {
        int stop = t.s.exact() ? t.s.end() : t.s.prec();
        for (int k = t.s.lo(); k < stop; ++k) std::cout << t.quantity << "," << k << "," << t.s.at(k).str() << "," << t.convention << "\n";
      }
    }
    for (const auto& row : out.csv_rows) {
      for (std::size_t i = 0; i < row.size(); ++i) std::cout << (i ? "," : "") << row[i];
      std::cout << "\n";
    }
  } else {
    for (const auto& t : out.tables) {
      std::cout << t.quantity << " = " << to_string(t.s) << "\n";
      for (const auto& n : t.notes) std::cout << "  note: " << n << "\n";
    }
    for (auto it = out.doc.begin(); it != out.doc.end(); ++it) {
      if (it.key() == "config") continue;
      std::cout << it.key() << ": " << it.value().dump() << "\n";
    }
  }
}

json read_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  try {
    json j = json::parse(f);
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    return j;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
}

SpectralInput spectral_from(const json& cfg, int order) {
  try {
    SpectralInput in = cfg.contains("eigenvalues") ? SpectralInput::from_json(cfg)
                                                   : SpectralInput::single(Scalar(1, 2), cfg.value("order", 6));
    if (order > 0) in.order = order;
    in.validate();
    return in;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("invalid spectral input: ") + e.what());
  }
}

Scalar parse_scalar_arg(const std::string& s, const std::string& what) {
  try {
    return Scalar::parse(s);
  } catch (const std::exception&) {
    throw ConfigError("cannot parse " + what + " '" + s + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact series engine for the quartic Kontsevich model"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path, format = "json", seed = "none";
  int order = 0;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--order", order, "highest power of lambda kept")->check(CLI::PositiveNumber);
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv", "pretty"}));
  app.add_option("--seed", seed, "no randomness is used")->check(CLI::IsMember({"none"}));

  auto* deform = app.add_subcommand("deform", "deformed eigenvalues and weights");

  auto* omega = app.add_subcommand("omega", "correlators Omega_{g,n}");
  int g = 1, n = 1, b = 1;
  std::string convention = "full", at;
  omega->add_option("--g", g, "genus")->check(CLI::NonNegativeNumber);
  omega->add_option("--n", n, "number of boundaries")->check(CLI::PositiveNumber);
  omega->add_option("--convention", convention)->check(CLI::IsMember({"pure", "full", "blob"}));
  omega->add_option("--b", b, "1-based eigenvalue index of the evaluation point eps_b")->check(CLI::PositiveNumber);
  omega->add_option("--at", at, "rational evaluation point instead of eps_b (g=1, n=1)");

  auto* fe = app.add_subcommand("free-energy", "genus-one free energy");
  bool with_tau = false, bipartite = false;
  fe->add_flag("--with-tau", with_tau);
  fe->add_flag("--bipartite", bipartite);

  auto* en = app.add_subcommand("enumerate", "ribbon-graph expansion of the vacuum");
  int v = 1;
  bool appendix = false;
  en->add_option("--v", v, "number of vertices")->required()->check(CLI::Range(1, max_vertices()));
  en->add_flag("--appendix-a", appendix, "include the lambda^2 graph identities");

  auto* counts = app.add_subcommand("counts", "closed-form quadrangulation counts");
  std::string kind;
  int cn = 1;
  counts->add_option("--kind", kind)->required()->check(
      CLI::IsMember({"rooted-torus", "f1-series", "bipartite-rooted", "bipartite-f1"}));
  counts->add_option("--n", cn)->required()->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "run the identity and acceptance checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Output out;
  std::function<int()> run;
  try {
    json cfg = read_config(config_path);
    SpectralInput in = spectral_from(cfg, order);
    out.doc["config"] = in.to_json();
    int O = in.order + 1;  // --order is the highest power kept

    if (*deform) {
      run = [&, in, O]() {
        Deformation def = solve_deformation(in, O);
        for (std::size_t k = 0; k < in.d(); ++k) {
          std::string idx = std::to_string(k + 1);
          out.tables.push_back({"eps_" + idx, def.eps[k].truncated(O)});
          out.tables.push_back({"rhohat_" + idx, def.rho[k].truncated(O)});
          out.tables.push_back({"varrho_" + idx, (def.rho[k] * Scalar(in.N)).truncated(O)});
        }
        return 0;
      };
    } else if (*omega) {
      if (static_cast<std::size_t>(b) > in.d()) throw ConfigError("--b exceeds the number of eigenvalues");
      std::size_t bi = static_cast<std::size_t>(b - 1);
      bool at_point = !at.empty();
      PointSpec ps = at_point ? PointSpec::value(parse_scalar_arg(at, "--at")) : PointSpec::eps(bi);
      auto pair = std::make_pair(g, n);
      bool ok = false;
      if (pair == std::make_pair(1, 1)) ok = true;
      if (pair == std::make_pair(0, 2)) ok = convention == "full";
      if (pair == std::make_pair(0, 3)) ok = convention != "blob";
      if (pair == std::make_pair(1, 2) || pair == std::make_pair(2, 1)) ok = convention == "pure";
      if (!ok) throw ConfigError("unsupported combination g=" + std::to_string(g) + ", n=" + std::to_string(n) + ", convention " + convention);
      if (convention == "pure" && pair != std::make_pair(1, 1) && in.d() != 1) throw ConfigError("the pure recursion is available at d = 1 only");
      if (at_point && pair != std::make_pair(1, 1)) throw ConfigError("--at is supported for g=1, n=1 only");
      run = [&, in, O, ps, bi, pair, at_point]() {
        Table t;
        t.quantity = "Omega_{" + std::to_string(g) + "," + std::to_string(n) + "}";
        t.notes.push_back("convention " + convention);
        t.notes.push_back(at_point ? "at z = " + at : "at eps_" + std::to_string(bi + 1) + " in every slot");
        if (pair == std::make_pair(1, 1)) {
          if (convention == "blob") t.s = omega11_blob(in, O, ps);
          else if (convention == "full") t.s = omega11_closed(in, O, ps);
          else if (in.d() == 1 && !at_point) t.s = tr_omega(in, 1, 1, Convention::pure, O).value;
          else t.s = omega11_closed(in, O, ps, Om11Part::pure);
        } else if (pair == std::make_pair(0, 2)) {
          t.s = omega02_diagonal(in, O, bi);
          t.notes.push_back("regularized diagonal");
        } else if (pair == std::make_pair(0, 3) && convention == "full") {
          t.s = omega03_diagonal(in, O, bi);
        } else {
          t.s = tr_omega(in, g, n, Convention::pure, O).value;
        }
        out.tables.push_back(t);
        return 0;
      };
    } else if (*fe) {
      if ((with_tau || bipartite) && in.d() != 1) throw ConfigError("--with-tau and --bipartite need d = 1");
      run = [&, in, O]() {
        int status = 0;
        FreeEnergyResult r = f1(in, O);
        Table t{"F1", r.f1};
        if (r.r_neq_truncated) t.notes.push_back("partial: only the O(lambda) compensation term is included");
        out.tables.push_back(t);
        out.tables.push_back({"ln R'(0)", r.ln_r0});
        out.tables.push_back({"ln prod R'(-beta_i)", r.ln_prod});
        Table rn{"R_neq", r.r_neq};
        if (r.r_neq_truncated) rn.notes.push_back("O(lambda) term only");
        out.tables.push_back(rn);
        json checks = json::object();
        if (in.d() == 1) {
          bool same = agree(ln_prod_h(in, O), r.ln_prod);
          checks["ln prod via branch points"] = same ? "pass" : "fail";
          if (!same) status = 1;
        }
        if (with_tau) {
          TauResult tr = tau_d1(in, O);
          json tj;
          tj["gap_matches_gamma"] = tr.gap_matches;
          tj["symbolic_terms"] = tr.tags;
          tj["ode_literal"] = {{"status", tr.literal_ode.ok ? "pass" : "fail"}, {"first_failing_order", tr.literal_ode.first_failing_order}};
          tj["ode_quarter_power"] = {{"status", tr.quarter_ode.ok ? "pass" : "fail"}, {"first_failing_order", tr.quarter_ode.first_failing_order}};
          out.doc["tau"] = tj;
          out.tables.push_back({"ln tau (analytic part)", tr.ln_tau_series});
          checks["tau gap"] = tr.gap_matches ? "pass" : "fail";
          checks["tau ode, quarter power"] = tr.quarter_ode.ok ? "pass" : "fail";
          if (!tr.gap_matches || !tr.quarter_ode.ok) status = 1;
        }
        if (bipartite) {
          BipartiteTables bt = bipartite_f1(in, O);
          out.tables.push_back({"bipartite direct", bt.direct, kLambdaConvention, {"-1/2 ln tau + F1"}});
          out.tables.push_back({"bipartite closed", bt.closed, kMagnitude, {"double sum, weight (2e)^-(2n+2)"}});
          out.tables.push_back({"bipartite difference", bt.difference, "mixed", {"reported, not asserted"}});
        }
        out.doc["consistency"] = checks;
        return status;
      };
    } else if (*en) {
      run = [&, in]() {
        VacuumResult r = enumerate_vacuum(v, in);
        json j;
        j["v"] = r.v;
        j["matchings"] = r.matchings;
        j["disconnected"] = r.disconnected;
        j["sign_convention"] = kLambdaConvention;
        json gj = json::object();
        for (const auto& [genus, c] : r.by_genus)
          gj[std::to_string(genus)] = {{"count", c.count}, {"weight", c.weight.str()},
                                       {"bipartite_count", c.bipartite_count}, {"bipartite_weight", c.bipartite_weight.str()}};
        j["genus"] = gj;
        out.doc["enumeration"] = j;
        out.csv_rows.push_back({"genus", "count", "weight", "bipartite_count", "bipartite_weight"});
        for (const auto& [genus, c] : r.by_genus)
          out.csv_rows.push_back({std::to_string(genus), std::to_string(c.count), c.weight.str(), std::to_string(c.bipartite_count),
                                  c.bipartite_weight.str()});
        int status = 0;
        if (appendix) {
          AppendixAReport A = appendixA_identities(in);
          json aj = json::array();
          for (const auto& c : A.checks)
            aj.push_back({{"identity", c.name}, {"asserted", c.asserted}, {"status", c.ok ? "pass" : "fail"},
                          {"lhs", c.lhs.str()}, {"rhs", c.rhs.str()}});
          out.doc["appendix_a"] = aj;
          if (!A.ok()) status = 1;
        }
        return status;
      };
    } else if (*counts) {
      CountKind k = parse_count_kind(kind);
      run = [&, k]() {
        Scalar val = quadrangulation_counts(k, cn);
        out.doc["counts"] = {{"kind", count_kind_name(k)}, {"n", cn}, {"value", val.str()}, {"sign_convention", kMagnitude}};
        out.csv_rows = {{"kind", "n", "value"}, {count_kind_name(k), std::to_string(cn), val.str()}};
        return 0;
      };
    } else if (*verify) {
      std::vector<std::string> names = verify_check_names();
      if (cfg.contains("checks")) {
        if (!cfg.at("checks").is_array()) throw ConfigError("'checks' must be a list");
        names.clear();
        for (const auto& c : cfg.at("checks")) names.push_back(c.get<std::string>());
        const std::vector<std::string> known = verify_check_names();
        for (const auto& nm : names)
          if (std::find(known.begin(), known.end(), nm) == known.end())
            throw ConfigError("unknown check '" + nm + "'");
      }
      VerifyOptions vo;
      vo.order = O;
      if (cfg.contains("mutation")) vo.rho_shift = parse_scalar_arg(cfg.at("mutation").value("rho_shift", "0"), "mutation.rho_shift");
      run = [&, in, names, vo]() {
        std::vector<CheckResult> res = run_checks(names, in, vo);
        json rep = json::array();
        bool all = true;
        out.csv_rows.push_back({"check", "status", "first_failing_order"});
        for (const auto& r : res) {
          rep.push_back({{"check", r.check}, {"status", r.status}, {"first_failing_order", r.first_failing_order}, {"detail", r.detail}});
          out.csv_rows.push_back({r.check, r.status, std::to_string(r.first_failing_order)});
          if (r.status == "fail") all = false;
        }
        out.doc["report"] = rep;
        out.doc["all_pass"] = all;
        return all ? 0 : 1;
      };
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  int status = 0;
  try {
    status = run();
  } catch (const std::exception& e) {
    std::cerr << "computation error: " << e.what() << "\n";
    return 1;
  }
  emit(out, format);
  return status;
}
