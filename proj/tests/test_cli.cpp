#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(QKM_BIN) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string config(const std::string& name, const std::string& body) {
  std::string path = std::string(QKM_TMP) + "/" + name;
  std::ofstream(path) << body;
  return path;
}

std::string d2 = R"({"eigenvalues":[{"e":"1/2","r":1},{"e":"1/3","r":2}]})";

}  // namespace

TEST_CASE("free energy table") {
  Run r = run("free-energy --order 5");
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(r.out.find("\"-1/4\"") != std::string::npos);
  CHECK(r.out.find("\"-15633/10\"") != std::string::npos);
  CHECK(j.dump().find("consistency") != std::string::npos);
}

TEST_CASE("deterministic output") {
  CHECK(run("omega --g 1 --n 1 --convention full --order 4").out ==
        run("omega --g 1 --n 1 --convention full --order 4").out);
}

TEST_CASE("pure genus-two correlator") {
  Run r = run("omega --g 2 --n 1 --convention pure --order 7");
  REQUIRE(r.code == 0);
  for (const char* c : {"\"21\"", "\"-966\"", "\"27954\"", "\"-650076\""}) CHECK(r.out.find(c) != std::string::npos);
}

TEST_CASE("counts and enumeration") {
  Run c = run("counts --kind rooted-torus --n 3");
  REQUIRE(c.code == 0);
  CHECK(c.out.find("\"198\"") != std::string::npos);
  Run e = run("enumerate --v 2");
  REQUIRE(e.code == 0);
  CHECK(e.out.find("\"15/8\"") != std::string::npos);
  Run csv = run("counts --kind bipartite-rooted --n 3 --format csv");
  REQUIRE(csv.code == 0);
  CHECK(csv.out.find("307") != std::string::npos);
  CHECK(csv.out.find(',') != std::string::npos);
}

TEST_CASE("verify reports") {
  Run all = run("verify --order 4");
  CHECK(all.code == 0);
  Run empty = run("verify --config " + config("empty.json", R"({"checks":[]})"));
  CHECK(empty.code == 0);
  Run mut = run("verify --order 3 --config " +
                config("mut.json", R"({"checks":["identity:lem1"],"mutation":{"rho_shift":"1/10"}})"));
  CHECK(mut.code == 1);
  auto j = nlohmann::json::parse(mut.out);
  CHECK(j.dump().find("\"first_failing_order\":1") != std::string::npos);
}

TEST_CASE("d = 2 free energy is flagged") {
  Run r = run("free-energy --order 2 --config " + config("d2.json", d2));
  CHECK(r.code == 0);
  CHECK(r.out.find("partial") != std::string::npos);
}

TEST_CASE("exit codes for bad input") {
  CHECK(run("free-energy --config /nonexistent.json").code == 2);
  CHECK(run("free-energy --config " + config("bad.json", "{not json")).code == 2);
  CHECK(run("verify --config " + config("unk.json", R"({"checks":["nope"]})")).code == 2);
  CHECK(run("omega --g 3 --n 3 --convention pure").code == 2);
  CHECK(run("counts --kind spheres --n 2").code == 2);
  CHECK(run("").code != 0);
}
