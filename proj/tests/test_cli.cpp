#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "biham/cli.hpp"
#include "biham/report.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
  json report() const { return json::parse(out); }
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "biham");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = biham::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string spec(const char* name) { return std::string(BIHAM_SPEC_DIR) + "/" + name; }

fs::path scratch(const char* name) {
  fs::path d = fs::temp_directory_path() / "biham_cli_tests" / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string write_spec(const fs::path& dir, const std::string& body) {
  auto p = dir / "spec.json";
  std::ofstream(p) << body;
  return p.string();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("analyze-linear on the isotropic oscillator") {
  auto r = run_cli({"analyze-linear", "--spec", spec("oscillator.json")});
  REQUIRE(r.code == 0);
  auto j = r.report();
  CHECK(j["verdicts"]["hamiltonian"] == true);
  CHECK(j["passed"] == true);
  auto H = j["data"]["H"];
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) CHECK(H[i][k].get<double>() == (i == k ? 1.0 : 0.0));
}

TEST_CASE("failed checks exit with status 1 and still report") {
  auto r = run_cli({"analyze-linear", "--spec", spec("not_hamiltonian.json")});
  CHECK(r.code == 1);
  auto j = r.report();
  CHECK(j["passed"] == false);
  CHECK(j["verdicts"]["matches_expectation"] == false);
}

TEST_CASE("spec errors exit with status 2") {
  auto bad = run_cli({"analyze-linear", "--spec", spec("bad_omega.json")});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("skew") != std::string::npos);

  auto broken = run_cli({"moyal", "--spec", spec("broken.json")});
  CHECK(broken.code == 2);
  CHECK(broken.err.find("broken.json:4:") != std::string::npos);

  CHECK(run_cli({"nope", "--spec", spec("oscillator.json")}).code == 2);
  CHECK(run_cli({"analyze-linear", "--spec", "/nonexistent/spec.json"}).code == 2);
  CHECK(run_cli({"analyze-linear"}).code == 2);
  CHECK(run_cli({"moyal", "--spec", spec("oscillator.json")}).code == 2);  // command mismatch
}

TEST_CASE("emit selectors") {
  auto d = scratch("emit");
  auto bad = run_cli({"analyze-linear", "--spec", spec("oscillator.json"), "--emit", "bogus"});
  CHECK(bad.code == 2);
  CHECK(run_cli({"moyal", "--spec", spec("moyal_qp.json"), "--emit", "spectrum"}).code == 2);

  auto s = run_cli({"analyze-linear", "--spec", spec("oscillator.json"), "--out", d.string(), "--emit", "spectrum"});
  REQUIRE(s.code == 0);
  std::ifstream in(d / "spectrum.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header == "re,im");
  int rows = 0;
  for (std::string l; std::getline(in, l);) ++rows;
  CHECK(rows == 4);
  CHECK(fs::exists(d / "report.json"));

  auto inv = run_cli({"analyze-linear", "--spec", spec("oscillator.json"), "--out", d.string(), "--emit",
                      "involution-residuals"});
  REQUIRE(inv.code == 0);
  std::ifstream in2(d / "involution_residuals.csv");
  std::getline(in2, header);
  CHECK(header == "k,l,residual");
  rows = 0;
  for (std::string l; std::getline(in2, l);) ++rows;
  CHECK(rows == 6);  // pairs of 0..3
}

TEST_CASE("wigner command reproduces the Gibbs center value") {
  auto d = scratch("wigner");
  auto r = run_cli({"wigner", "--spec", spec("wigner_beta2.json"), "--out", d.string(), "--format", "csv"});
  REQUIRE(r.code == 0);
  auto j = r.report();
  CHECK(std::abs(j["verdicts"]["center_value"].get<double>() - 1.0 / std::cosh(1.0)) < 1e-6);
  std::ifstream in(d / "wigner.csv");
  std::string line;
  std::getline(in, line);
  bool found = false;
  while (std::getline(in, line)) {
    double q, p, re, im;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &q, &p, &re, &im) != 4) continue;
    if (q == 0.0 && p == 0.0) {
      found = true;
      CHECK(std::abs(re - 1.0 / std::cosh(1.0)) < 1e-6);
    }
  }
  CHECK(found);
}

TEST_CASE("moyal, kms, recursion and gqm commands") {
  auto m = run_cli({"moyal", "--spec", spec("moyal_qp.json")});
  REQUIRE(m.code == 0);
  CHECK(m.report()["data"]["bracket_str"] == "(1)");

  auto k = run_cli({"kms", "--spec", spec("kms_quartic.json")});
  CHECK(k.code == 0);

  auto rec = run_cli({"recursion", "--spec", spec("recursion_hw.json"), "--emit", "spectrum"});
  CHECK(rec.code == 2);
  rec = run_cli({"recursion", "--spec", spec("recursion_hw.json")});
  CHECK(rec.code == 0);

  auto g = run_cli({"gqm", "--spec", spec("gqm_all.json")});
  CHECK(g.code == 0);
  CHECK(g.report()["verdicts"]["gns_rank"] == 2);
}

TEST_CASE("reports are deterministic for a given seed") {
  auto a = run_cli({"gqm", "--spec", spec("gqm_all.json")});
  auto b = run_cli({"gqm", "--spec", spec("gqm_all.json")});
  CHECK(a.out == b.out);
  auto c = run_cli({"gqm", "--spec", spec("gqm_all.json"), "--seed", "3"});
  CHECK(c.out == a.out);
  auto d = run_cli({"gqm", "--spec", spec("gqm_all.json"), "--seed", "4"});
  CHECK(d.report()["config"]["seed"] == 4);
}

TEST_CASE("tolerances can be tightened from the input file") {
  auto d = scratch("tol");
  auto p = write_spec(d, R"({"command": "wigner", "N": 64, "beta": 1.0, "tolerances": {"wigner": 1e-30}})");
  auto r = run_cli({"wigner", "--spec", p});
  CHECK(r.code == 1);
}

TEST_CASE("momentum sign option") {
  auto w = run_cli({"wigner", "--spec", spec("wigner_beta2.json"), "--momentum-sign", "standard"});
  CHECK(w.code == 0);
  CHECK(run_cli({"wigner", "--spec", spec("wigner_beta2.json"), "--momentum-sign", "sideways"}).code == 2);
}

TEST_CASE("dump_json formatting") {
  json j = {{"a", 0.1}, {"b", -0.0}, {"c", std::nan("")}, {"d", {1.0, 2.5}}};
  auto s = biham::dump_json(j);
  CHECK(s.find("0.10000000000000001") != std::string::npos);
  CHECK(s.find("-0") == std::string::npos);
  CHECK(s.find("null") != std::string::npos);
}

}  // TEST_SUITE
